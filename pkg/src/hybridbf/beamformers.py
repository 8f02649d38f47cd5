"""
Per-tile analog (RF) weight synthesis.

Every tile applies one complex weight vector of length ``N_a``.  Narrow
beams are matched to the carrier; broad beams use a quadratic phase taper
so the instantaneous spatial frequency sweeps a target interval across the
tile aperture.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .core import ArrayLayout, _check_angle, steering_vector

# half-power beamwidth of a uniform aperture: 0.886 * 2*pi / N_a
HPBW_FACTOR = 0.886

POWER_ITER_TOL = 1e-12
POWER_ITER_MAX = 10_000


@dataclass(frozen=True)
class SpatialInterval:
    """Closed interval ``[center - width/2, center + width/2]`` of spatial frequencies."""

    center: float
    width: float

    def __post_init__(self):
        if self.width < 0:
            raise ValueError(f"interval width must be nonnegative, got {self.width}")

    @property
    def lower(self) -> float:
        return self.center - self.width / 2

    @property
    def upper(self) -> float:
        return self.center + self.width / 2

    @classmethod
    def from_bounds(cls, lower: float, upper: float) -> "SpatialInterval":
        return cls((lower + upper) / 2, upper - lower)

    def split(self, n: int) -> List["SpatialInterval"]:
        """``n`` equal contiguous pieces, ordered from the lower edge."""
        step = self.width / n
        return [SpatialInterval(self.lower + (m + 0.5) * step, step) for m in range(n)]

    def contains(self, other: "SpatialInterval", tol: float = 1e-12) -> bool:
        return self.lower <= other.lower + tol and other.upper <= self.upper + tol

    def samples(self, n: int = 10_000) -> np.ndarray:
        return np.linspace(self.lower, self.upper, n)


@dataclass
class RfWeightPlan:
    """One analog weight vector per tile; ``tile_weights`` has shape ``(N_d, N_a)``."""

    tile_weights: np.ndarray
    phase_only: bool

    def __post_init__(self):
        self.tile_weights = np.atleast_2d(np.asarray(self.tile_weights, dtype=complex))
        norms = np.linalg.norm(self.tile_weights, axis=1)
        if np.any(norms < 1e-12):
            bad = np.flatnonzero(norms < 1e-12) + 1
            raise ValueError(f"weight vector of tile(s) {bad.tolist()} is numerically zero")
        if self.phase_only and not np.allclose(np.abs(self.tile_weights), 1.0, rtol=0, atol=1e-9):
            raise ValueError("phase-only plan has entries that are not unit modulus")

    @property
    def n_tiles(self) -> int:
        return self.tile_weights.shape[0]

    @property
    def n_per_tile(self) -> int:
        return self.tile_weights.shape[1]

    @property
    def normalized(self) -> np.ndarray:
        """Unit-norm rows ``w_m / ||w_m||``."""
        return self.tile_weights / np.linalg.norm(self.tile_weights, axis=1, keepdims=True)


def squint_interval(theta: float, beta: float) -> SpatialInterval:
    """Spatial frequencies swept by a user at ``theta`` degrees over fractional bandwidth ``beta``."""
    _check_angle(theta)
    if not 0 <= beta < 2:
        raise ValueError(f"fractional bandwidth must satisfy 0 <= beta < 2, got {beta}")
    center = math.pi * math.sin(math.radians(theta))
    return SpatialInterval(center, abs(center) * beta)


def narrowband_weights(n_per_tile: int, omega_c: float) -> np.ndarray:
    return steering_vector(n_per_tile, omega_c)


def quadratic_broadbeam_weights(n_elems: int, interval: SpatialInterval) -> np.ndarray:
    """Phase-only broad beam covering ``interval``.

    Element ``i`` (1-based) gets phase ``c*n + (w / (2 n_elems)) * n**2`` with
    ``n = i - (n_elems/2 + 1)``, ``c`` the interval center and ``w`` its width.
    The local phase slope then runs from ``c - w/2`` to ``c + w/2`` across the
    aperture.
    """
    if n_elems < 2 or n_elems % 2:
        raise ValueError(f"quadratic taper needs an even element count, got {n_elems}")
    n = np.arange(1, n_elems + 1) - (n_elems // 2 + 1)
    phase = interval.center * n + interval.width / (2 * n_elems) * n ** 2
    return np.exp(1j * phase)


def narrowband_plan(layout: ArrayLayout, omega_c: float) -> RfWeightPlan:
    w = narrowband_weights(layout.n_per_tile, omega_c)
    return RfWeightPlan(np.tile(w, (layout.n_tiles, 1)), phase_only=True)


def single_broadbeam_plan(layout: ArrayLayout, interval: SpatialInterval) -> RfWeightPlan:
    w = quadratic_broadbeam_weights(layout.n_per_tile, interval)
    return RfWeightPlan(np.tile(w, (layout.n_tiles, 1)), phase_only=True)


def partitioned_broadbeam_plan(layout: ArrayLayout, interval: SpatialInterval) -> RfWeightPlan:
    pieces = interval.split(layout.n_tiles)
    weights = [quadratic_broadbeam_weights(layout.n_per_tile, p) for p in pieces]
    return RfWeightPlan(np.array(weights), phase_only=True)


def half_power_beamwidth(n_per_tile: int) -> float:
    return HPBW_FACTOR * 2 * math.pi / n_per_tile


def narrow_beam_count(n_per_tile: int, width: float, anchor: str = "edges") -> int:
    """Number of narrow beams needed to span ``width``.

    ``"edges"``: beams pinned to both interval edges with neighbours at most
    one half-power beamwidth apart.  ``"centered"``: one beam per
    half-power beamwidth of interval, placed at sub-interval midpoints.
    """
    hpbw = half_power_beamwidth(n_per_tile)
    if anchor == "edges":
        return 1 if width == 0 else math.ceil(width / hpbw) + 1
    if anchor == "centered":
        return max(1, math.ceil(width / hpbw))
    raise ValueError(f"unknown beam anchor {anchor!r}")


def narrow_beam_centers(interval: SpatialInterval, n_beams: int, anchor: str = "edges") -> np.ndarray:
    if anchor == "edges" and n_beams > 1:
        return np.linspace(interval.lower, interval.upper, n_beams)
    return interval.center + interval.width * ((np.arange(n_beams) + 0.5) / n_beams - 0.5)


def partitioned_narrowbeam_plan(layout: ArrayLayout, interval: SpatialInterval,
                                anchor: str = "edges") -> RfWeightPlan:
    """Cover ``interval`` with carrier-matched narrow beams dealt out to tiles.

    With ``n_b <= N_d`` beams, tile ``m`` takes beam ``(m-1) mod n_b``.  With
    more beams than tiles, beam ``b`` goes to tile ``b mod N_d`` and beams
    sharing a tile are summed, which needs amplitude control.  See
    :func:`narrow_beam_count` for the two beam placements.
    """
    n_a, n_d = layout.n_per_tile, layout.n_tiles
    n_beams = narrow_beam_count(n_a, interval.width, anchor)
    beams = steering_vector(n_a, narrow_beam_centers(interval, n_beams, anchor))
    if n_beams <= n_d:
        weights = beams[np.arange(n_d) % n_beams]
        return RfWeightPlan(weights, phase_only=True)
    weights = np.zeros((n_d, n_a), dtype=complex)
    for b in range(n_beams):
        weights[b % n_d] += beams[b]
    return RfWeightPlan(weights, phase_only=False)


def dominant_eigenvector(cov: np.ndarray, tol: float = POWER_ITER_TOL,
                         max_iter: int = POWER_ITER_MAX):
    """Power iteration on a Hermitian PSD matrix from the all-ones seed.

    Stops once ``||C x - lam x|| <= tol * lam``.  Returns ``(lam, x)`` with
    ``x`` unit norm.
    """
    cov = np.asarray(cov, dtype=complex)
    x = np.ones(cov.shape[0], dtype=complex) / math.sqrt(cov.shape[0])
    lam = 0.0
    for _ in range(max_iter):
        y = cov @ x
        y_norm = np.linalg.norm(y)
        if y_norm == 0:
            # seed lies in the null space
            raise ValueError("power iteration collapsed to zero; seed orthogonal to the range")
        x = y / y_norm
        lam = float(np.real(np.vdot(x, cov @ x)))
        if np.linalg.norm(cov @ x - lam * x) <= tol * lam:
            break
    return lam, x


def dominant_mode_weights(channels: Sequence[np.ndarray]) -> np.ndarray:
    """Phase-only weights from the top eigenvector of ``mean_f h(f) h(f)^H``.

    ``channels`` holds one tile channel per frequency.  Each eigenvector
    entry is reduced to its phase; entries below ``1e-12`` in magnitude map
    to 1.  The global phase is fixed so the first nonzero entry is real
    positive.
    """
    h = np.asarray(channels, dtype=complex)
    if h.ndim == 1:
        h = h[None, :]
    if h.shape[0] == 0:
        raise ValueError("need at least one channel vector")
    cov = h.T @ h.conj() / h.shape[0]
    if np.max(np.abs(cov)) < 1e-300:
        raise ValueError("frequency-averaged covariance is numerically zero")
    _, v = dominant_eigenvector(cov)
    mag = np.abs(v)
    big = mag >= 1e-12
    first = np.argmax(big)
    v = v * np.conj(v[first]) / mag[first]
    out = np.ones_like(v)
    out[big] = v[big] / mag[big]
    return out


def dominant_mode_plan(tile_channels: np.ndarray) -> RfWeightPlan:
    """``tile_channels`` has shape ``(n_subcarriers, N_d, N_a)`` for the served user."""
    weights = [dominant_mode_weights(tile_channels[:, m, :]) for m in range(tile_channels.shape[1])]
    return RfWeightPlan(np.array(weights), phase_only=True)


def beam_gain_pattern(weights: np.ndarray, omegas) -> np.ndarray:
    """``|w^H a(omega)| / ||w||`` on each spatial frequency; peaks at ``sqrt(N_a)``."""
    w = np.asarray(weights, dtype=complex)
    norm = np.linalg.norm(w)
    if norm < 1e-12:
        raise ValueError("zero weight vector has no beam pattern")
    a = steering_vector(w.size, np.atleast_1d(omegas))
    return np.abs(a @ w.conj()) / norm
