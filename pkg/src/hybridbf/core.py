"""
Array geometry, spatial frequencies, steering vectors and the LoS channel.

A half-wavelength ULA of ``N = N_a * N_d`` elements is split into ``N_d``
contiguous tiles of ``N_a`` elements.  User ``k`` arrives from angle
``theta_k`` and its spatial frequency scales linearly with frequency, which
is the origin of beam squint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

DEFAULT_SUBCARRIERS = 256


@dataclass(frozen=True)
class ArrayLayout:
    """Tiled ULA: ``n_total = n_per_tile * n_tiles``."""

    n_per_tile: int
    n_tiles: int

    def __post_init__(self):
        if int(self.n_per_tile) != self.n_per_tile or self.n_per_tile < 1:
            raise ValueError(f"n_per_tile must be a positive integer, got {self.n_per_tile!r}")
        if int(self.n_tiles) != self.n_tiles or self.n_tiles < 1:
            raise ValueError(f"n_tiles must be a positive integer, got {self.n_tiles!r}")

    @property
    def n_total(self) -> int:
        return self.n_per_tile * self.n_tiles

    @classmethod
    def from_total(cls, n_total: int, n_tiles: int) -> "ArrayLayout":
        if n_tiles < 1 or n_total % n_tiles:
            raise ValueError(f"n_tiles={n_tiles} does not divide n_total={n_total}")
        return cls(n_total // n_tiles, n_tiles)


@dataclass(frozen=True)
class FrequencyGrid:
    """Midpoints of ``n_subcarriers`` equal sub-bands of ``[f_c - B/2, f_c + B/2]``.

    Averages over this grid are midpoint-rule approximations of the band
    integral ``(1/B) * int g(f) df``.
    """

    f_c: float
    bandwidth: float
    n_subcarriers: int = DEFAULT_SUBCARRIERS

    def __post_init__(self):
        if not self.f_c > 0:
            raise ValueError(f"carrier frequency must be positive, got {self.f_c!r}")
        if self.bandwidth < 0:
            raise ValueError(f"bandwidth must be nonnegative, got {self.bandwidth!r}")
        if not self.bandwidth / self.f_c < 2:
            raise ValueError("fractional bandwidth B/f_c must be below 2")
        if int(self.n_subcarriers) != self.n_subcarriers or self.n_subcarriers < 1:
            raise ValueError(f"n_subcarriers must be a positive integer, got {self.n_subcarriers!r}")
        if self.bandwidth == 0 and self.n_subcarriers > 1:
            raise ValueError("a zero-bandwidth grid must have a single subcarrier")

    @property
    def beta(self) -> float:
        """Fractional bandwidth ``B / f_c``."""
        return self.bandwidth / self.f_c

    @property
    def frequencies(self) -> np.ndarray:
        step = self.bandwidth / self.n_subcarriers
        offsets = (np.arange(self.n_subcarriers) + 0.5) * step - self.bandwidth / 2
        return self.f_c + offsets

    @classmethod
    def from_beta(cls, beta: float, f_c: float = 140e9,
                  n_subcarriers: int = DEFAULT_SUBCARRIERS) -> "FrequencyGrid":
        return cls(f_c, beta * f_c, n_subcarriers)


@dataclass
class UserSpec:
    """A LoS user: angle of arrival in degrees and one complex gain per tile."""

    theta: float
    gains: np.ndarray = field(default=None)

    def __post_init__(self):
        _check_angle(self.theta)
        if self.gains is not None:
            self.gains = np.atleast_1d(np.asarray(self.gains, dtype=complex))

    def tile_gains(self, n_tiles: int) -> np.ndarray:
        if self.gains is None:
            return np.ones(n_tiles, dtype=complex)
        if self.gains.size == 1:
            return np.full(n_tiles, self.gains[0], dtype=complex)
        if self.gains.size != n_tiles:
            raise ValueError(f"user has {self.gains.size} tile gains, layout has {n_tiles} tiles")
        return self.gains.copy()

    @property
    def omega_c(self) -> float:
        """Center spatial frequency ``pi * sin(theta)``."""
        return float(np.pi * np.sin(np.deg2rad(self.theta)))


def _check_angle(theta):
    if not np.all(np.abs(np.asarray(theta, dtype=float)) < 90):
        raise ValueError(f"angle must satisfy |theta| < 90 degrees, got {theta!r}")


def spatial_frequency(theta, f, f_c):
    """Spatial frequency ``(f / f_c) * pi * sin(theta)`` in radians per element.

    Parameters
    ----------
    theta : float or array_like
        Angle of arrival in degrees, ``|theta| < 90``.
    f : float or array_like
        Frequency in Hz.
    f_c : float
        Carrier frequency in Hz.
    """
    _check_angle(theta)
    f = np.asarray(f, dtype=float)
    if np.any(f <= 0) or not f_c > 0:
        raise ValueError("frequencies must be positive")
    out = (f / f_c) * np.pi * np.sin(np.deg2rad(theta))
    return float(out) if np.ndim(out) == 0 else out


def steering_vector(n_elems: int, omega) -> np.ndarray:
    """ULA response ``[1, e^{j omega}, ..., e^{j (n-1) omega}]``.

    An array of ``omega`` values gives one row per value.
    """
    if n_elems < 1:
        raise ValueError(f"n_elems must be >= 1, got {n_elems}")
    omega = np.asarray(omega, dtype=float)
    return np.exp(1j * np.multiply.outer(omega, np.arange(n_elems)))


def tile_channel(layout: ArrayLayout, user: UserSpec, m: int, f: float, f_c: float) -> np.ndarray:
    """Channel vector between ``user`` and tile ``m`` (1-based) at frequency ``f``."""
    if not 1 <= m <= layout.n_tiles:
        raise IndexError(f"tile index {m} outside 1..{layout.n_tiles}")
    omega = spatial_frequency(user.theta, f, f_c)
    alpha = user.tile_gains(layout.n_tiles)[m - 1]
    tile_phase = np.exp(1j * (m - 1) * layout.n_per_tile * omega)
    return alpha * tile_phase * steering_vector(layout.n_per_tile, omega)


@dataclass
class ChannelTensor:
    """Per-tile channels on a frequency grid.

    ``data[f, m, k]`` is the length-``N_a`` vector ``h_mk(f)`` (0-based
    indices), so ``data`` has shape ``(n_subcarriers, N_d, K, N_a)``.
    """

    data: np.ndarray
    layout: ArrayLayout
    grid: FrequencyGrid

    @property
    def n_users(self) -> int:
        return self.data.shape[2]

    def user(self, k: int) -> np.ndarray:
        """All ``(n_subcarriers, N_d, N_a)`` channels of user ``k`` (0-based)."""
        return self.data[:, :, k, :]


def build_channel_tensor(layout: ArrayLayout, users: Sequence[UserSpec],
                         grid: FrequencyGrid) -> ChannelTensor:
    if len(users) == 0:
        raise ValueError("at least one user is required")
    freqs = grid.frequencies
    n_a, n_d = layout.n_per_tile, layout.n_tiles
    data = np.empty((freqs.size, n_d, len(users), n_a), dtype=complex)
    full = np.arange(layout.n_total).reshape(n_d, n_a)
    for k, user in enumerate(users):
        omega = spatial_frequency(user.theta, freqs, grid.f_c)
        omega = np.atleast_1d(omega)
        # full-array phase e^{j n omega}, n = (m-1) N_a + i
        phases = np.exp(1j * omega[:, None, None] * full[None, :, :])
        data[:, :, k, :] = user.tile_gains(n_d)[None, :, None] * phases
    return ChannelTensor(data, layout, grid)
