"""
Digital stage: effective channels, per-subcarrier LMMSE SINR and wideband rates.

Noise is circular complex Gaussian with variance ``sigma2`` per real
dimension, i.e. ``2 * sigma2`` per complex sample.  Unit-norm RF combining
leaves it white across tiles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .beamformers import RfWeightPlan
from .core import ChannelTensor

HERMITIAN_TOL = 1e-10


@dataclass
class EffectiveChannel:
    """Tile-output channels ``H(f)``; ``matrices`` has shape ``(n_subcarriers, N_d, K)``."""

    matrices: np.ndarray

    @property
    def n_subcarriers(self) -> int:
        return self.matrices.shape[0]

    @property
    def n_tiles(self) -> int:
        return self.matrices.shape[1]

    @property
    def n_users(self) -> int:
        return self.matrices.shape[2]


@dataclass
class RateReport:
    per_user_rates: np.ndarray
    logdet_bound: float
    sinr: np.ndarray  # (n_subcarriers, K)

    @property
    def sum_rate(self) -> float:
        return float(np.sum(self.per_user_rates))


def effective_channel(plan: RfWeightPlan, tensor: ChannelTensor) -> EffectiveChannel:
    """``H(f)[m, k] = w_m^H h_mk(f) / ||w_m||`` on every subcarrier."""
    if plan.n_tiles != tensor.layout.n_tiles or plan.n_per_tile != tensor.layout.n_per_tile:
        raise ValueError(
            f"plan is {plan.n_tiles}x{plan.n_per_tile} but channel layout is "
            f"{tensor.layout.n_tiles}x{tensor.layout.n_per_tile}")
    w = plan.normalized
    return EffectiveChannel(np.einsum("mi,fmki->fmk", w.conj(), tensor.data))


def _check_sigma2(sigma2):
    if not sigma2 > 0:
        raise ValueError(f"noise variance must be positive, got {sigma2}")


def _cholesky(r: np.ndarray) -> np.ndarray:
    skew = np.max(np.abs(r - np.conj(np.swapaxes(r, -1, -2))))
    scale = max(1.0, float(np.max(np.abs(r))))
    assert skew <= HERMITIAN_TOL * scale, f"covariance not Hermitian (deviation {skew:.3g})"
    return np.linalg.cholesky(r)


def lmmse_sinr_all(H: np.ndarray, sigma2: float) -> np.ndarray:
    """Per-user LMMSE SINR for a stack of channel matrices.

    Parameters
    ----------
    H : ndarray, shape (..., N_d, K)
    sigma2 : float
        Noise variance per real dimension.

    Returns
    -------
    ndarray, shape (..., K)
        ``h_k^H R_k^{-1} h_k`` with ``R_k`` the covariance of the other users
        plus noise, evaluated as ``||L_k^{-1} h_k||^2`` from a Cholesky factor.
    """
    _check_sigma2(sigma2)
    H = np.asarray(H, dtype=complex)
    n_d, n_users = H.shape[-2:]
    eye = 2 * sigma2 * np.eye(n_d)
    out = np.empty(H.shape[:-2] + (n_users,))
    for k in range(n_users):
        others = np.delete(H, k, axis=-1)
        r = others @ np.conj(np.swapaxes(others, -1, -2)) + eye
        chol = _cholesky(r)
        z = np.linalg.solve(chol, H[..., k:k + 1])
        out[..., k] = np.sum(np.abs(z[..., 0]) ** 2, axis=-1)
    return out


def lmmse_sinr(H_f: np.ndarray, k: int, sigma2: float) -> float:
    """LMMSE SINR of user ``k`` (0-based) on one ``N_d x K`` channel matrix."""
    H_f = np.asarray(H_f, dtype=complex)
    if not 0 <= k < H_f.shape[1]:
        raise IndexError(f"user index {k} outside 0..{H_f.shape[1] - 1}")
    return float(lmmse_sinr_all(H_f, sigma2)[k])


def band_average(values: np.ndarray) -> np.ndarray:
    """Midpoint-rule band average over the subcarrier axis (axis 0)."""
    return np.mean(values, axis=0)


def rate_from_sinr(sinr: np.ndarray) -> np.ndarray:
    return band_average(np.log2(1.0 + sinr))


def wideband_rate(eff: EffectiveChannel, k: int, sigma2: float) -> float:
    return float(rate_from_sinr(lmmse_sinr_all(eff.matrices, sigma2))[k])


def logdet_per_subcarrier(H: np.ndarray, sigma2: float) -> np.ndarray:
    _check_sigma2(sigma2)
    H = np.asarray(H, dtype=complex)
    gram = np.conj(np.swapaxes(H, -1, -2)) @ H / (2 * sigma2)
    gram = gram + np.eye(H.shape[-1])
    sign, logabs = np.linalg.slogdet(gram)
    return logabs / np.log(2)


def logdet_sum_rate_bound(eff: EffectiveChannel, sigma2: float) -> float:
    """Band-averaged ``log2 det(I + H^H H / (2 sigma2))``."""
    return float(band_average(logdet_per_subcarrier(eff.matrices, sigma2)))


def rf_only_sinr_all(H: np.ndarray, assignment: Mapping[int, int] | Sequence[int],
                     sigma2: float) -> np.ndarray:
    """Single-tile SINR per user, other users on that tile counted as noise.

    ``assignment[k]`` is the 0-based tile serving user ``k``; no two users
    may share a tile.
    """
    _check_sigma2(sigma2)
    H = np.asarray(H, dtype=complex)
    n_d, n_users = H.shape[-2:]
    tiles = [assignment[k] for k in range(n_users)]
    if len(set(tiles)) != len(tiles):
        raise ValueError(f"assignment {tiles} maps two users to the same tile")
    if any(not 0 <= m < n_d for m in tiles):
        raise ValueError(f"assignment {tiles} references tiles outside 0..{n_d - 1}")
    out = np.empty(H.shape[:-2] + (n_users,))
    for k, m in enumerate(tiles):
        power = np.abs(H[..., m, :]) ** 2
        interference = np.sum(np.delete(power, k, axis=-1), axis=-1)
        out[..., k] = power[..., k] / (interference + 2 * sigma2)
    return out


def rf_only_sinr(H_f: np.ndarray, assignment, k: int, sigma2: float) -> float:
    return float(rf_only_sinr_all(H_f, assignment, sigma2)[k])


def rate_report(eff: EffectiveChannel, sigma2: float, assignment=None) -> RateReport:
    """Rates for every user; LMMSE unless an RF-only ``assignment`` is given."""
    if assignment is None:
        sinr = lmmse_sinr_all(eff.matrices, sigma2)
    else:
        sinr = rf_only_sinr_all(eff.matrices, assignment, sigma2)
    return RateReport(rate_from_sinr(sinr), logdet_sum_rate_bound(eff, sigma2), sinr)
