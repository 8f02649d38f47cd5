"""
Pre-DSP power and intra-tile trace-loss estimates for candidate tilings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

from .core import ArrayLayout


@dataclass(frozen=True)
class PowerModel:
    per_element_mw: float = 20.0  # LNA + phase shifter
    per_tile_mw: float = 400.0    # mixer + I/Q ADC pair

    def __post_init__(self):
        if self.per_element_mw <= 0 or self.per_tile_mw <= 0:
            raise ValueError("power constants must be positive")


@dataclass(frozen=True)
class LossModel:
    loss_db_per_mm: float = 0.2
    wavelength_mm: float = 2.142  # c / 140 GHz

    def __post_init__(self):
        if self.loss_db_per_mm <= 0 or self.wavelength_mm <= 0:
            raise ValueError("loss constants must be positive")


def total_power(model: PowerModel, layout: ArrayLayout) -> float:
    """Front-end power in watts: ``per_element * N + per_tile * N_d`` (mW) / 1000."""
    return (model.per_element_mw * layout.n_total + model.per_tile_mw * layout.n_tiles) / 1000.0


def per_element_power(model: PowerModel, layout: ArrayLayout) -> float:
    """Power per element in mW."""
    return model.per_element_mw + model.per_tile_mw * layout.n_tiles / layout.n_total


def tile_trace_loss(model: LossModel, n_per_tile: int) -> float:
    """Worst-case trace loss in dB within a tile, with trace length ``N_a / 2`` mm."""
    if n_per_tile < 1:
        raise ValueError(f"n_per_tile must be >= 1, got {n_per_tile}")
    return model.loss_db_per_mm * n_per_tile / 2


def design_table(n_total: int, power: PowerModel = PowerModel(),
                 loss: LossModel = LossModel()) -> List[dict]:
    """One row per divisor tiling of ``n_total``, ordered by tile count."""
    rows = []
    for n_d in range(1, n_total + 1):
        if n_total % n_d:
            continue
        layout = ArrayLayout.from_total(n_total, n_d)
        rows.append({
            "n_per_tile": layout.n_per_tile,
            "n_tiles": n_d,
            "n_total": n_total,
            "power_w": total_power(power, layout),
            "per_element_mw": per_element_power(power, layout),
            "trace_loss_db": tile_trace_loss(loss, layout.n_per_tile),
        })
    return rows
