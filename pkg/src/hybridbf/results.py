"""
CSV/JSON writers for rate sweeps and beam patterns.

Floats are written with 17 significant digits so files round-trip exactly
and repeated runs are byte-identical.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, fields
from pathlib import Path
from typing import List, Sequence

import numpy as np

from .beamformers import RfWeightPlan, beam_gain_pattern
from .scenarios import ResultRow

COLUMNS = [f.name for f in fields(ResultRow)]
PATTERN_COLUMNS = ["tile", "omega", "gain"]


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _write(path: Path, text: str):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def emit_results(rows: Sequence[ResultRow], path, fmt: str = "csv") -> Path:
    if not rows:
        raise ValueError("no result rows to write")
    path = Path(path)
    if fmt == "csv":
        lines = [",".join(COLUMNS)]
        lines += [",".join(_fmt(getattr(r, c)) for c in COLUMNS) for r in rows]
        _write(path, "\n".join(lines) + "\n")
    elif fmt == "json":
        _write(path, json.dumps([asdict(r) for r in rows], indent=1) + "\n")
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    return path


def read_results(path) -> List[ResultRow]:
    path = Path(path)
    if path.suffix == ".json":
        return [ResultRow(**d) for d in json.loads(path.read_text())]
    with path.open(newline="") as fh:
        return [ResultRow(d["scenario"], d["strategy"], float(d["snr_db"]), int(d["user"]),
                          float(d["rate_bps_hz"]), float(d["sum_rate_bps_hz"]),
                          float(d["bound_bps_hz"]), float(d["power_w"]))
                for d in csv.DictReader(fh)]


def pattern_grid(n_points: int = 2048, lower: float = -np.pi, upper: float = np.pi) -> np.ndarray:
    if n_points < 1:
        raise ValueError("pattern grid needs at least one point")
    if n_points == 1:
        return np.array([(lower + upper) / 2])
    return np.linspace(lower, upper, n_points)


def emit_beam_pattern(plan: RfWeightPlan, path, n_points: int = 2048,
                      lower: float = -np.pi, upper: float = np.pi) -> Path:
    """Write ``tile,omega,gain`` rows (tiles 1-based) sampling each tile's beam pattern."""
    omegas = pattern_grid(n_points, lower, upper)
    lines = [",".join(PATTERN_COLUMNS)]
    for m, w in enumerate(plan.tile_weights, start=1):
        gains = beam_gain_pattern(w, omegas)
        lines += [f"{m},{_fmt(float(o))},{_fmt(float(g))}" for o, g in zip(omegas, gains)]
    path = Path(path)
    _write(path, "\n".join(lines) + "\n")
    return path
