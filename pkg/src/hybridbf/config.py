"""
Scenario configuration: YAML files validated into :class:`ScenarioConfig`.

Built-in presets live in ``hybridbf/presets`` and are addressed by name.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, List, Optional, Tuple

import numpy as np
import yaml

from .core import ArrayLayout, FrequencyGrid, UserSpec

SINGLE_USER = ("narrowband", "single_broad", "partitioned_broad", "partitioned_narrow",
               "dominant_mode", "ideal_limit")
MULTI_USER = ("disjoint", "full_sharing", "clustered", "rf_only")
STRATEGIES = SINGLE_USER + MULTI_USER


class ConfigError(ValueError):
    """Invalid scenario configuration; the message names the offending field."""


@dataclass(frozen=True)
class Strategy:
    name: str
    cluster_size: Optional[int] = None
    anchor: str = "edges"

    @property
    def label(self) -> str:
        if self.name == "clustered":
            return f"clustered({self.cluster_size})"
        return self.name


@dataclass
class ScenarioConfig:
    name: str = "scenario"
    n_per_tile: int = 32
    n_tiles: int = 8
    carrier_hz: float = 140e9
    bandwidth_hz: float = 28e9
    n_subcarriers: int = 256
    snr_db: Tuple[float, float, float] = (-10.0, 30.0, 2.0)
    users: List[UserSpec] = field(default_factory=lambda: [UserSpec(0.0)])
    strategies: List[Strategy] = field(default_factory=lambda: [Strategy("narrowband")])
    output_dir: str = "results"
    output_format: str = "csv"
    pattern_points: int = 2048
    pattern_range: Tuple[float, float] = (-np.pi, np.pi)
    seed: int = 0

    @property
    def layout(self) -> ArrayLayout:
        return ArrayLayout(self.n_per_tile, self.n_tiles)

    @property
    def grid(self) -> FrequencyGrid:
        return FrequencyGrid(self.carrier_hz, self.bandwidth_hz, self.n_subcarriers)

    @property
    def beta(self) -> float:
        return self.bandwidth_hz / self.carrier_hz

    def snr_points(self) -> np.ndarray:
        start, stop, step = self.snr_db
        n = int(np.floor((stop - start) / step + 1e-9)) + 1
        return start + step * np.arange(n)

    def validate(self) -> "ScenarioConfig":
        """Check every field against module preconditions; raise :class:`ConfigError`."""
        _guard("layout", lambda: self.layout)
        _guard("carrier_hz/bandwidth_hz/n_subcarriers", lambda: self.grid)
        start, stop, step = self.snr_db
        if not step > 0 or stop < start:
            raise ConfigError(f"snr_db: need step > 0 and stop >= start, got {self.snr_db}")
        if not self.users:
            raise ConfigError("users: at least one user is required")
        for i, u in enumerate(self.users):
            _guard(f"users[{i}].gains", lambda u=u: u.tile_gains(self.n_tiles))
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"output.format: expected csv or json, got {self.output_format!r}")
        if self.pattern_points < 1:
            raise ConfigError("pattern.n_points: must be >= 1")
        if not self.strategies:
            raise ConfigError("strategies: at least one strategy is required")
        for i, s in enumerate(self.strategies):
            self._check_strategy(f"strategies[{i}]", s)
        return self

    def _check_strategy(self, where: str, s: Strategy):
        k, n_d = len(self.users), self.n_tiles
        if s.name not in STRATEGIES:
            raise ConfigError(f"{where}: unknown strategy {s.name!r}; choose from {', '.join(STRATEGIES)}")
        if s.name in SINGLE_USER and k != 1:
            raise ConfigError(f"{where}: {s.name} is a single-user strategy but {k} users are configured")
        if s.name in ("single_broad", "partitioned_broad", "disjoint", "full_sharing", "clustered") \
                and self.n_per_tile % 2:
            raise ConfigError(f"{where}: quadratic broad beams need an even n_per_tile, got {self.n_per_tile}")
        if s.name in ("disjoint", "rf_only") and n_d % k:
            raise ConfigError(f"{where}: {s.name} needs the user count ({k}) to divide n_tiles ({n_d})")
        if s.name == "full_sharing" and k < 2:
            raise ConfigError(f"{where}: full_sharing needs at least two users")
        if s.name == "clustered":
            if k != n_d:
                raise ConfigError(f"{where}: clustered needs one user per tile ({k} users, {n_d} tiles)")
            if s.cluster_size is None or s.cluster_size < 1 or k % s.cluster_size:
                raise ConfigError(f"{where}: cluster_size {s.cluster_size} must divide the user count {k}")
        if s.anchor not in ("edges", "centered"):
            raise ConfigError(f"{where}: anchor must be 'edges' or 'centered', got {s.anchor!r}")


def _guard(where: str, fn):
    try:
        return fn()
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _parse_complex(value, where):
    try:
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return complex(float(value[0]), float(value[1]))
        if isinstance(value, str):
            return complex(value.replace(" ", ""))
        return complex(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: cannot read {value!r} as a complex gain") from None


def _parse_user(raw: Any, where: str) -> UserSpec:
    if isinstance(raw, (int, float)):
        raw = {"theta": raw}
    if not isinstance(raw, dict) or "theta" not in raw:
        raise ConfigError(f"{where}: expected a number or a mapping with 'theta'")
    # a list is always one gain per tile; complex entries are "a+bj" strings or [re, im]
    gains = raw.get("gains")
    if isinstance(gains, list):
        gains = [_parse_complex(g, f"{where}.gains[{i}]") for i, g in enumerate(gains)]
    elif gains is not None:
        gains = _parse_complex(gains, f"{where}.gains")
    return _guard(where, lambda: UserSpec(float(raw["theta"]), gains))


def _parse_strategy(raw: Any, where: str) -> Strategy:
    if isinstance(raw, str):
        raw = {"name": raw}
    if not isinstance(raw, dict) or "name" not in raw:
        raise ConfigError(f"{where}: expected a strategy name or a mapping with 'name'")
    unknown = set(raw) - {"name", "cluster_size", "anchor"}
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    size = raw.get("cluster_size")
    return Strategy(str(raw["name"]), None if size is None else int(size), str(raw.get("anchor", "edges")))


_TOP_KEYS = {"name", "layout", "carrier_hz", "bandwidth_hz", "n_subcarriers", "snr_db",
             "users", "strategies", "output", "pattern", "seed"}


def config_from_dict(raw: dict) -> ScenarioConfig:
    try:
        cfg = _build(raw)
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ConfigError(f"malformed config: {exc!r}") from None
    return cfg.validate()


def _build(raw: dict) -> ScenarioConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a mapping")
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown top-level keys {sorted(unknown)}")
    cfg = ScenarioConfig()
    if "name" in raw:
        cfg.name = str(raw["name"])
    layout = raw.get("layout", {})
    cfg.n_per_tile = int(layout.get("n_per_tile", cfg.n_per_tile))
    cfg.n_tiles = int(layout.get("n_tiles", cfg.n_tiles))
    for key in ("carrier_hz", "bandwidth_hz"):
        if key in raw:
            setattr(cfg, key, float(raw[key]))
    if "n_subcarriers" in raw:
        cfg.n_subcarriers = int(raw["n_subcarriers"])
    if "snr_db" in raw:
        snr = raw["snr_db"]
        if isinstance(snr, (int, float)):
            cfg.snr_db = (float(snr), float(snr), 1.0)
        elif isinstance(snr, dict):
            cfg.snr_db = (float(snr["start"]), float(snr["stop"]), float(snr.get("step", 1.0)))
        else:
            raise ConfigError("snr_db: expected a number or {start, stop, step}")
    if "users" in raw:
        cfg.users = [_parse_user(u, f"users[{i}]") for i, u in enumerate(raw["users"] or [])]
    if "strategies" in raw:
        cfg.strategies = [_parse_strategy(s, f"strategies[{i}]") for i, s in enumerate(raw["strategies"] or [])]
    output = raw.get("output", {})
    cfg.output_dir = str(output.get("dir", cfg.output_dir))
    cfg.output_format = str(output.get("format", cfg.output_format))
    pattern = raw.get("pattern", {})
    cfg.pattern_points = int(pattern.get("n_points", cfg.pattern_points))
    if "range" in pattern:
        lo, hi = pattern["range"]
        cfg.pattern_range = (float(lo), float(hi))
    cfg.seed = int(raw.get("seed", cfg.seed))
    return cfg


def preset_names() -> List[str]:
    root = resources.files("hybridbf") / "presets"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".yaml"))


def load_config(source: str | Path) -> ScenarioConfig:
    """Load a config from a YAML path or a built-in preset name."""
    path = Path(source)
    if path.is_file():
        text = path.read_text()
    elif str(source) in preset_names():
        text = (resources.files("hybridbf") / "presets" / f"{source}.yaml").read_text()
    else:
        raise ConfigError(f"{source}: no such config file or preset")
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{source}: invalid YAML ({exc})") from None
    return config_from_dict(raw)
