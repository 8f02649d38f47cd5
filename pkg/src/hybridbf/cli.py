"""Command-line entry point: ``hybridbf {run,pattern,power,presets}``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .config import ConfigError, SINGLE_USER, load_config, preset_names
from .core import ArrayLayout, build_channel_tensor
from .hardware import LossModel, PowerModel, design_table, per_element_power, tile_trace_loss, total_power
from .results import emit_beam_pattern, emit_results
from .scenarios import build_plan, run_scenario


def _run(args) -> int:
    cfg = load_config(args.config)
    fmt = args.format or cfg.output_format
    out_dir = Path(args.out or cfg.output_dir)
    rows = run_scenario(cfg)
    path = emit_results(rows, out_dir / f"{cfg.name}.{fmt}", fmt)
    print(f"wrote {len(rows)} rows to {path}")
    return 0


def _pattern(args) -> int:
    cfg = load_config(args.config)
    out_dir = Path(args.out or cfg.output_dir)
    n_points = args.points or cfg.pattern_points
    tensor = build_channel_tensor(cfg.layout, cfg.users, cfg.grid)
    lo, hi = cfg.pattern_range
    for strategy in cfg.strategies:
        if strategy.name == "ideal_limit":
            continue
        plan, _ = build_plan(strategy, cfg.layout, cfg.users, cfg.beta, tensor)
        label = strategy.label.replace("(", "").replace(")", "")
        path = emit_beam_pattern(plan, out_dir / f"{cfg.name}_{label}_pattern.csv", n_points, lo, hi)
        print(f"wrote {path}")
    return 0


def _power(args) -> int:
    pm = PowerModel(args.per_element_mw, args.per_tile_mw)
    lm = LossModel(args.loss_db_per_mm)
    layout = ArrayLayout(args.n_per_tile, args.n_tiles)
    print(f"N_a={layout.n_per_tile} N_d={layout.n_tiles} N={layout.n_total}: "
          f"P_tot={total_power(pm, layout):.4g} W, "
          f"P_elt={per_element_power(pm, layout):.4g} mW, "
          f"trace loss={tile_trace_loss(lm, layout.n_per_tile):.4g} dB")
    if args.n_total is not None:
        print("n_per_tile,n_tiles,power_w,per_element_mw,trace_loss_db")
        for row in design_table(args.n_total, pm, lm):
            print(f"{row['n_per_tile']},{row['n_tiles']},{row['power_w']:.6g},"
                  f"{row['per_element_mw']:.6g},{row['trace_loss_db']:.6g}")
    return 0


def _presets(args) -> int:
    for name in preset_names():
        cfg = load_config(name)
        kind = "single-user" if all(s.name in SINGLE_USER for s in cfg.strategies) else "multiuser"
        angles = ", ".join(f"{u.theta:g}" for u in cfg.users)
        print(f"{name:8s} {kind:11s} angles=[{angles}] "
              f"strategies={','.join(s.label for s in cfg.strategies)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hybridbf", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a scenario sweep")
    p.add_argument("config", help="YAML config path or preset name")
    p.add_argument("--out", help="output directory (overrides config)")
    p.add_argument("--format", choices=["csv", "json"])
    p.set_defaults(func=_run)

    p = sub.add_parser("pattern", help="write per-tile beam patterns for each strategy")
    p.add_argument("config")
    p.add_argument("--out")
    p.add_argument("--points", type=int, help="number of spatial-frequency samples")
    p.set_defaults(func=_pattern)

    p = sub.add_parser("power", help="hardware power and trace-loss estimates")
    p.add_argument("n_per_tile", type=int)
    p.add_argument("n_tiles", type=int)
    p.add_argument("n_total", type=int, nargs="?", help="also tabulate every tiling of N elements")
    p.add_argument("--per-element-mw", type=float, default=PowerModel.per_element_mw)
    p.add_argument("--per-tile-mw", type=float, default=PowerModel.per_tile_mw)
    p.add_argument("--loss-db-per-mm", type=float, default=LossModel.loss_db_per_mm)
    p.set_defaults(func=_power)

    p = sub.add_parser("presets", help="list built-in scenario presets")
    p.set_defaults(func=_presets)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"hybridbf: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
