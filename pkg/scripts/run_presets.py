"""Regenerate rate sweeps and beam patterns for every built-in preset.

    python scripts/run_presets.py [--out results]
"""

import argparse
import logging

from hybridbf.cli import main as cli_main
from hybridbf.config import preset_names


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="results")
    parser.add_argument("--points", type=int, default=2048)
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO)
    for name in preset_names():
        cli_main(["run", name, "--out", args.out])
        if name == "fig6":
            cli_main(["pattern", name, "--out", args.out, "--points", str(args.points)])


if __name__ == "__main__":
    main()
