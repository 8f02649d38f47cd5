"""RF-only / hybrid sum-rate ratio for the eight-user presets across per-element SNR.

Shows where single-user DSP stops tracking MU-MIMO DSP as inter-user
leakage overtakes noise.

    python scripts/snr_reference_check.py
"""

import numpy as np

from hybridbf.config import load_config
from hybridbf.scenarios import run_scenario, sum_rates


def main():
    for name in ("fig7a", "fig7b"):
        cfg = load_config(name)
        cfg.snr_db = (-20.0, 30.0, 5.0)
        rows = run_scenario(cfg)
        rf = sum_rates(rows, "rf_only")
        print(f"{name}: snr_db  rf_only/clustered(1)  clustered(4)/rf_only")
        for snr in cfg.snr_points():
            c1 = sum_rates(rows, "clustered(1)")[snr]
            c4 = sum_rates(rows, "clustered(4)")[snr]
            print(f"   {snr:6.1f}  {rf[snr] / c1:8.3f}  {c4 / rf[snr]:8.3f}")


if __name__ == "__main__":
    main()
