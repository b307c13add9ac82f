"""Scan packet momentum and write group velocity, phase velocity and their product to CSV."""
import argparse
import csv

import numpy as np

from diractime.analysis import velocity_extraction
from diractime.dynamics import record_series
from diractime.hilbert import make_line_grid
from diractime.operators import ModelParams
from diractime.packets import PacketSpec, build_gaussian


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="phase_velocity_scan.csv")
    ap.add_argument("--m0", type=float, default=1.0)
    ap.add_argument("--p", type=float, nargs="+", default=[0.1, 0.2, 0.5, 0.75, 1.0, 1.5, 3.0])
    args = ap.parse_args()
    params = ModelParams(args.m0, 0.0)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["p", "v_gp", "v_ph", "product", "exact_v_gp"])
        for p0 in args.p:
            p_max = max(2.0, 1.2 * p0)
            grid = make_line_grid(16384, p_max)
            f = build_gaussian(PacketSpec(p_center=(0, 0, p0), sigma_p=5e-4 * max(1.0, p_max / 2)), grid, params)
            rep = velocity_extraction(record_series(f, np.linspace(0, 20, 16), params, with_K=False))
            exact = p0 / np.hypot(p0, args.m0)
            w.writerow([f"{x:.14e}" for x in (p0, rep.v_gp[2], rep.v_ph[2], rep.product, exact)])
            print(f"p = {p0:6.3f}  v_gp = {rep.v_gp[2]:.6f}  v_ph = {rep.v_ph[2]:.6f}  product = {rep.product:.6f}")


if __name__ == "__main__":
    main()
