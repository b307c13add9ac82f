"""Record <z>(t) for a mixed-branch packet and write the trace plus its trembling frequency."""
import argparse
import csv

import numpy as np

from diractime.analysis import zbw_spectrum
from diractime.dynamics import record_series
from diractime.hilbert import make_grid
from diractime.operators import ModelParams
from diractime.packets import PacketSpec, build_gaussian


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="zbw_trace.csv")
    ap.add_argument("--weight", type=float, default=0.5, help="negative-branch weight")
    ap.add_argument("--samples", type=int, default=128)
    args = ap.parse_args()
    params = ModelParams(1.0, 0.0)
    spec = PacketSpec(sigma_p=0.05, branch="mixed", weight=args.weight, spin_axis=(0, 0, 1))
    f = build_gaussian(spec, make_grid(32, 0.5), params)
    times = np.linspace(0, 8 * np.pi, args.samples, endpoint=False)
    series = record_series(f, times, params, with_K=False)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "z", "T"])
        for t, r, T in zip(series.times, series.r[:, 2], series.T):
            w.writerow([f"{t:.14e}", f"{r:.14e}", f"{T:.14e}"])
    spec_out = zbw_spectrum(series)
    print(f"omega = {spec_out.angular_frequency:.4f} (bin {spec_out.bin_width:.3f}), amplitude = {spec_out.amplitude:.4f}")


if __name__ == "__main__":
    main()
