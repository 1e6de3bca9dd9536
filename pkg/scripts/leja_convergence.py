"""Leja-point capacity estimates for regular hedgehogs against 4^(-1/m)."""

import argparse

from szkit.geometry import dubinin_bound, leja_capacity_estimate, regular_hedgehog


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--spikes", type=int, nargs="+", default=[1, 2, 4, 8])
    ap.add_argument("--npts", type=int, nargs="+", default=[32, 64, 128, 256, 512])
    args = ap.parse_args()

    print(f"{'m':>3} {'exact':>9} {'dubinin':>9} " + " ".join(f"{n:>9}" for n in args.npts))
    for m in args.spikes:
        k = regular_hedgehog(m)
        exact = 4 ** (-1 / m)
        rel = [100 * (leja_capacity_estimate(k, n) - exact) / exact for n in args.npts]
        print(f"{m:>3} {exact:>9.6f} {dubinin_bound(k):>9.6f} " + " ".join(f"{r:>8.2f}%" for r in rel))


if __name__ == "__main__":
    main()
