"""Exhaustive house scan over small monic families.

    python3 scripts/scan_small_degrees.py --cases 2:10 3:5 4:3 --jobs 4
"""

import argparse
import time

from szkit import scan


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", nargs="+", default=["2:10", "3:5", "4:3"], help="degree:bound pairs")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    print(f"{'n':>3} {'B':>3} {'checked':>8} {'cyclo':>6} {'min house':>12} {'2^(1/4n)':>10} {'bad':>4} {'sec':>6}  witness")
    for case in args.cases:
        n, b = (int(x) for x in case.split(":"))
        t0 = time.perf_counter()
        rep = scan(n, b, jobs=args.jobs)
        dt = time.perf_counter() - t0
        bad = len(rep.counterexamples) + len(rep.faults) + len(rep.undecided)
        mh = rep.min_house.lo if rep.min_house else float("nan")
        print(
            f"{n:>3} {b:>3} {rep.checked:>8} {rep.cyclotomic:>6} {mh:>12.8f} {rep.threshold:>10.6f} {bad:>4} {dt:>6.1f}  {rep.min_house_witness}"
        )


if __name__ == "__main__":
    main()
