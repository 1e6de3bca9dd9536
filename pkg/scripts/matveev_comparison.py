"""Print the n-range where 2^(1/4n) beats the Matveev-type lower bound."""

import argparse
import math

from szkit.pipelines import matveev_bound, matveev_crossover, matveev_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=int, default=55)
    ap.add_argument("--hi", type=int, default=62)
    ap.add_argument("--atoral", action="store_true", help="compare against 2^(1/2n) instead")
    args = ap.parse_args()

    print(f"{'n':>4} {'log matveev':>12} {'log ours':>12}  stronger")
    for row in matveev_table(args.lo, args.hi, atoral=args.atoral):
        print(f"{row['n']:>4} {row['matveev']:>12.8f} {row['ours']:>12.8f}  {row['ours_stronger']}")
    cross = matveev_crossover(atoral=args.atoral)
    print(f"crossover n = {cross}; at n=12 the Matveev value is {matveev_bound(12):.7f} = 3 log 6 / 144 = {3 * math.log(6) / 144:.7f}")


if __name__ == "__main__":
    main()
