"""Growth radius of diagonal series versus the smallest critical value.

    python3 scripts/diagonal_radius.py x+x^2 x+x^3 "x+2x^2-x^3"
"""

import argparse

from szkit import RationalMap, check_smale_bound, diagonal_series, parse_poly as P
from szkit.series import growth_radius


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("maps", nargs="*", default=["x+x^2", "x-x^2", "x+x^3", "x+x^2+x^3"])
    ap.add_argument("-n", "--order", type=int, default=300)
    args = ap.parse_args()

    print(f"{'P':>14} {'min|R(w)|':>11} {'bound':>9} {'radius':>9}  equality")
    for p in args.maps:
        r = RationalMap(P(p), P("1"))
        rep = check_smale_bound(r)
        rad = growth_radius(diagonal_series(r, args.order))
        print(f"{p:>14} {rep.min_abs:>11.7f} {rep.bound:>9.6f} {rad:>9.5f}  {rep.equality}")


if __name__ == "__main__":
    main()
