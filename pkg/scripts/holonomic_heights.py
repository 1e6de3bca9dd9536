"""Height estimates for algebraic branches (A - sqrt(Delta)) / B.

Compares the block-maximum height proxy with log 4 / k, where k counts the
finite singular points of the annihilating first-order operator.
"""

import argparse
import math

from szkit import check_holonomic_bound, parse_poly as P, quadratic_branch_ode, sqrt_series
from szkit.series import TruncatedSeries

BRANCHES = {
    "catalan": ("1", "2x", "1-4x"),
    "schroeder": ("1-x", "2x", "1-6x+x^2"),
    "motzkin": ("1-x", "2x^2", "1-2x-3x^2"),
}


def branch(a, b, delta, order):
    bp = P(b)
    shift = next(i for i, c in enumerate(bp.coeffs) if c)
    num = TruncatedSeries.from_poly(P(a), order + shift) - sqrt_series(P(delta), order + shift)
    return TruncatedSeries(tuple(c / bp[shift] for c in num.coeffs[shift:]))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", "--order", type=int, default=400)
    args = ap.parse_args()

    print(f"{'branch':>10} {'k':>3} {'height':>8} {'log4/k':>8} {'1/150k':>8}  passed")
    for name, (a, b, delta) in BRANCHES.items():
        f = branch(a, b, delta, args.order)
        rep = check_holonomic_bound(f, quadratic_branch_ode(P(a), P(b), P(delta)))
        print(
            f"{name:>10} {rep.singularities:>3} {rep.height_estimate:>8.4f} "
            f"{math.log(4) / rep.singularities:>8.4f} {rep.general_bound:>8.5f}  {rep.passed}"
        )


if __name__ == "__main__":
    main()
