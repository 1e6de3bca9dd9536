"""Independent reference implementations used only by the tests."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np


def naive_det(matrix) -> Fraction:
    """Gaussian elimination over Fractions with partial pivoting on nonzero entries."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return det


def mp_roots(coeffs_desc, dps: int = 60):
    """High-precision roots from descending integer coefficients."""
    cs = [int(c) for c in coeffs_desc]
    zeros = 0
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
        zeros += 1
    with mpmath.workdps(dps):
        found = mpmath.polyroots(cs, maxsteps=2000, extraprec=8 * dps) if len(cs) > 1 else []
        return list(found) + [mpmath.mpc(0)] * zeros


def _strip(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _rem(a, b):
    a = list(a)
    while len(a) >= len(b):
        t = a[-1] / b[-1]
        s = len(a) - len(b)
        for j, bj in enumerate(b):
            a[s + j] -= t * bj
        _strip(a)
    return a


def _quo(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        t = a[-1] / b[-1]
        s = len(a) - len(b)
        q[s] = t
        for j, bj in enumerate(b):
            a[s + j] -= t * bj
        _strip(a)
    return _strip(q)


def _gcd(a, b):
    while b:
        a, b = b, _rem(a, b)
    return [c / a[-1] for c in a]


def _deriv(a):
    return _strip([i * c for i, c in enumerate(a)][1:])


def squarefree_roots(coeffs_desc, dps: int = 60):
    """Roots with multiplicity via Yun's algorithm (ascending Fraction lists), then simple-root solves."""
    f = _strip([Fraction(int(c)) for c in reversed(list(coeffs_desc))])
    out = []
    g = _gcd(f, _deriv(f))
    c, d = _quo(f, g), _quo(_deriv(f), g)
    mult = 1
    while len(c) > 1:
        y = [x - z for x, z in zip(d + [0] * (len(c) - len(d)), _deriv(c) + [0] * len(c))]
        y = _strip(y[: max(len(d), len(c))])
        a = _gcd(c, y) if y else list(c)
        if len(a) > 1:
            with mpmath.workdps(dps):
                coeffs = [mpmath.mpf(x.numerator) / x.denominator for x in reversed(a)]
                rs = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * dps)
            out += list(rs) * mult
        c = _quo(c, a)
        d = _quo(y, a) if y else []
        mult += 1
    return out


def multiset_distance(xs, ys) -> float:
    """Greedy nearest matching distance between two equal-size complex multisets."""
    xs, ys = [complex(x) for x in xs], [complex(y) for y in ys]
    assert len(xs) == len(ys)
    worst = 0.0
    pool = list(ys)
    for x in sorted(xs, key=lambda z: (z.real, z.imag)):
        j = min(range(len(pool)), key=lambda i: abs(pool[i] - x))
        worst = max(worst, abs(pool.pop(j) - x))
    return worst


def cyclotomic_from_roots(n: int) -> list[int]:
    """Descending coefficients of prod (X - e^{2 pi i k/n}) over k coprime to n."""
    roots = [cmath.exp(2j * math.pi * k / n) for k in range(1, n + 1) if math.gcd(k, n) == 1]
    return [int(round(c.real)) for c in np.poly(roots)]


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def schroeder(n: int) -> int:
    # large Schroeder numbers
    return sum(math.comb(n + k, 2 * k) * catalan(k) for k in range(n + 1))


def motzkin(n: int) -> int:
    return sum(math.comb(n, 2 * k) * catalan(k) for k in range(n // 2 + 1))


def trace_power_sums(coeffs_desc, m: int) -> list[int]:
    """s_k = trace(C^k) for the companion matrix C of a monic polynomial."""
    n = len(coeffs_desc) - 1
    c = [[0] * n for _ in range(n)]
    for i in range(1, n):
        c[i][i - 1] = 1
    for i in range(n):
        c[i][n - 1] = -int(coeffs_desc[n - i])
    out, acc = [], [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(m):
        acc = [[sum(acc[i][k] * c[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        out.append(sum(acc[i][i] for i in range(n)))
    return out
