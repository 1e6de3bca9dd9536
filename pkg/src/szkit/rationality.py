"""Kronecker's rationality test through exact Hankel determinants.

Determinants are computed by fraction-free (Bareiss) elimination on integer
matrices after clearing the series' common denominator.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .poly import IntPoly
from .series import TruncatedSeries, _lcm_den, _log_int

__all__ = [
    "HankelReport",
    "DecayReport",
    "bareiss_det",
    "hankel_matrix",
    "hankel_determinants",
    "reconstruct_rational",
    "decay_against_capacity",
    "RATIONAL_WINDOW",
    "NON_RATIONAL",
    "INCONCLUSIVE",
]

RATIONAL_WINDOW = "rational-window"
NON_RATIONAL = "non-rational"
INCONCLUSIVE = "inconclusive"


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix by Bareiss elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (piv * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def hankel_matrix(a: Sequence, k: int) -> list[list]:
    """(a_{i+j+1})_{i,j=0..k}."""
    return [[a[i + j + 1] for j in range(k + 1)] for i in range(k + 1)]


@dataclass(frozen=True)
class HankelReport:
    dets: tuple[Fraction, ...]
    decay: tuple[float, ...]
    verdict: str
    window: tuple[int, int]

    def to_json(self) -> dict:
        return {
            "dets": [str(d) for d in self.dets],
            "decay": list(self.decay),
            "verdict": self.verdict,
            "window": list(self.window),
        }


def _decay(d: Fraction, k: int) -> float:
    if d == 0:
        return 0.0
    lg = _log_int(abs(d.numerator)) - _log_int(d.denominator)
    return math.exp(lg / (k * k))


def _verdict(dets: Sequence[Fraction]) -> tuple[str, tuple[int, int]]:
    big_k = len(dets) - 1
    start = big_k - (big_k + 1) // 3 + 1
    start = min(max(start, 1), big_k)
    tail = dets[start:]
    if all(d == 0 for d in tail):
        return RATIONAL_WINDOW, (start, big_k)
    if all(d != 0 for d in tail):
        return NON_RATIONAL, (start, big_k)
    return INCONCLUSIVE, (start, big_k)


def hankel_determinants(f: TruncatedSeries, max_index: int, jobs: int = 1) -> HankelReport:
    """D_k = det(a_{i+j+1}) for k = 0..K with a three-valued rationality verdict.

    The verdict looks at the top third of the index range: all zero reads as
    rational, all nonzero as non-rational, anything else as inconclusive.
    """
    if max_index < 1:
        raise ValueError("max index must be at least 1")
    need = 2 * max_index + 1
    if f.order < need:
        raise ValueError(f"need coefficients a_1..a_{need}, series has order {f.order}")
    coeffs = f.coeffs[1 : need + 1]
    den = _lcm_den(coeffs)
    ints = [0] + [int(c * den) for c in coeffs]

    def one(k: int) -> Fraction:
        return Fraction(bareiss_det(hankel_matrix(ints, k)), den ** (k + 1))

    ks = range(max_index + 1)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            dets = tuple(ex.map(one, ks))
    else:
        dets = tuple(one(k) for k in ks)
    decay = tuple(_decay(dets[k], k) for k in range(1, max_index + 1))
    verdict, window = _verdict(dets)
    return HankelReport(dets, decay, verdict, window)


# ---------------------------------------------------------------------------
# Rational reconstruction (Pade via extended Euclid)
# ---------------------------------------------------------------------------


def _trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        t = a[-1] / b[-1]
        s = len(a) - len(b)
        q[s] = t
        for j, bj in enumerate(b):
            a[s + j] -= t * bj
        a.pop()
        _trim(a)
    return _trim(q), a


def _pmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _psub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _gcd_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b:
        a, b = b, _divmod(a, b)[1]
    return a


def _to_int_poly(a: list[Fraction]) -> IntPoly:
    den = _lcm_den(a) if a else 1
    return IntPoly(int(c * den) for c in a)


def reconstruct_rational(f: TruncatedSeries, dmax: int) -> Optional[tuple[IntPoly, IntPoly]]:
    """Coprime (p, q) with deg <= dmax, q(0) > 0 and p/q = f through every known coefficient."""
    if dmax < 0:
        raise ValueError("degree bound must be nonnegative")
    if len(f) < 2 * dmax + 2:
        raise ValueError(f"need at least {2 * dmax + 2} coefficients, have {len(f)}")
    m = 2 * dmax + 1
    r0: list[Fraction] = [Fraction(0)] * m + [Fraction(1)]
    r1 = _trim(list(f.coeffs[:m]))
    t0: list[Fraction] = []
    t1: list[Fraction] = [Fraction(1)]
    while r1 and len(r1) - 1 > dmax:
        q, r = _divmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, _psub(t0, _pmul(q, t1))
    num, den = r1, t1
    if not den or len(den) - 1 > dmax or den[0] == 0:
        return None
    g = _gcd_frac(list(num), list(den)) if num else list(den)
    if len(g) > 1:
        num = _divmod(num, g)[0] if num else []
        den = _divmod(den, g)[0]
    if den[0] == 0:
        return None
    scale = 1 / den[0]
    num = [c * scale for c in num]
    den = [c * scale for c in den]
    # full residual check against every available coefficient
    n = f.order
    prod = [Fraction(0)] * (n + 1)
    for i, c in enumerate(f.coeffs):
        if c:
            for j, dj in enumerate(den):
                if i + j > n:
                    break
                prod[i + j] += c * dj
    for i in range(n + 1):
        if prod[i] != (num[i] if i < len(num) else 0):
            return None
    common = _lcm_den(num + den)
    p_int = IntPoly(int(c * common) for c in num)
    q_int = IntPoly(int(c * common) for c in den)
    g = gcd(p_int.content(), q_int.content()) or 1
    return IntPoly(c // g for c in p_int.coeffs), IntPoly(c // g for c in q_int.coeffs)


# ---------------------------------------------------------------------------
# Determinant decay against a capacity bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecayReport:
    decay: tuple[float, ...]
    capacity: float
    slack: float
    within: bool
    hankel: HankelReport

    def to_json(self) -> dict:
        return {
            "decay": list(self.decay),
            "capacity": self.capacity,
            "slack": self.slack,
            "within": self.within,
            "final": self.decay[-1],
        }


def decay_against_capacity(
    f: TruncatedSeries, capacity: float, max_index: int, slack: float = 1.5
) -> DecayReport:
    """Compare |D_K|^(1/K^2) against capacity * slack. Diagnostic only."""
    report = hankel_determinants(f, max_index)
    final = report.decay[-1]
    return DecayReport(report.decay, capacity, slack, final <= capacity * slack, report)
