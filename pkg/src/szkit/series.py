"""Truncated power series with exact rational coefficients.

Products are done on a common integer denominator so the inner loops run on
plain ints; only the final coefficients are normalized into Fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Union

from .poly import IntPoly, poly_gcd, reciprocal, root_power_transform, squarefree_part

__all__ = [
    "TruncatedSeries",
    "OdeOperator",
    "Recurrence",
    "IntegralityFault",
    "sqrt_series",
    "pth_root_series",
    "sz_series",
    "recurrence_from_ode",
    "series_height",
    "projective_height",
    "growth_radius",
    "quadratic_branch_ode",
]


class IntegralityFault(ArithmeticError):
    """A series that must have integer coefficients produced a denominator."""


Number = Union[int, Fraction]


def _lcm_den(cs: Iterable[Fraction]) -> int:
    d = 1
    for c in cs:
        q = c.denominator
        d = d * q // gcd(d, q)
    return d


@dataclass(frozen=True)
class TruncatedSeries:
    """a_0 + a_1 X + ... + a_N X^N, known modulo X^(N+1)."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_poly(cls, p: IntPoly, order: int) -> "TruncatedSeries":
        return cls(tuple(Fraction(p[i]) for i in range(order + 1)))

    @classmethod
    def from_ints(cls, values: Sequence[int]) -> "TruncatedSeries":
        return cls(tuple(Fraction(v) for v in values))

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def as_ints(self) -> list[int]:
        if not self.is_integral():
            raise IntegralityFault("series has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    # -- arithmetic, result order is the smaller of the two ----------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(self[i] + other[i] for i in range(n + 1)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(self[i] - other[i] for i in range(n + 1)))

    def scale(self, c: Number) -> "TruncatedSeries":
        return TruncatedSeries(tuple(c * a for a in self.coeffs))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return TruncatedSeries(_mul(self.coeffs, other.coeffs, min(self.order, other.order)))

    def __pow__(self, k: int) -> "TruncatedSeries":
        result = TruncatedSeries((Fraction(1),) + (Fraction(0),) * self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def derivative(self) -> "TruncatedSeries":
        if self.order == 0:
            return TruncatedSeries((Fraction(0),))
        return TruncatedSeries(tuple(i * self[i] for i in range(1, self.order + 1)))

    def inverse(self) -> "TruncatedSeries":
        """1/f by Newton iteration g <- g (2 - f g)."""
        if self[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        g = (1 / self[0],)
        prec = 1
        while prec < self.order + 1:
            prec = min(2 * prec, self.order + 1)
            fg = _mul(self.coeffs[:prec], g, prec - 1)
            corr = tuple(-c for c in fg)
            corr = (corr[0] + 2,) + corr[1:]
            g = _mul(g, corr, prec - 1)
        return TruncatedSeries(g)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TruncatedSeries) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)


def _mul(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> tuple[Fraction, ...]:
    da, db = _lcm_den(a[: order + 1]), _lcm_den(b[: order + 1])
    ia = [int(c * da) for c in a[: order + 1]]
    ib = [int(c * db) for c in b[: order + 1]]
    out = [0] * (order + 1)
    for i, x in enumerate(ia):
        if x:
            for j in range(min(len(ib), order + 1 - i)):
                out[i + j] += x * ib[j]
    den = da * db
    res = [Fraction(c, den) for c in out]
    res.extend(Fraction(0) for _ in range(order + 1 - len(res)))
    return tuple(res)


def _pad(p: IntPoly, order: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(p[i]) for i in range(order + 1))


def _check_unit(q: IntPoly) -> None:
    if q[0] != 1:
        raise ValueError(f"radicand must have constant term 1, got {q[0]}")


def _root_newton(q: IntPoly, p: int, order: int) -> TruncatedSeries:
    # s <- s + (Q s^(1-p) - s) / p, doubling the working precision each pass
    target = _pad(q, order)
    s: tuple[Fraction, ...] = (Fraction(1),)
    prec = 1
    while prec < order + 1:
        prec = min(2 * prec, order + 1)
        s = s + (Fraction(0),) * (prec - len(s))
        cur = TruncatedSeries(s)
        inv = (cur ** (p - 1)).inverse()
        quo = _mul(target[:prec], inv.coeffs, prec - 1)
        s = tuple(si + (qi - si) / p for si, qi in zip(s, quo))
    return TruncatedSeries(s[: order + 1])


def sqrt_series(q: IntPoly, order: int) -> TruncatedSeries:
    """The series s with s(0) = 1 and s^2 = Q mod X^(order+1)."""
    _check_unit(q)
    return _root_newton(q, 2, order)


def pth_root_series(q: IntPoly, p: int, order: int) -> TruncatedSeries:
    """The series s with s(0) = 1 and s^p = Q mod X^(order+1)."""
    _check_unit(q)
    if p < 1:
        raise ValueError("root index must be positive")
    if p == 1:
        return TruncatedSeries(_pad(q, order))
    return _root_newton(q, p, order)


def sz_series(p: IntPoly, order: int = 128) -> TruncatedSeries:
    """Expansion of sqrt(P2*(x) P4*(x)) in x = 1/X; integer by the mod 4 congruence.

    Raises IntegralityFault if any coefficient has a denominator, which would
    mean the transforms upstream are wrong.
    """
    if not p.is_monic():
        raise ValueError(f"sz_series requires a monic polynomial, got {p}")
    radicand = reciprocal(root_power_transform(p, 2)) * reciprocal(root_power_transform(p, 4))
    s = sqrt_series(radicand, order)
    for i, c in enumerate(s.coeffs):
        if c.denominator != 1:
            raise IntegralityFault(f"coefficient {i} of sqrt(P2* P4*) for P = {p} is {c}")
    return s


# ---------------------------------------------------------------------------
# Differential operators and recurrences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OdeOperator:
    """L = q(X) d^r/dX^r + sum_{i<r} a_i(X) d^i/dX^i."""

    leading: IntPoly
    lower: tuple[IntPoly, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lower", tuple(self.lower))
        if self.leading.is_zero():
            raise ValueError("leading coefficient of the operator must be nonzero")
        if not self.lower:
            raise ValueError("operator order must be at least 1")

    @property
    def order(self) -> int:
        return len(self.lower)

    def coefficients(self) -> list[IntPoly]:
        """[a_0, ..., a_{r-1}, q]."""
        return list(self.lower) + [self.leading]

    def apply(self, f: TruncatedSeries) -> TruncatedSeries:
        """L f, valid through order f.order - r (higher terms are discarded)."""
        r = self.order
        n = f.order - r
        if n < 0:
            raise ValueError("series too short for this operator")
        acc = [Fraction(0)] * (n + 1)
        d = f
        for i, c in enumerate(self.coefficients()):
            if i:
                d = d.derivative()
            for k in range(n + 1):
                s = Fraction(0)
                for j in range(min(k, c.degree()) + 1):
                    if c[j]:
                        s += c[j] * d[k - j]
                acc[k] += s
        return TruncatedSeries(tuple(acc))

    def annihilates(self, f: TruncatedSeries) -> bool:
        return not any(self.apply(f).coeffs)

    def singularity_count(self) -> int:
        """Number of distinct complex roots of the leading coefficient."""
        return max(squarefree_part(self.leading).degree(), 0)


def _falling(shift: int, i: int) -> IntPoly:
    # (n + shift)(n + shift - 1)...(n + shift - i + 1) as a polynomial in n
    out = IntPoly((1,))
    for t in range(i):
        out = out * IntPoly((shift - t, 1))
    return out


@dataclass(frozen=True)
class Recurrence:
    """sum_s c_s(n) a_{n+s} = 0 for all n >= 0, with a_k = 0 for k < 0."""

    terms: tuple[tuple[int, IntPoly], ...]

    @property
    def max_shift(self) -> int:
        return max(s for s, _ in self.terms)

    def coefficient(self, shift: int) -> IntPoly:
        for s, c in self.terms:
            if s == shift:
                return c
        return IntPoly()

    def residual(self, a: Sequence[Number], n: int) -> Fraction:
        total = Fraction(0)
        for s, c in self.terms:
            k = n + s
            if 0 <= k < len(a):
                total += c(n) * Fraction(a[k])
            elif k >= len(a):
                raise IndexError("not enough terms to evaluate the recurrence")
        return total

    def check(self, a: Sequence[Number]) -> bool:
        """True if every equation fully determined by a is satisfied."""
        top = len(a) - 1 - self.max_shift
        return all(self.residual(a, n) == 0 for n in range(0, top + 1))

    def generate(self, seed: Sequence[Number], count: int) -> list[Fraction]:
        """Extend seed to count terms; raises when a free coefficient is hit."""
        a = [Fraction(x) for x in seed]
        smax = self.max_shift
        lead = self.coefficient(smax)
        while len(a) < count:
            m = len(a)
            n = m - smax
            if n < 0:
                raise ValueError(f"seed too short: a_{m} is not determined by the recurrence")
            ln = lead(n)
            if ln == 0:
                raise ValueError(f"a_{m} is a free coefficient; extend the seed past index {m}")
            acc = Fraction(0)
            for s, c in self.terms:
                k = n + s
                if s != smax and k >= 0:
                    acc += c(n) * a[k]
            a.append(-acc / ln)
        return a[:count]


def recurrence_from_ode(op: OdeOperator) -> Recurrence:
    """Coefficient recurrence equivalent to L f = 0 for f = sum a_n X^n."""
    by_shift: dict[int, IntPoly] = {}
    for i, c in enumerate(op.coefficients()):
        for j, cij in enumerate(c.coeffs):
            if cij:
                s = i - j
                by_shift[s] = by_shift.get(s, IntPoly()) + _falling(s, i) * cij
    terms = tuple(sorted((s, c) for s, c in by_shift.items() if not c.is_zero()))
    if not terms:
        raise ValueError("degenerate operator: recurrence is identically zero")
    g = 0
    for _, c in terms:
        g = gcd(g, c.content())
    if g > 1:
        terms = tuple((s, IntPoly(x // g for x in c.coeffs)) for s, c in terms)
    return Recurrence(terms)


def quadratic_branch_ode(a: IntPoly, b: IntPoly, delta: IntPoly) -> OdeOperator:
    """An operator annihilating f = (A - sqrt(Delta)) / B.

    From y = sqrt(Delta): 2 Delta y' = Delta' y. Substituting y = A - B f gives a
    first-order inhomogeneous equation L0 f + g = 0, made homogeneous as
    g (L0 f)' - g' (L0 f) = 0.
    """
    da, db, dd = a.derivative(), b.derivative(), delta.derivative()
    a1 = -2 * delta * b
    a0 = dd * b - 2 * delta * db
    g = 2 * delta * da - dd * a
    if g.is_zero():
        cs = [a0, a1]
    else:
        cs = [
            g * a0.derivative() - g.derivative() * a0,
            g * (a1.derivative() + a0) - g.derivative() * a1,
            g * a1,
        ]
    common = cs[0]
    for c in cs[1:]:
        common = poly_gcd(common, c)
    if common.degree() > 0:
        cs = [c // common for c in cs]
    content = 0
    for c in cs:
        content = gcd(content, c.content())
    cs = [IntPoly(x // content for x in c.coeffs) for c in cs]
    return OdeOperator(leading=cs[-1], lower=tuple(cs[:-1]))


# ---------------------------------------------------------------------------
# Heights and growth
# ---------------------------------------------------------------------------


def projective_height(values: Sequence[Fraction]) -> float:
    """log max |b_i| for the coprime integer vector proportional to values."""
    den = _lcm_den(values)
    ints = [int(v * den) for v in values]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("height of the zero vector is undefined")
    m = max(abs(x) for x in ints) // g
    return math.log(m)


def series_height(f: TruncatedSeries) -> float:
    """Finite proxy for limsup (1/n) h([a_0 : ... : a_n]): max over n in [N/2, N]."""
    if len(f) < 16:
        raise ValueError("series_height needs at least 16 coefficients")
    n_max = f.order
    coeffs = f.coeffs
    best = 0.0
    # running lcm of denominators and gcd of numerators, so each n costs O(1) bigint ops
    den = 1
    for c in coeffs[: n_max // 2]:
        den = den * c.denominator // gcd(den, c.denominator)
    for n in range(max(n_max // 2, 1), n_max + 1):
        den = den * coeffs[n].denominator // gcd(den, coeffs[n].denominator)
        prefix = coeffs[: n + 1]
        if not any(prefix):
            continue
        ints = [c.numerator * (den // c.denominator) for c in prefix]
        g = 0
        for x in ints:
            g = gcd(g, x)
        h = math.log(max(abs(x) for x in ints) // g)
        best = max(best, h / n)
    return best


def growth_radius(f: TruncatedSeries, start: Optional[int] = None) -> float:
    """Radius of convergence estimate from block maxima of |a_n|.

    Compares max |a_j| over the last quarter of two windows ending at N/2 and N,
    so alternating or oscillating coefficients do not spoil the ratio.
    """
    n = f.order
    mid = n // 2 if start is None else start
    w = max(n // 8, 1)

    def block(end: int) -> tuple[int, float]:
        best_j, best = end, -math.inf
        for j in range(end - w + 1, end + 1):
            if f[j] != 0:
                v = _log_abs(f[j])
                if v > best:
                    best_j, best = j, v
        return best_j, best

    j1, l1 = block(mid)
    j2, l2 = block(n)
    if l1 == -math.inf or l2 == -math.inf:
        raise ValueError("coefficients vanish in the measurement window")
    return math.exp(-(l2 - l1) / (j2 - j1))


def _log_abs(x: Fraction) -> float:
    num, den = abs(x.numerator), x.denominator
    return _log_int(num) - _log_int(den)


def _log_int(k: int) -> float:
    b = k.bit_length()
    if b < 1000:
        return math.log(k)
    shift = b - 900
    return math.log(k >> shift) + shift * math.log(2)
