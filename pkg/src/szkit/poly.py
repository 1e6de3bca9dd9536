"""Exact integer polynomials and the root-power transforms built on them.

Coefficients are stored ascending (index i holds the coefficient of X^i) as
Python ints, so nothing here ever touches floating point.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence, Union

__all__ = [
    "IntPoly",
    "PowerSums",
    "PolynomialSyntaxError",
    "parse_poly",
    "root_power_transform",
    "reciprocal",
    "cyclotomic",
    "is_cyclotomic_product",
    "is_perfect_pth_power",
    "power_sums",
    "poly_gcd",
    "squarefree_decomposition",
    "squarefree_part",
    "euler_phi",
    "prime_factors",
    "is_prime",
]


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Dense polynomial with integer coefficients, ascending order."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    # -- construction ------------------------------------------------------

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> "IntPoly":
        return cls(tuple(reversed([int(c) for c in coeffs])))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls((0,) * k + (c,))

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    # -- basic queries -----------------------------------------------------

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lead() == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "IntPoly":
        """Divide out the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        g = self.content()
        if self.lead() < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def descending(self) -> list[int]:
        return list(reversed(self.coeffs))

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other: Union["IntPoly", int]) -> "IntPoly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other: Union["IntPoly", int]) -> "IntPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other: Union["IntPoly", int]) -> "IntPoly":
        return _as_poly(other) - self

    def __mul__(self, other: Union["IntPoly", int]) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return IntPoly()
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        if k < 0:
            raise ValueError("negative exponent")
        result = IntPoly((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def compose_power(self, k: int) -> "IntPoly":
        """P(X^k)."""
        out = [0] * (k * max(self.degree(), 0) + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return IntPoly(out)

    def negate_variable(self) -> "IntPoly":
        """P(-X)."""
        return IntPoly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def divmod_exact(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Division with remainder when lead(other) divides every step; else ValueError."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        d = other.degree()
        lc = other.lead()
        q = [0] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1 - d, -1, -1):
            c = rem[k + d]
            if c == 0:
                continue
            if c % lc:
                raise ValueError("quotient is not integral")
            t = c // lc
            q[k] = t
            for j, oc in enumerate(other.coeffs):
                rem[k + j] -= t * oc
        return IntPoly(q), IntPoly(rem)

    def __floordiv__(self, other: "IntPoly") -> "IntPoly":
        """Exact quotient; raises ValueError if other does not divide self."""
        q, r = self.divmod_exact(other)
        if not r.is_zero():
            raise ValueError("polynomial division is not exact")
        return q

    def divides(self, other: "IntPoly") -> bool:
        """True if self divides other in Z[X]."""
        try:
            _, r = other.divmod_exact(self)
        except ValueError:
            return False
        return r.is_zero()

    def mod(self, m: int) -> "IntPoly":
        return IntPoly(c % m for c in self.coeffs)

    # -- text forms --------------------------------------------------------

    def to_json(self) -> list[str]:
        """Descending-degree list of decimal strings."""
        return [str(c) for c in self.descending()] if self.coeffs else ["0"]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        s = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"IntPoly({str(self)!r})"


def _as_poly(p: Union[IntPoly, int]) -> IntPoly:
    return p if isinstance(p, IntPoly) else IntPoly((p,))


X = IntPoly.x()


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class PolynomialSyntaxError(ValueError):
    pass


_SYNTAX_HELP = (
    'expected a human form such as "x^2-x-1" or a JSON array of decimal '
    'coefficient strings in descending degree such as ["1","-1","-1"]'
)

_TERM = re.compile(
    r"""([+-]?)\s*
        (?:(\d+)\s*\*?\s*)?
        (?:([xXzZyY])(?:\s*(?:\^|\*\*)\s*(\d+))?)?""",
    re.VERBOSE,
)


def parse_poly(text: Union[str, Sequence]) -> IntPoly:
    """Parse "x^2-x-1" or a descending JSON coefficient array into an IntPoly."""
    if isinstance(text, (list, tuple)):
        try:
            return IntPoly.from_descending([int(str(c)) for c in text])
        except ValueError as exc:
            raise PolynomialSyntaxError(f"bad coefficient array {text!r}; {_SYNTAX_HELP}") from exc
    s = text.strip()
    if s.startswith("["):
        try:
            arr = json.loads(s)
        except json.JSONDecodeError as exc:
            raise PolynomialSyntaxError(f"bad JSON {text!r}; {_SYNTAX_HELP}") from exc
        if not isinstance(arr, list):
            raise PolynomialSyntaxError(f"bad JSON {text!r}; {_SYNTAX_HELP}")
        return parse_poly(arr)
    s = s.replace(" ", "")
    if not s:
        raise PolynomialSyntaxError(f"empty polynomial; {_SYNTAX_HELP}")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise PolynomialSyntaxError(f"cannot parse {text!r} at position {pos}; {_SYNTAX_HELP}")
        if pos > 0 and not m.group(1):
            raise PolynomialSyntaxError(f"missing sign in {text!r} at position {pos}; {_SYNTAX_HELP}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            k = int(m.group(4)) if m.group(4) else 1
        else:
            k = 0
        coeffs[k] = coeffs.get(k, 0) + sign * c
        pos = m.end()
    top = max(coeffs)
    return IntPoly(coeffs.get(i, 0) for i in range(top + 1))


# ---------------------------------------------------------------------------
# Small number theory helpers
# ---------------------------------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    f = 17
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Prime factors with multiplicity, ascending."""
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in set(prime_factors(n)):
        result -= result // p
    return result


# ---------------------------------------------------------------------------
# GCD and squarefree decomposition over Q, returned as primitive Z[X] polys
# ---------------------------------------------------------------------------


def _qrem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and a:
        if a[-1] == 0:
            a.pop()
            continue
        t = a[-1] / b[-1]
        shift = len(a) - len(b)
        for j, bj in enumerate(b):
            a[shift + j] -= t * bj
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _to_primitive(fr: list[Fraction]) -> IntPoly:
    if not fr:
        return IntPoly()
    den = 1
    for c in fr:
        den = den * c.denominator // gcd(den, c.denominator)
    return IntPoly(int(c * den) for c in fr).primitive()


def _qgcd(x: list[Fraction], y: list[Fraction]) -> list[Fraction]:
    while y:
        x, y = y, _qrem(x, y)
    if not x:
        return x
    return [c / x[-1] for c in x]


def _qdiv(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        t = a[k + len(b) - 1] / b[-1]
        q[k] = t
        for j, bj in enumerate(b):
            a[k + j] -= t * bj
    if any(a):
        raise ArithmeticError("inexact polynomial division over Q")
    return q


def _qderiv(a: list[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(a) if i]


def _qsub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd in Z[X] with positive leading coefficient; gcd(0, 0) = 0."""
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    g = _qgcd([Fraction(c) for c in a.coeffs], [Fraction(c) for c in b.coeffs])
    return _to_primitive(g)


def squarefree_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: primitive squarefree factors with their multiplicities.

    Content and sign are dropped, so the product of f**m over the result equals
    p up to a nonzero integer constant.
    """
    if p.degree() < 1:
        return []
    a = [Fraction(c) for c in p.coeffs]
    b = _qderiv(a)
    c = _qgcd(a, b)
    w = _qdiv(a, c)
    y = _qdiv(b, c)
    z = _qsub(y, _qderiv(w))
    out = []
    i = 1
    while len(w) > 1:
        g = _qgcd(w, z)
        if len(g) > 1:
            out.append((_to_primitive(g), i))
        w = _qdiv(w, g)
        y = _qdiv(z, g)
        z = _qsub(y, _qderiv(w))
        i += 1
    return out


def squarefree_part(p: IntPoly) -> IntPoly:
    """Product of the distinct irreducible factors of p (primitive)."""
    out = IntPoly((1,))
    for f, _ in squarefree_decomposition(p):
        out = out * f
    return out


# ---------------------------------------------------------------------------
# Root-power transforms
# ---------------------------------------------------------------------------


def _require_monic(p: IntPoly, what: str) -> None:
    if not p.is_monic():
        raise ValueError(f"{what} requires a monic polynomial, got {p}")


def _charpoly(mat: list[list[int]]) -> IntPoly:
    """Characteristic polynomial det(X*I - M) by Faddeev-LeVerrier (exact over Z)."""
    n = len(mat)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[0] * n for _ in range(n)]  # M_0 = 0
    ck = 1
    for k in range(1, n + 1):
        # M_k = M * M_{k-1} + c_{n-k+1} I
        prod = [[sum(mat[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += ck
        mk = prod
        tr = sum(sum(mat[i][t] * mk[t][i] for t in range(n)) for i in range(n))
        if tr % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        ck = -tr // k
        coeffs[n - k] = ck
    return IntPoly(coeffs)


def _companion(p: IntPoly) -> list[list[int]]:
    n = p.degree()
    m = [[0] * n for _ in range(n)]
    for i in range(1, n):
        m[i][i - 1] = 1
    for i in range(n):
        m[i][n - 1] = -p[i]
    return m


def _matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    return [[sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)] for i in range(n)]


def _matpow(m: list[list[int]], k: int) -> list[list[int]]:
    n = len(m)
    result = [[int(i == j) for j in range(n)] for i in range(n)]
    base = m
    while k:
        if k & 1:
            result = _matmul(result, base)
        k >>= 1
        if k:
            base = _matmul(base, base)
    return result


def _prime_root_power(p: IntPoly, q: int) -> IntPoly:
    # Res_Y(P(Y), X - Y^q) for monic P is the norm of X - Y^q in Z[Y]/(P),
    # i.e. the characteristic polynomial of the q-th power of the companion matrix.
    if p.degree() == 0:
        return p
    return _charpoly(_matpow(_companion(p), q))


def root_power_transform(p: IntPoly, m: int) -> IntPoly:
    """Monic polynomial whose roots are the m-th powers of the roots of p."""
    _require_monic(p, "root_power_transform")
    if m < 1:
        raise ValueError("m must be a positive integer")
    out = p
    for q in prime_factors(m):
        out = _prime_root_power(out, q)
    return out


def reciprocal(p: IntPoly) -> IntPoly:
    """X^deg P * P(1/X): reversed coefficients with trailing zeros trimmed."""
    if p.is_zero():
        raise ValueError("reciprocal of the zero polynomial")
    return IntPoly(reversed(p.coeffs))


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPoly:
    if n < 1:
        raise ValueError("cyclotomic level must be positive")
    num = IntPoly.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            num = num // cyclotomic(d)
    return num


def is_cyclotomic_product(p: IntPoly) -> bool:
    """True iff every root of the monic p is a root of unity (multiplicities allowed)."""
    _require_monic(p, "is_cyclotomic_product")
    if p[0] == 0:
        raise ValueError("is_cyclotomic_product requires P(0) != 0")
    rest = p
    d = p.degree()
    for n in range(1, 2 * d * d + 2):
        if rest.degree() == 0:
            break
        if euler_phi(n) > rest.degree():
            continue
        phi_n = cyclotomic(n)
        while rest.degree() >= phi_n.degree():
            q, r = rest.divmod_exact(phi_n)
            if not r.is_zero():
                break
            rest = q
    return rest.degree() == 0


def _integer_root(n: int, p: int) -> Optional[int]:
    if n < 0:
        if p % 2 == 0:
            return None
        r = _integer_root(-n, p)
        return -r if r is not None else None
    lo, hi = 0, 1
    while hi ** p <= n:
        hi *= 2
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid ** p <= n:
            lo = mid
        else:
            hi = mid
    if lo ** p == n:
        return lo
    return hi if hi ** p == n else None


def is_perfect_pth_power(p: IntPoly, k: int) -> Optional[IntPoly]:
    """Return Q with Q**k == p, or None. Positive leading coefficient preferred."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if k < 1:
        raise ValueError("exponent must be positive")
    n = p.degree()
    if n % k:
        return None
    lead_root = _integer_root(p.lead(), k)
    if lead_root is None:
        return None
    d = n // k
    # Formal k-th root of the descending coefficient series (J.C.P. Miller recurrence).
    a = [Fraction(c) for c in p.descending()]
    alpha = Fraction(1, k)
    b = [Fraction(lead_root)]
    for j in range(1, d + 1):
        acc = Fraction(0)
        for i in range(1, j + 1):
            if i < len(a) and a[i]:
                acc += ((alpha + 1) * i - j) * a[i] * b[j - i]
        b.append(acc / (j * a[0]))
    if any(c.denominator != 1 for c in b):
        return None
    q = IntPoly.from_descending([int(c) for c in b])
    return q if q ** k == p else None


@dataclass(frozen=True)
class PowerSums:
    """s_1..s_M of the roots of a monic polynomial."""

    values: tuple[int, ...]

    def elementary(self, count: Optional[int] = None) -> list[int]:
        """Recover e_1..e_count from the power sums (Newton's identities)."""
        count = len(self.values) if count is None else count
        e = [1]
        for k in range(1, count + 1):
            acc = 0
            for i in range(1, k + 1):
                acc += (-1) ** (i - 1) * e[k - i] * self.values[i - 1]
            if acc % k:
                raise ArithmeticError("power sums are not those of an integer polynomial")
            e.append(acc // k)
        return e[1:]


def power_sums(p: IntPoly, m: int) -> PowerSums:
    """Newton-Girard recurrence for s_1..s_m of a monic integer polynomial."""
    _require_monic(p, "power_sums")
    if m < 1:
        raise ValueError("M must be positive")
    n = p.degree()
    e = [1] + [(-1) ** k * p[n - k] for k in range(1, n + 1)]
    s: list[int] = []
    for k in range(1, m + 1):
        acc = (-1) ** (k - 1) * k * e[k] if k <= n else 0
        for i in range(1, min(k - 1, n) + 1):
            acc += (-1) ** (i - 1) * e[i] * s[k - i - 1]
        s.append(acc)
    return PowerSums(tuple(s))
