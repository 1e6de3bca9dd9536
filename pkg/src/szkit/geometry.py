"""Certified roots, house and Mahler measure, unit-circle counts, hedgehog capacities."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

import mpmath
import numpy as np

from .poly import IntPoly, poly_gcd, reciprocal, squarefree_decomposition

__all__ = [
    "RootEnclosure",
    "Interval",
    "Hedgehog",
    "RootIsolationError",
    "isolate_roots",
    "house",
    "unit_circle_roots",
    "mahler_measure",
    "weil_height",
    "disk_eval",
    "sturm_count",
    "dubinin_bound",
    "leja_points",
    "leja_capacity_estimate",
    "slit_disk_radius",
    "regular_hedgehog",
]


class RootIsolationError(ArithmeticError):
    """Roots could not be separated to the requested tolerance within the precision cap."""


@dataclass(frozen=True)
class RootEnclosure:
    """The disk |z - center| <= radius holds exactly one distinct root (or a flagged cluster)."""

    center: mpmath.mpc
    radius: mpmath.mpf
    multiplicity: int = 1
    cluster: bool = False

    @property
    def modulus_interval(self) -> tuple[mpmath.mpf, mpmath.mpf]:
        m = abs(self.center)
        return max(m - self.radius, mpmath.mpf(0)), m + self.radius

    def to_json(self) -> dict:
        return {
            "center": [float(self.center.real), float(self.center.imag)],
            "radius": float(self.radius),
            "multiplicity": self.multiplicity,
            "cluster": self.cluster,
        }


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def to_json(self) -> list[float]:
        return [self.lo, self.hi]


def _outward(lo, hi) -> Interval:
    return Interval(math.nextafter(float(lo), -math.inf), math.nextafter(float(hi), math.inf))


# ---------------------------------------------------------------------------
# Aberth-Ehrlich with exact a posteriori radii
# ---------------------------------------------------------------------------


def _gaussian(z: mpmath.mpc) -> tuple[int, int, int]:
    """Exact (a, b, E) with z = (a + b i) / 2^E."""
    parts = []
    for x in (z.real, z.imag):
        if x == 0:
            parts.append((0, 0))
            continue
        if not mpmath.isfinite(x):
            raise RootIsolationError("non-finite root approximation")
        sign, man, exp, _ = mpmath.mpf(x)._mpf_
        parts.append((-int(man) if sign else int(man), int(exp)))
    e = max(0, -parts[0][1], -parts[1][1])
    a = parts[0][0] << (parts[0][1] + e) if parts[0][0] else 0
    b = parts[1][0] << (parts[1][1] + e) if parts[1][0] else 0
    return a, b, e


def _exact_newton_ratio_sq(p: IntPoly, z: mpmath.mpc) -> Optional[Fraction]:
    """|P(z) / P'(z)|^2 evaluated exactly at the binary center z; None if P'(z) = 0."""
    a, b, e = _gaussian(z)
    d = 1 << e
    n = p.degree()
    dp = p.derivative()
    # homogeneous Horner: H = sum c_k (a+bi)^k d^(n-k), so P(z) = H / d^n
    hr, hi = p[n], 0
    dpow = 1
    for k in range(n - 1, -1, -1):
        dpow *= d
        hr, hi = hr * a - hi * b + p[k] * dpow, hr * b + hi * a
    gr, gi = dp[n - 1], 0
    dpow = 1
    for k in range(n - 2, -1, -1):
        dpow *= d
        gr, gi = gr * a - gi * b + dp[k] * dpow, gr * b + gi * a
    num = hr * hr + hi * hi
    den = (gr * gr + gi * gi) * d * d
    if den == 0:
        return None
    return Fraction(num, den)


def _sqrt_upper(x: Fraction, bits: int) -> mpmath.mpf:
    s = bits + 8
    r = isqrt((x.numerator << (2 * s)) // x.denominator) + 1
    return mpmath.mpf(r) / mpmath.mpf(2) ** s


def _initial_guesses(p: IntPoly) -> list[mpmath.mpc]:
    n = p.degree()
    lead = mpmath.mpf(p.lead())
    center = -mpmath.mpf(p[n - 1]) / (n * lead)
    shifted_bound = mpmath.mpf(0)
    for k in range(1, n + 1):
        c = abs(mpmath.mpf(p[n - k]) / lead)
        if c:
            shifted_bound = max(shifted_bound, 2 * c ** (mpmath.mpf(1) / k))
    r = max(shifted_bound, mpmath.mpf(1))
    return [center + r * mpmath.expj(2 * mpmath.pi * k / n + 0.4) for k in range(n)]


def _aberth(p: IntPoly, z: list[mpmath.mpc], prec: int, max_iter: int = 500) -> list[mpmath.mpc]:
    coeffs = [mpmath.mpf(c) for c in reversed(p.coeffs)]
    dcoeffs = [mpmath.mpf(c) for c in reversed(p.derivative().coeffs)]
    n = len(z)
    eps = mpmath.mpf(2) ** (-prec + 8)
    z = list(z)
    for _ in range(max_iter):
        biggest = mpmath.mpf(0)
        for k in range(n):
            zk = z[k]
            pv = mpmath.polyval(coeffs, zk)
            if pv == 0:
                continue
            dv = mpmath.polyval(dcoeffs, zk)
            ratio = pv / dv if dv != 0 else mpmath.mpc(eps, eps)
            s = mpmath.mpc(0)
            for j in range(n):
                if j != k:
                    diff = zk - z[j]
                    s += 1 / diff if diff != 0 else 0
            w = ratio / (1 - ratio * s)
            z[k] = zk - w
            biggest = max(biggest, abs(w) / max(1, abs(z[k])))
        if biggest < eps:
            break
    return z


def _enclose(p: IntPoly, z: list[mpmath.mpc], prec: int, mult: int) -> list[RootEnclosure]:
    n = p.degree()
    out = []
    for c in z:
        ratio = _exact_newton_ratio_sq(p, c)
        r = mpmath.inf if ratio is None else n * _sqrt_upper(ratio, prec)
        out.append(RootEnclosure(c, r, mult))
    return out


def _disjoint(encs: Sequence[RootEnclosure]) -> bool:
    for i in range(len(encs)):
        for j in range(i + 1, len(encs)):
            if abs(encs[i].center - encs[j].center) <= encs[i].radius + encs[j].radius:
                return False
    return True


def _merge_clusters(encs: list[RootEnclosure]) -> list[RootEnclosure]:
    groups: list[list[RootEnclosure]] = []
    for e in encs:
        hit = [g for g in groups if any(abs(e.center - f.center) <= e.radius + f.radius for f in g)]
        merged = [e]
        for g in hit:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    out = []
    for g in groups:
        if len(g) == 1:
            out.append(g[0])
            continue
        c = sum((e.center for e in g), mpmath.mpc(0)) / len(g)
        r = max(abs(e.center - c) + e.radius for e in g)
        out.append(RootEnclosure(c, r, sum(e.multiplicity for e in g), cluster=True))
    return out


def isolate_roots(p: IntPoly, tol: float = 1e-12, precision_cap: int = 4096) -> list[RootEnclosure]:
    """All complex roots of p as disjoint certified disks of radius <= tol.

    Each squarefree factor is solved by Aberth-Ehrlich iteration; the disk of
    radius deg * |f(z)/f'(z)| about an approximation always holds a root, and n
    pairwise disjoint such disks for a squarefree f of degree n hold exactly one
    root each. Precision doubles until the radii fit the tolerance.
    """
    if p.degree() < 1:
        raise ValueError("isolate_roots needs a nonconstant polynomial")
    factors = squarefree_decomposition(p)
    tol_mp = mpmath.mpf(tol)
    prec = 64
    approx: dict[int, list[mpmath.mpc]] = {}
    encs: list[RootEnclosure] = []
    while True:
        with mpmath.workprec(prec):
            encs = []
            for idx, (f, m) in enumerate(factors):
                if f.degree() == 1:
                    root = mpmath.mpc(mpmath.mpf(-f[0]) / f[1])
                    approx[idx] = [root]
                else:
                    start = approx.get(idx) or _initial_guesses(f)
                    approx[idx] = _aberth(f, [mpmath.mpc(s) for s in start], prec)
                encs.extend(_enclose(f, approx[idx], prec, m))
            ok_radius = all(e.radius <= tol_mp for e in encs)
            if ok_radius and _disjoint(encs):
                return encs
        if prec >= precision_cap:
            break
        prec = min(2 * prec, precision_cap)
    if not all(e.radius <= tol_mp for e in encs):
        raise RootIsolationError(
            f"roots of {p} not isolated to tol={tol} at precision cap {precision_cap} bits"
        )
    return _merge_clusters(encs)


def house(p: IntPoly, tol: float = 1e-12, precision_cap: int = 4096) -> Interval:
    """Interval containing max |alpha| over the roots of p."""
    encs = isolate_roots(p, tol, precision_cap)
    with mpmath.workprec(128):
        lo = max(e.modulus_interval[0] for e in encs)
        hi = max(e.modulus_interval[1] for e in encs)
    return _outward(lo, hi)


def mahler_measure(p: IntPoly, tol: float = 1e-12, precision_cap: int = 4096) -> Interval:
    """Interval containing log|lead| + sum log+ |alpha| (roots with multiplicity)."""
    if p.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    base = mpmath.log(abs(p.lead()))
    if p.degree() < 1:
        return _outward(base, base)
    encs = isolate_roots(p, tol, precision_cap)
    with mpmath.workprec(128):
        lo = hi = mpmath.mpf(base)
        for e in encs:
            mlo, mhi = e.modulus_interval
            lo += e.multiplicity * (mpmath.log(mlo) if mlo > 1 else 0)
            hi += e.multiplicity * (mpmath.log(mhi) if mhi > 1 else 0)
    return _outward(lo, hi)


def weil_height(p: IntPoly, tol: float = 1e-12) -> Interval:
    """h(alpha) = m(P) / deg P for a root of the irreducible p (irreducibility is the caller's claim)."""
    m = mahler_measure(p, tol)
    n = p.degree()
    return _outward(m.lo / n, m.hi / n)


def disk_eval(p: IntPoly, center: complex, radius: float, prec: int = 128) -> tuple[mpmath.mpc, mpmath.mpf]:
    """Disk-arithmetic Horner: a (center, radius) disk containing p(D(center, radius))."""
    with mpmath.workprec(prec):
        c = mpmath.mpc(center)
        r = mpmath.mpf(radius)
        vc, vr = mpmath.mpc(0), mpmath.mpf(0)
        for a in reversed(p.coeffs):
            vc, vr = vc * c + a, abs(vc) * r + vr * abs(c) + vr * r
        # cover rounding in the center computation
        vr += abs(vc) * mpmath.mpf(2) ** (-prec + 16)
        return vc, vr


# ---------------------------------------------------------------------------
# Exact unit-circle root count
# ---------------------------------------------------------------------------


def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and a:
        t = a[-1] / b[-1]
        s = len(a) - len(b)
        for j, bj in enumerate(b):
            a[s + j] -= t * bj
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _sign_changes(seq: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for p in seq:
        v = Fraction(0)
        for c in reversed(p):
            v = v * x + c
        if v != 0:
            signs.append(v > 0)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def sturm_count(g: IntPoly, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots of g in (lo, hi], exact."""
    if g.degree() < 1:
        return 0
    p0 = [Fraction(c) for c in g.coeffs]
    p1 = [Fraction(c) for c in g.derivative().coeffs]
    seq = [p0, p1]
    while True:
        r = _frac_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def _trace_polynomial(q: IntPoly) -> IntPoly:
    """g with q(z) = z^d g(z + 1/z) for a palindromic q of degree 2d."""
    d = q.degree() // 2
    # V_k(t) = z^k + z^-k: V_0 = 2, V_1 = t, V_k = t V_{k-1} - V_{k-2}
    v = [IntPoly((2,)), IntPoly((0, 1))]
    for _ in range(2, d + 1):
        v.append(IntPoly((0, 1)) * v[-1] - v[-2])
    g = IntPoly((q[d],))
    for k in range(1, d + 1):
        g = g + v[k] * q[d + k]
    return g


def unit_circle_roots(p: IntPoly) -> int:
    """Number of roots on |z| = 1 counted with multiplicity, computed exactly."""
    if p.is_zero() or p[0] == 0:
        raise ValueError("unit_circle_roots requires P(0) != 0")
    g = poly_gcd(p, reciprocal(p))
    count = 0
    for root in (1, -1):
        lin = IntPoly((-root, 1))
        while g.degree() > 0 and g(root) == 0:
            g = g // lin
            # multiplicity in p equals multiplicity in gcd(p, p*) for unimodular roots
            count += 1
    if g.degree() < 1:
        return count
    # with +-1 removed, an anti-palindromic factor would vanish at 1
    if g != reciprocal(g):
        raise ArithmeticError(f"self-inversive part {g} is not palindromic")
    t = _trace_polynomial(g)
    for f, m in squarefree_decomposition(t):
        count += 2 * m * sturm_count(f, Fraction(-2), Fraction(2))
    return count


# ---------------------------------------------------------------------------
# Hedgehogs and capacity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hedgehog:
    """Union of radial segments [0, a_i]; vertices may coincide."""

    vertices: tuple[complex, ...]

    def __post_init__(self) -> None:
        vs = tuple(complex(v) for v in self.vertices)
        if not vs:
            raise ValueError("a hedgehog needs at least one vertex")
        if any(v == 0 for v in vs):
            raise ValueError("hedgehog vertices must be nonzero")
        object.__setattr__(self, "vertices", vs)

    def scaled(self, c: complex) -> "Hedgehog":
        return Hedgehog(tuple(c * v for v in self.vertices))

    def max_modulus(self) -> float:
        return max(abs(v) for v in self.vertices)

    def spike_directions(self, rel_tol: float = 1e-9) -> int:
        """Number of distinct spike directions (overlapping spikes counted once)."""
        angles = sorted(cmath.phase(v) for v in self.vertices)
        count = 0
        last = None
        for a in angles:
            if last is None or abs(a - last) > rel_tol:
                count += 1
                last = a
        if count > 1 and abs((angles[0] + 2 * math.pi) - angles[-1]) <= rel_tol:
            count -= 1
        return count

    def to_json(self) -> list[list[float]]:
        return [[v.real, v.imag] for v in self.vertices]


def regular_hedgehog(m: int, length: float = 1.0, phase: float = 0.0) -> Hedgehog:
    return Hedgehog(tuple(length * cmath.exp(1j * (phase + 2 * math.pi * h / m)) for h in range(m)))


def dubinin_bound(k: Hedgehog) -> float:
    """(max |a_i|^m / 4)^(1/m) for m vertices; equality for regular m-gons."""
    m = len(k.vertices)
    return k.max_modulus() * 4.0 ** (-1.0 / m)


def leja_points(k: Hedgehog, npts: int, density: int = 4096) -> np.ndarray:
    """Greedy Leja sequence on a Chebyshev-Lobatto discretization of each spike."""
    t = (1.0 - np.cos(np.pi * np.arange(1, density + 1) / density)) / 2.0
    cand = np.concatenate([np.array([0j])] + [v * t for v in k.vertices])
    if npts > len(cand):
        raise ValueError("npts exceeds the number of discretization points")
    first = int(np.argmax(np.abs(cand)))
    chosen = [first]
    score = np.zeros(len(cand))
    taken = np.zeros(len(cand), dtype=bool)
    taken[first] = True
    last = cand[first]
    for _ in range(1, npts):
        with np.errstate(divide="ignore"):
            score += np.log(np.abs(cand - last))
        score[taken] = -np.inf
        top = score.max()
        # first index within relative rounding of the max keeps the order scale-invariant
        nxt = int(np.argmax(score >= top - 1e-9 * max(1.0, abs(top))))
        chosen.append(nxt)
        taken[nxt] = True
        last = cand[nxt]
    return cand[chosen]


def leja_capacity_estimate(k: Hedgehog, npts: int, density: int = 4096) -> float:
    """(prod_{i<j} |z_i - z_j|)^(2/(n(n-1))) over the first npts Leja points."""
    if npts < 8:
        raise ValueError("npts must be at least 8")
    z = leja_points(k, npts, density)
    n = len(z)
    diff = np.abs(z[:, None] - z[None, :])
    iu = np.triu_indices(n, 1)
    return float(np.exp(2.0 * np.sum(np.log(diff[iu])) / (n * (n - 1))))


def slit_disk_radius(b: float, s: float, k: int) -> float:
    """Mapping radius (4 b^k S^2k / (b^k + S^k)^2)^(1/k) of the k-slit disk."""
    if not (0 < b <= s) or k < 1:
        raise ValueError("need 0 < b <= S and k >= 1")
    # factor out S to avoid overflow: R = S * (4 u / (1 + u)^2)^(1/k), u = (b/S)^k
    u = (b / s) ** k
    return s * (4.0 * u / (1.0 + u) ** 2) ** (1.0 / k)
