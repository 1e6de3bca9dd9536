"""End-to-end checkers: the root-modulus dichotomy, the atoral bound, the exhaustive
scanner, the Matveev comparison, holonomic heights and critical values."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .geometry import (
    Hedgehog,
    Interval,
    RootEnclosure,
    _outward,
    disk_eval,
    dubinin_bound,
    isolate_roots,
    unit_circle_roots,
)
from .poly import IntPoly, is_cyclotomic_product, poly_gcd, reciprocal, root_power_transform
from .rationality import HankelReport, hankel_determinants, reconstruct_rational
from .series import (
    IntegralityFault,
    OdeOperator,
    TruncatedSeries,
    series_height,
    sz_series,
)

__all__ = [
    "UndecidedError",
    "PreconditionError",
    "SzTrace",
    "check_sz_bound",
    "AtoralReport",
    "check_atoral_bound",
    "matveev_bound",
    "matveev_table",
    "matveev_crossover",
    "ScanReport",
    "scan",
    "HolonomicReport",
    "check_holonomic_bound",
    "RationalMap",
    "CriticalValue",
    "critical_values",
    "SmaleReport",
    "check_smale_bound",
    "diagonal_series",
    "SMYTH_CONSTANT",
]

CYCLOTOMIC = "cyclotomic-product"
SATISFIED = "bound-satisfied"
FAULT = "fault"

# real root of x^3 = x + 1, the smallest Mahler measure of a non-reciprocal polynomial
SMYTH_CONSTANT = 1.3247179572447460


class UndecidedError(ArithmeticError):
    """The certified interval straddles the threshold at the requested tolerance."""

    def __init__(self, message: str, interval: Interval, threshold: float):
        super().__init__(message)
        self.interval = interval
        self.threshold = threshold


class PreconditionError(ValueError):
    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


def _house_from(encs: Sequence[RootEnclosure]) -> Interval:
    with mpmath.workprec(128):
        lo = max(e.modulus_interval[0] for e in encs)
        hi = max(e.modulus_interval[1] for e in encs)
    return _outward(lo, hi)


def _power_hedgehog(encs: Sequence[RootEnclosure]) -> Hedgehog:
    verts = []
    for e in encs:
        c = complex(e.center)
        verts.extend([c**2, c**4] * e.multiplicity)
    return Hedgehog(tuple(verts))


# ---------------------------------------------------------------------------
# Root-modulus dichotomy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SzTrace:
    input: IntPoly
    p2: IntPoly
    p4: IntPoly
    series_integral: bool
    hedgehog: Hedgehog
    dubinin: float
    capacity_lt_one: bool
    hankel: Optional[HankelReport]
    classification: str
    house: Interval
    threshold: float
    enclosures: tuple[RootEnclosure, ...] = field(repr=False, default=())

    def to_json(self) -> dict:
        return {
            "input": self.input.to_json(),
            "degree": self.input.degree(),
            "p2": self.p2.to_json(),
            "p4": self.p4.to_json(),
            "series_integral": self.series_integral,
            "hedgehog": self.hedgehog.to_json(),
            "dubinin": self.dubinin,
            "capacity_lt_one": self.capacity_lt_one,
            "hankel": self.hankel.to_json() if self.hankel else None,
            "classification": self.classification,
            "house": self.house.to_json(),
            "threshold": self.threshold,
        }


def sz_threshold(n: int) -> float:
    return 2.0 ** (1.0 / (4 * n))


def check_sz_bound(
    p: IntPoly,
    tol: float = 1e-12,
    order: int = 128,
    hankel_k: int = 20,
    precision_cap: int = 4096,
) -> SzTrace:
    """Trace the dichotomy: cyclotomic product, or house >= 2^(1/(4n)).

    Raises UndecidedError when the house interval straddles the threshold.
    """
    if not p.is_monic():
        raise PreconditionError("not-monic", f"{p} is not monic")
    n = p.degree()
    if n < 1:
        raise PreconditionError("degree", "degree must be at least 1")
    if p[0] == 0:
        raise PreconditionError("zero-root", "P(0) must be nonzero")
    cyclo = is_cyclotomic_product(p)
    p2 = root_power_transform(p, 2)
    p4 = root_power_transform(p2, 2)
    hankel = None
    try:
        s = sz_series(p, order)
        integral = True
        hankel = hankel_determinants(s, min(hankel_k, (order - 1) // 2))
    except IntegralityFault:
        integral = False
    encs = isolate_roots(p, tol, precision_cap)
    hs = _house_from(encs)
    hedgehog = _power_hedgehog(encs)
    dub = dubinin_bound(hedgehog)
    thr = sz_threshold(n)
    if not integral:
        cls = FAULT
    elif cyclo:
        cls = CYCLOTOMIC
    elif hs.lo >= thr - 2 * tol:
        cls = SATISFIED
    elif hs.hi < thr - 2 * tol:
        cls = FAULT
    else:
        raise UndecidedError(f"house {hs} straddles threshold {thr} for {p}", hs, thr)
    return SzTrace(
        input=p,
        p2=p2,
        p4=p4,
        series_integral=integral,
        hedgehog=hedgehog,
        dubinin=dub,
        capacity_lt_one=dub < 1,
        hankel=hankel,
        classification=cls,
        house=hs,
        threshold=thr,
        enclosures=tuple(encs),
    )


# ---------------------------------------------------------------------------
# Atoral reciprocal polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AtoralReport:
    input: IntPoly
    house: Interval
    threshold: float
    satisfied: bool
    spike_count: int
    full_spike_count: int
    dubinin_spikes: float

    def to_json(self) -> dict:
        return {
            "input": self.input.to_json(),
            "house": self.house.to_json(),
            "threshold": self.threshold,
            "satisfied": self.satisfied,
            "spike_count": self.spike_count,
            "full_spike_count": self.full_spike_count,
            "dubinin_spikes": self.dubinin_spikes,
        }


def check_atoral_bound(p: IntPoly, tol: float = 1e-12, precision_cap: int = 4096) -> AtoralReport:
    """house >= 2^(1/(2n)) for a monic reciprocal P with no unimodular roots."""
    if not p.is_monic():
        raise PreconditionError("not-monic", f"{p} is not monic")
    if p[0] == 0 or (p != reciprocal(p) and p != -reciprocal(p)):
        raise PreconditionError("not-reciprocal", f"{p} is not reciprocal")
    n = p.degree()
    if n < 2 or n % 2:
        raise PreconditionError("odd-degree", f"degree {n} is not an even number > 1")
    if unit_circle_roots(p):
        raise PreconditionError("roots-on-unit-circle", f"{p} has roots on the unit circle")
    encs = isolate_roots(p, tol, precision_cap)
    hs = _house_from(encs)
    thr = 2.0 ** (1.0 / (2 * n))
    if hs.lo >= thr - 2 * tol:
        ok = True
    elif hs.hi < thr - 2 * tol:
        ok = False
    else:
        raise UndecidedError(f"house {hs} straddles threshold {thr} for {p}", hs, thr)
    # alpha and 1/conj(alpha) give spikes along the same ray
    hog = _power_hedgehog(encs)
    spikes = hog.spike_directions(rel_tol=1e-7)
    return AtoralReport(
        input=p,
        house=hs,
        threshold=thr,
        satisfied=ok,
        spike_count=spikes,
        full_spike_count=len(hog.vertices),
        dubinin_spikes=hog.max_modulus() * 4.0 ** (-1.0 / spikes),
    )


# ---------------------------------------------------------------------------
# Comparison with Matveev's bound
# ---------------------------------------------------------------------------


def matveev_bound(n: int) -> float:
    """3 log(n/2) / n^2, valid from degree 12 on."""
    if n < 12:
        raise ValueError("Matveev's bound 3 log(n/2)/n^2 is only stated for n >= 12")
    return 3.0 * math.log(n / 2) / n**2


def matveev_table(lo: int = 55, hi: int = 62, atoral: bool = False) -> list[dict]:
    rows = []
    for n in range(lo, hi + 1):
        ours = math.log(2) / ((2 if atoral else 4) * n)
        mv = matveev_bound(n)
        rows.append({"n": n, "matveev": mv, "ours": ours, "ours_stronger": ours > mv})
    return rows


def matveev_crossover(atoral: bool = False, limit: int = 100_000) -> int:
    """Least n >= 12 from which log 2/(4n) (or /(2n)) beats Matveev for every larger n up to limit."""
    c = 2 if atoral else 4
    last_weaker = 11
    for n in range(12, limit + 1):
        if not math.log(2) / (c * n) > matveev_bound(n):
            last_weaker = n
    return last_weaker + 1


# ---------------------------------------------------------------------------
# Exhaustive scan
# ---------------------------------------------------------------------------


@dataclass
class ScanReport:
    degree: int
    coeff_bound: int
    total: int = 0
    checked: int = 0
    skipped_symmetric: int = 0
    cyclotomic: int = 0
    satisfied: int = 0
    counterexamples: list = field(default_factory=list)
    faults: list = field(default_factory=list)
    undecided: list = field(default_factory=list)
    min_house: Optional[Interval] = None
    min_house_witness: Optional[IntPoly] = None
    complete: bool = True
    resume: Optional[str] = None

    @property
    def threshold(self) -> float:
        return sz_threshold(self.degree)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "coeff_bound": self.coeff_bound,
            "total": self.total,
            "checked": self.checked,
            "skipped_symmetric": self.skipped_symmetric,
            "cyclotomic_products": self.cyclotomic,
            "bound_satisfied": self.satisfied,
            "counterexamples": [p.to_json() for p in self.counterexamples],
            "faults": [p.to_json() for p in self.faults],
            "undecided": [p.to_json() for p in self.undecided],
            "threshold": self.threshold,
            "min_house": self.min_house.to_json() if self.min_house else None,
            "min_house_witness": self.min_house_witness.to_json() if self.min_house_witness else None,
            "smyth_reference": SMYTH_CONSTANT ** (1.0 / self.degree),
            "zero_counterexamples": not self.counterexamples and not self.faults,
            "complete": self.complete,
            "resume": self.resume,
        }


def _poly_at(index: int, n: int, bound: int) -> IntPoly:
    """Monic degree-n polynomial number index in the deterministic scan order."""
    width = 2 * bound + 1
    sign_bit, rest = index % 2, index // 2
    coeffs = [1 if sign_bit == 0 else -1]
    for _ in range(n - 1):
        rest, digit = divmod(rest, width)
        coeffs.append(digit - bound)
    coeffs.append(1)
    return IntPoly(coeffs)


def _is_canonical(p: IntPoly) -> bool:
    # roots -alpha share the house; keep the lexicographically smaller of P and (-1)^n P(-X)
    n = p.degree()
    twin = p.negate_variable() * (-1 if n % 2 else 1)
    return p.descending() <= twin.descending()


def _scan_chunk(args) -> list[tuple[int, str, Optional[tuple[float, float]]]]:
    lo, hi, n, bound, tol, order, hankel_k, cap = args
    out = []
    for idx in range(lo, hi):
        p = _poly_at(idx, n, bound)
        if not _is_canonical(p):
            out.append((idx, "skip", None))
            continue
        try:
            tr = check_sz_bound(p, tol, order, hankel_k, cap)
        except UndecidedError:
            try:
                tr = check_sz_bound(p, tol * 1e-6, order, hankel_k, cap)
            except UndecidedError:
                out.append((idx, "undecided", None))
                continue
        cls = tr.classification
        if cls == FAULT and tr.series_integral:
            cls = "counterexample"
        out.append((idx, cls, (tr.house.lo, tr.house.hi)))
    return out


def parse_resume(token: str) -> tuple[int, int, int]:
    try:
        n, b, idx = (int(x) for x in token.split(":"))
    except ValueError as exc:
        raise ValueError(f"bad resume token {token!r}; expected degree:bound:index") from exc
    return n, b, idx


def scan(
    n: int,
    bound: int,
    tol: float = 1e-12,
    budget: int = 2_000_000,
    resume: Optional[str] = None,
    jobs: int = 1,
    order: int = 64,
    hankel_k: int = 16,
    precision_cap: int = 4096,
    chunk: int = 256,
) -> ScanReport:
    """Enumerate monic P of degree n, |coeff| <= bound, P(0) = +-1, and classify each."""
    if n < 2:
        raise ValueError("the scan requires degree n > 1")
    if bound < 0:
        raise ValueError("coefficient bound must be nonnegative")
    total = 2 * (2 * bound + 1) ** (n - 1)
    start = 0
    if resume:
        rn, rb, start = parse_resume(resume)
        if (rn, rb) != (n, bound):
            raise ValueError("resume token belongs to a different scan")
    stop = total
    if n * (2 * bound + 1) ** n > budget:
        stop = min(total, start + max(budget // n, 1))
    report = ScanReport(degree=n, coeff_bound=bound, total=total)
    tasks = [
        (lo, min(lo + chunk, stop), n, bound, tol, order, hankel_k, precision_cap)
        for lo in range(start, stop, chunk)
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_scan_chunk, tasks))
    else:
        results = [_scan_chunk(t) for t in tasks]
    for idx, cls, hs in itertools.chain.from_iterable(results):
        if cls == "skip":
            report.skipped_symmetric += 1
            continue
        report.checked += 1
        p = _poly_at(idx, n, bound)
        if cls == CYCLOTOMIC:
            report.cyclotomic += 1
        elif cls == SATISFIED:
            report.satisfied += 1
            if report.min_house is None or hs[0] < report.min_house.lo:
                report.min_house = Interval(*hs)
                report.min_house_witness = p
        elif cls == "counterexample":
            report.counterexamples.append(p)
        elif cls == "undecided":
            report.undecided.append(p)
        else:
            report.faults.append(p)
    if stop < total:
        report.complete = False
        report.resume = f"{n}:{bound}:{stop}"
    return report


# ---------------------------------------------------------------------------
# Holonomic height bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HolonomicReport:
    singularities: int
    special_form: Optional[dict]
    height_estimate: Optional[float]
    general_bound: float
    integer_bound: Optional[float]
    integral: bool
    passed: Optional[bool]
    slack: float

    def to_json(self) -> dict:
        return {
            "k": self.singularities,
            "special_form": self.special_form,
            "height_estimate": self.height_estimate,
            "general_bound": self.general_bound,
            "integer_bound": self.integer_bound,
            "integral": self.integral,
            "passed": self.passed,
            "slack": self.slack,
        }


def _special_form(f: TruncatedSeries, k: int, max_power: int = 8) -> Optional[dict]:
    # f (X^j - 1)^m must be a polynomial; accept when its upper half vanishes
    n = f.order
    for j in range(1, max(k, 1) + 1):
        for m in range(0, max_power + 1):
            den = (IntPoly.monomial(j) - 1) ** m
            g = f * TruncatedSeries.from_poly(den, n)
            nz = [i for i, c in enumerate(g.coeffs) if c != 0]
            if not nz:
                return {"j": j, "m": m, "numerator": ["0"]}
            if nz[-1] <= n // 2:
                coeffs = g.coeffs[: nz[-1] + 1]
                d = 1
                for c in coeffs:
                    d = d * c.denominator // math.gcd(d, c.denominator)
                num = IntPoly(int(c * d) for c in coeffs)
                return {"j": j, "m": m, "numerator": num.to_json(), "scale": str(d)}
    return None


def check_holonomic_bound(
    f: TruncatedSeries, op: OdeOperator, slack: float = 0.05
) -> HolonomicReport:
    """Either f = p(X)/(X^j - 1)^m, or the height estimate clears 1/(150k) (log 4/k if integral)."""
    if not any(f.coeffs):
        raise ValueError("f must be nonzero")
    if not op.annihilates(f):
        raise PreconditionError("not-annihilated", "the operator does not annihilate the series")
    k = op.singularity_count()
    general = 1.0 / (150 * max(k, 1))
    integral = f.is_integral()
    integer_bound = math.log(4) / k if integral and k else None
    special = _special_form(f, k)
    if special is not None:
        return HolonomicReport(k, special, None, general, integer_bound, integral, None, slack)
    est = series_height(f)
    ok = est >= general * (1 - slack)
    if integer_bound is not None:
        ok = ok and est >= integer_bound * (1 - slack)
    return HolonomicReport(k, None, est, general, integer_bound, integral, ok, slack)


# ---------------------------------------------------------------------------
# Critical values of rational maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalMap:
    """R = P/Q with gcd(P, Q) = 1, P(0) = 0 and P'(0) = 1."""

    p: IntPoly
    q: IntPoly

    def __post_init__(self) -> None:
        if self.q.is_zero():
            raise ValueError("denominator must be nonzero")
        if self.p[0] != 0:
            raise ValueError("P(0) must be 0")
        if self.p[1] != 1:
            raise ValueError("P'(0) must be 1")
        if poly_gcd(self.p, self.q).degree() > 0:
            raise ValueError("P and Q must be coprime")

    @property
    def degree(self) -> int:
        return max(self.p.degree(), self.q.degree())

    def derivative_numerator(self) -> IntPoly:
        return self.p.derivative() * self.q - self.p * self.q.derivative()


@dataclass(frozen=True)
class CriticalValue:
    point: RootEnclosure
    value: mpmath.mpc
    radius: mpmath.mpf

    def to_json(self) -> dict:
        return {
            "point": self.point.to_json(),
            "value": [float(self.value.real), float(self.value.imag)],
            "abs": float(abs(self.value)),
            "radius": float(self.radius),
        }


def critical_values(r: RationalMap, tol: float = 1e-12, precision_cap: int = 4096) -> list[CriticalValue]:
    """R(w) for the finite critical points w (roots of P'Q - PQ' that are not poles)."""
    if r.q[0] == 0:
        raise ValueError("Q(0) must be nonzero")
    num = r.derivative_numerator()
    if num.is_zero():
        raise ValueError("derivative numerator vanishes identically")
    # strip common roots with Q (multiple poles are not critical points)
    g = poly_gcd(num, r.q)
    while g.degree() > 0:
        num = _div_q(num, g)
        g = poly_gcd(num, r.q)
    if num.degree() < 1:
        return []
    out = []
    with mpmath.workprec(256):
        for e in isolate_roots(num, tol, precision_cap):
            pc, pr = disk_eval(r.p, e.center, e.radius, 256)
            qc, qr = disk_eval(r.q, e.center, e.radius, 256)
            if abs(qc) <= qr:
                raise ArithmeticError("critical point enclosure touches a pole")
            val = pc / qc
            # |p/q - pc/qc| <= (pr + |val| qr) / (|qc| - qr)
            rad = (pr + abs(val) * qr) / (abs(qc) - qr)
            out.append(CriticalValue(e, val, rad))
    return out


def _div_q(a: IntPoly, b: IntPoly) -> IntPoly:
    # a / b over Q with b | a, returned primitive
    from .poly import _qdiv, _to_primitive

    return _to_primitive(_qdiv([Fraction(c) for c in a.coeffs], [Fraction(c) for c in b.coeffs]))


@dataclass(frozen=True)
class SmaleReport:
    values: tuple[CriticalValue, ...]
    min_abs: Optional[float]
    bound: float
    slack: Optional[float]
    holds: Optional[bool]
    equality: bool
    vacuous: bool

    def to_json(self) -> dict:
        return {
            "critical_values": [v.to_json() for v in self.values],
            "min_abs": self.min_abs,
            "bound": self.bound,
            "slack": self.slack,
            "holds": self.holds,
            "equality": self.equality,
            "vacuous": self.vacuous,
        }


def check_smale_bound(r: RationalMap, tol: float = 1e-12, precision_cap: int = 4096) -> SmaleReport:
    """min |R(w)| over critical points <= exp(-log 4 / (deg P + deg Q - 1))."""
    bound = math.exp(-math.log(4) / (r.p.degree() + r.q.degree() - 1))
    vals = critical_values(r, tol, precision_cap)
    if not vals:
        return SmaleReport((), None, bound, None, None, False, True)
    with mpmath.workprec(256):
        m = min(abs(v.value) for v in vals)
        exact_bound = mpmath.exp(-mpmath.log(4) / (r.p.degree() + r.q.degree() - 1))
        slack = float(exact_bound - m)
    return SmaleReport(
        tuple(vals), float(m), bound, slack, float(m) <= bound + tol, abs(slack) <= 1e-12, False
    )


def diagonal_series(r: RationalMap, order: int) -> TruncatedSeries:
    """Diagonal a_{i,i} of 1/(X Q(Y) - P(Y)/Y), i <= order.

    Row i of the bivariate expansion is -Q(Y)^i / U(Y)^(i+1) with U = P/Y, a
    unit of Z[[Y]] since U(0) = 1.
    """
    u = IntPoly(r.p.coeffs[1:])
    if u[0] != 1:
        raise ValueError("P(Y)/Y must have constant term 1")
    n = order
    # V = 1/U in Z[[Y]]
    v = [0] * (n + 1)
    v[0] = 1
    for k in range(1, n + 1):
        v[k] = -sum(u[j] * v[k - j] for j in range(1, min(k, u.degree()) + 1))
    w = [sum(r.q[j] * v[k - j] for j in range(0, min(k, r.q.degree()) + 1)) for k in range(n + 1)]
    diag = []
    t = v[:]
    for i in range(n + 1):
        diag.append(-t[i])
        if i == n:
            break
        nt = [0] * (n + 1)
        for a, ta in enumerate(t):
            if ta:
                for b in range(n + 1 - a):
                    if w[b]:
                        nt[a + b] += ta * w[b]
        t = nt
    return TruncatedSeries.from_ints(diag)
