import math

import pytest
from hypothesis import given, settings

from conftest import monic_polys
from szkit.pipelines import (
    PreconditionError,
    RationalMap,
    UndecidedError,
    check_atoral_bound,
    check_holonomic_bound,
    check_smale_bound,
    check_sz_bound,
    critical_values,
    diagonal_series,
    matveev_bound,
    matveev_crossover,
    matveev_table,
    scan,
)
from szkit.poly import IntPoly, cyclotomic, is_cyclotomic_product, parse_poly as P
from szkit.rationality import RATIONAL_WINDOW
from szkit.sampling import atoral_family
from szkit.series import OdeOperator, TruncatedSeries, growth_radius, quadratic_branch_ode, sqrt_series

LEHMER = P("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1")


class TestSzCheck:
    def test_examples(self):
        assert check_sz_bound(P("x^2-x-1")).classification == "bound-satisfied"
        assert check_sz_bound(cyclotomic(12)).classification == "cyclotomic-product"
        tr = check_sz_bound(LEHMER)
        assert tr.classification == "bound-satisfied"
        assert tr.house.lo >= 2 ** (1 / 40) and 1.17628 in [round(tr.house.lo, 5)]

    def test_trace_contents(self):
        tr = check_sz_bound(P("x^2-x-1"))
        assert tr.p2 == P("x^2-3x+1") and tr.p4 == P("x^2-7x+1")
        assert tr.series_integral and tr.capacity_lt_one == (tr.dubinin < 1)
        assert len(tr.hedgehog.vertices) == 4

    @given(monic_polys(6, 4, nonzero_constant=True))
    @settings(max_examples=30)
    def test_hedgehog_invariant(self, p):
        try:
            tr = check_sz_bound(p)
        except UndecidedError:
            return
        assert tr.classification != "fault"
        m = tr.hedgehog.max_modulus()
        assert tr.house.lo**4 - 1e-9 <= m <= tr.house.hi**4 + 1e-9
        if tr.classification == "cyclotomic-product":
            assert tr.capacity_lt_one or tr.dubinin == pytest.approx(4 ** (-1 / len(tr.hedgehog.vertices)) * m)

    def test_cyclotomic_trace_is_rational(self):
        for n in (3, 5, 9, 15):
            tr = check_sz_bound(cyclotomic(n))
            assert tr.capacity_lt_one and tr.hankel.verdict == RATIONAL_WINDOW

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            check_sz_bound(P("2x^2+1"))
        with pytest.raises(PreconditionError):
            check_sz_bound(P("x^2+x"))

    def test_undecided_when_interval_straddles(self, monkeypatch):
        import szkit.pipelines as pl
        from szkit.geometry import Interval

        thr = pl.sz_threshold(8)
        monkeypatch.setattr(pl, "_house_from", lambda encs: Interval(thr - 1e-3, thr + 1e-3))
        with pytest.raises(UndecidedError) as e:
            check_sz_bound(P("x^8-x-1"))
        assert e.value.threshold == thr


class TestAtoral:
    def test_examples(self):
        rep = check_atoral_bound(P("x^2-3x+1"))
        assert rep.satisfied and abs(rep.house.lo - (3 + 5**0.5) / 2) < 1e-12
        with pytest.raises(PreconditionError) as e:
            check_atoral_bound(cyclotomic(5))
        assert e.value.reason == "roots-on-unit-circle"

    def test_listed_example_has_unimodular_roots(self):
        # t = z + 1/z solves t^2 - 3t + 1 = 0 and t = 0.38 lies in (-2, 2)
        with pytest.raises(PreconditionError) as e:
            check_atoral_bound(P("x^4-3x^3+3x^2-3x+1"))
        assert e.value.reason == "roots-on-unit-circle"

    def test_named_preconditions(self):
        for poly, reason in [("x^3-3x^2+1", "not-reciprocal"), ("x^3-3x^2-3x+1", "odd-degree"), ("2x^2-5x+2", "not-monic")]:
            with pytest.raises(PreconditionError) as e:
                check_atoral_bound(P(poly))
            assert e.value.reason == reason

    def test_family(self):
        for p in atoral_family(20, seed=11):
            rep = check_atoral_bound(p)
            assert rep.satisfied and rep.spike_count <= p.degree()


class TestMatveev:
    def test_values(self):
        assert matveev_bound(59) == pytest.approx(0.0029168, abs=1e-7)
        assert matveev_bound(12) == pytest.approx(3 * math.log(6) / 144) == pytest.approx(0.0373283, abs=1e-7)
        with pytest.raises(ValueError):
            matveev_bound(11)

    def test_crossover(self):
        assert matveev_crossover() == 59
        rows = {r["n"]: r["ours_stronger"] for r in matveev_table()}
        assert not rows[58] and all(rows[n] for n in range(59, 63))


class TestScan:
    def test_small(self):
        rep = scan(2, 5)
        assert not rep.counterexamples and not rep.faults and rep.complete
        assert rep.min_house_witness == P("x^2-x-1")

    def test_brute_force_minimum(self):
        # independent oracle: numpy roots over every polynomial of the family
        import itertools

        import numpy as np

        rep = scan(3, 2)
        best = math.inf
        for c1, c2 in itertools.product(range(-2, 3), repeat=2):
            for c0 in (1, -1):
                p = IntPoly([c0, c2, c1, 1])
                if is_cyclotomic_product(p):
                    continue
                best = min(best, max(abs(np.roots(p.descending()))))
        assert abs(rep.min_house.lo - best) < 1e-9

    def test_degree_four(self):
        rep = scan(4, 2)
        assert not rep.counterexamples and not rep.faults

    def test_budget_and_resume(self):
        full = scan(3, 2)
        part = scan(3, 2, budget=3 * 30)
        assert not part.complete and part.resume.startswith("3:2:")
        rest = scan(3, 2, resume=part.resume)
        assert rest.complete
        assert part.checked + rest.checked == full.checked
        assert part.cyclotomic + rest.cyclotomic == full.cyclotomic

    def test_parallel_matches_serial(self):
        assert scan(3, 3, jobs=2, chunk=32).to_json() == scan(3, 3).to_json()

    def test_rejections(self):
        with pytest.raises(ValueError):
            scan(1, 3)
        with pytest.raises(ValueError):
            scan(3, 2, resume="4:2:0")


class TestHolonomic:
    def test_catalan_radicand(self):
        f = sqrt_series(P("1-4x"), 500)
        rep = check_holonomic_bound(f, OdeOperator(P("1-4x"), (IntPoly([2]),)))
        assert rep.singularities == 1 and rep.passed
        assert abs(rep.height_estimate - math.log(4)) / math.log(4) < 0.05

    def test_geometric_special_form(self):
        f = TruncatedSeries.from_ints([1] * 64)
        rep = check_holonomic_bound(f, OdeOperator(P("x-1"), (IntPoly([1]),)))
        assert rep.special_form == {"j": 1, "m": 1, "numerator": ["-1"], "scale": "1"}
        assert rep.passed is None

    def test_motzkin(self):
        order = 402
        num = TruncatedSeries.from_poly(P("1-x"), order) - sqrt_series(P("1-2x-3x^2"), order)
        f = TruncatedSeries(tuple(c / 2 for c in num.coeffs[2:]))
        op = quadratic_branch_ode(P("1-x"), P("2x^2"), P("1-2x-3x^2"))
        rep = check_holonomic_bound(f, op)
        # leading coefficient x(1 - 2x - 3x^2) after homogenizing: three distinct roots
        assert rep.singularities == 3
        assert rep.passed and abs(rep.height_estimate - math.log(3)) < 0.05

    def test_not_annihilated(self):
        with pytest.raises(PreconditionError):
            check_holonomic_bound(TruncatedSeries.from_ints([1, 2, 3] * 10), OdeOperator(P("1-x"), (IntPoly([-1]),)))


class TestCriticalValues:
    def test_examples(self):
        (v,) = critical_values(RationalMap(P("x+x^2"), P("1")))
        assert abs(complex(v.value) + 0.25) < 1e-15 and abs(complex(v.point.center) + 0.5) < 1e-15
        vals = critical_values(RationalMap(P("x+x^3"), P("1")))
        assert len(vals) == 2
        for v in vals:
            assert abs(abs(complex(v.value)) - 2 / (3 * math.sqrt(3))) < 1e-12
        assert critical_values(RationalMap(P("x"), P("1-x"))) == []

    def test_rational_map_validation(self):
        for p, q in [("x^2", "1"), ("x+1", "1"), ("2x", "1"), ("x+x^2", "x+1")]:
            with pytest.raises(ValueError):
                RationalMap(P(p), P(q))

    def test_poles_excluded(self):
        # R = x / (1-x)^2 has R' numerator (1+x)(1-x); the double pole at 1 is not critical
        vals = critical_values(RationalMap(P("x"), P("1-x") ** 2))
        assert [round(complex(v.point.center).real, 12) for v in vals] == [-1.0]

    def test_smale(self):
        for p in ("x+x^2", "x-x^2"):
            rep = check_smale_bound(RationalMap(P(p), P("1")))
            assert rep.equality and abs(rep.slack) <= 1e-12 and rep.holds
        rep = check_smale_bound(RationalMap(P("x+x^3"), P("1")))
        assert rep.holds and not rep.equality and rep.bound == pytest.approx(0.5)
        assert check_smale_bound(RationalMap(P("x"), P("1-x"))).vacuous

    def test_diagonal(self):
        f = diagonal_series(RationalMap(P("x+x^2"), P("1")), 32)
        assert f.as_ints() == [-((-1) ** i) * math.comb(2 * i, i) for i in range(33)]
        assert diagonal_series(RationalMap(P("x"), P("1")), 5).as_ints() == [-1, 0, 0, 0, 0, 0]
        assert diagonal_series(RationalMap(P("x+x^3"), P("1")), 64).is_integral()

    def test_diagonal_brute_force(self):
        # a_ii of -sum_i X^i Q^i / U^(i+1), expanded with plain truncated series
        r = RationalMap(P("x+2x^2-x^3"), P("1+x"))
        n = 12
        u = TruncatedSeries.from_poly(IntPoly(r.p.coeffs[1:]), n)
        v = u.inverse()
        q = TruncatedSeries.from_poly(r.q, n)
        expected = [-((q**i) * (v ** (i + 1)))[i] for i in range(n + 1)]
        assert diagonal_series(r, n).coeffs == tuple(expected)

    @pytest.mark.parametrize("p,target", [("x+x^2", 0.25), ("x+x^3", 2 / (3 * math.sqrt(3)))])
    def test_branch_radius_matches_critical_value(self, p, target):
        f = diagonal_series(RationalMap(P(p), P("1")), 200)
        assert abs(growth_radius(f) - target) / target < 0.05
