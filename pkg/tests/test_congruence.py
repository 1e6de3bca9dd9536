from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import monic_polys
from oracles import trace_power_sums
from szkit.congruence import (
    certify_square_mod4,
    congruence_witness,
    padic_valuation,
    v_adic_radius,
    verify_mod4,
    verify_prime_congruence,
)
from szkit.poly import IntPoly, parse_poly as P
from szkit.series import sqrt_series


def test_mod4_difference():
    w = congruence_witness(P("x^2-x-1"), 2)
    assert w.difference == P("-4x") and w.quotient == P("-x")
    assert verify_mod4(P("x^2-x-1")) and verify_mod4(P("x-1"))


def test_prime_three_witness():
    # Lucas numbers: L_9 - L_3 = 76 - 4 = 72
    w = congruence_witness(P("x^2-x-1"), 3)
    assert w.difference == P("-72x") and w.holds
    assert verify_prime_congruence(P("x-1"), 5)


def test_power_sum_oracle_for_congruence():
    # s_{p^2} == s_p mod p^2 for the companion-trace power sums
    p = P("x^3-2x^2+5x-3")
    s = trace_power_sums(p.descending(), 25)
    for q in (2, 3, 5):
        assert (s[q * q - 1] - s[q - 1]) % (q * q) == 0


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        congruence_witness(P("2x+1"), 2)
    with pytest.raises(ValueError):
        congruence_witness(P("x+1"), 4)


@given(monic_polys(8, 20), st.sampled_from([2, 3, 5]))
def test_congruence_property(p, prime):
    assert verify_prime_congruence(p, prime)


@pytest.mark.parametrize(
    "radicand,u,v",
    [("1-6x+x^2", "1-x", "-x"), ("1-2x-3x^2", "1-x", "-x^2"), ("1-4x", "1", "-x")],
)
def test_example_certificates(radicand, u, v):
    cert = certify_square_mod4(P(radicand))
    assert cert.u == P(u) and cert.v == P(v)


def test_no_certificate():
    assert certify_square_mod4(P("1+x")) is None
    assert certify_square_mod4(P("1+2x")) is None
    with pytest.raises(ValueError):
        certify_square_mod4(P("3+x"))


@given(st.lists(st.integers(-12, 12), min_size=1, max_size=7))
def test_certificate_iff_integral_sqrt(tail):
    q = IntPoly([1] + tail)
    cert = certify_square_mod4(q)
    integral = sqrt_series(q, 64).is_integral()
    assert (cert is not None) == integral
    if cert is not None:
        assert cert.reconstruct() == q and cert.u[0] == 1 and cert.v[0] == 0


@given(st.lists(st.integers(-5, 5), min_size=0, max_size=4), st.lists(st.integers(-5, 5), max_size=6))
def test_constructed_squares_certify(u_tail, v_tail):
    u = IntPoly([1] + u_tail)
    v = IntPoly([0] + v_tail)
    assert certify_square_mod4(u * u + v * 4) is not None


def test_v_adic_radius_examples():
    assert v_adic_radius(P("x+3"), 3, 1, 2) == Fraction(1, 81)
    assert v_adic_radius(P("x^2-x-1"), 5, 1, 2) == 1
    assert v_adic_radius(P("2x+1"), 2, 2, 2) == 1
    with pytest.raises(ValueError):
        v_adic_radius(P("x"), 3, 1, 2)
    with pytest.raises(ValueError):
        v_adic_radius(P("x+1"), 3, 3, 2)


def test_valuation():
    assert padic_valuation(72, 3) == 2 and padic_valuation(-8, 2) == 3
    with pytest.raises(ValueError):
        padic_valuation(0, 2)
