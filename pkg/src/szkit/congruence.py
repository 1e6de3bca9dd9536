"""Prime-power congruences between root-power transforms, and mod 4 square certificates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .poly import IntPoly, is_prime, root_power_transform

__all__ = [
    "SquareCertificate",
    "CongruenceWitness",
    "congruence_witness",
    "verify_mod4",
    "verify_prime_congruence",
    "certify_square_mod4",
    "v_adic_radius",
    "padic_valuation",
]


@dataclass(frozen=True)
class CongruenceWitness:
    """P_{p^2} - P_p = modulus * quotient, when the congruence holds."""

    poly: IntPoly
    prime: int
    low: IntPoly
    high: IntPoly
    difference: IntPoly
    modulus: int
    quotient: Optional[IntPoly]

    @property
    def holds(self) -> bool:
        return self.quotient is not None


def congruence_witness(p: IntPoly, prime: int) -> CongruenceWitness:
    if not p.is_monic():
        raise ValueError(f"congruence checks require a monic polynomial, got {p}")
    if not is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    low = root_power_transform(p, prime)
    high = root_power_transform(low, prime)
    diff = high - low
    m = prime * prime
    quotient = IntPoly(c // m for c in diff.coeffs) if all(c % m == 0 for c in diff.coeffs) else None
    return CongruenceWitness(p, prime, low, high, diff, m, quotient)


def verify_mod4(p: IntPoly) -> bool:
    """P_4 == P_2 mod 4. Always true for monic integer P; False means a bug upstream."""
    return congruence_witness(p, 2).holds


def verify_prime_congruence(p: IntPoly, prime: int) -> bool:
    """P_{p^2} == P_p mod p^2 coefficientwise."""
    return congruence_witness(p, prime).holds


@dataclass(frozen=True)
class SquareCertificate:
    """Q = U^2 + 4V with U(0) = 1 and V(0) = 0."""

    u: IntPoly
    v: IntPoly

    def reconstruct(self) -> IntPoly:
        return self.u * self.u + self.v * 4


def certify_square_mod4(q: IntPoly) -> Optional[SquareCertificate]:
    """Write Q = U^2 + 4V if Q mod 4 is a square in (Z/4)[X]; None otherwise.

    U^2 mod 4 only depends on U mod 2, and U^2 = U(X^2) mod 2, so the parity of
    u_k is forced to be q_{2k} mod 2. Odd u_k are then lifted to +1 or -1,
    whichever leaves the smaller residual in the X^k coefficient.
    """
    if q[0] != 1:
        raise ValueError(f"certify_square_mod4 requires Q(0) = 1, got {q[0]}")
    n = q.degree()
    if any(q[i] % 2 for i in range(1, n + 1, 2)):
        return None
    u = [1]
    for k in range(1, n // 2 + 1):
        if q[2 * k] % 2 == 0:
            u.append(0)
            continue
        conv = sum(u[i] * u[k - i] for i in range(1, k))
        r = q[k] - conv
        u.append(-1 if abs(r + 2) < abs(r - 2) else 1)
    upoly = IntPoly(u)
    rest = q - upoly * upoly
    if any(c % 4 for c in rest.coeffs):
        return None
    cert = SquareCertificate(upoly, IntPoly(c // 4 for c in rest.coeffs))
    assert cert.reconstruct() == q
    return cert


def padic_valuation(n: int, ell: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def _abs_ell(c: int, ell: int) -> Fraction:
    if c == 0:
        return Fraction(0)
    return Fraction(1, ell ** padic_valuation(c, ell))


def v_adic_radius(p: IntPoly, ell: int, e: int, prime: int) -> Fraction:
    """(|c_0|_ell / max_i |c_i|_ell) ** (prime ** (e + 1)), with |ell|_ell = 1/ell."""
    if p[0] == 0:
        raise ValueError("v_adic_radius requires P(0) != 0")
    if e not in (1, 2):
        raise ValueError("e must be 1 or 2")
    if not is_prime(ell) or not is_prime(prime):
        raise ValueError("ell and p must be prime")
    top = max(_abs_ell(c, ell) for c in p.coeffs)
    return (_abs_ell(p[0], ell) / top) ** (prime ** (e + 1))
