"""Seeded generators for random test families."""

from __future__ import annotations

import random
from typing import Iterator, Optional

from .geometry import unit_circle_roots
from .poly import IntPoly


def random_monic(rng: random.Random, max_degree: int, bound: int, min_degree: int = 1) -> IntPoly:
    n = rng.randint(min_degree, max_degree)
    return IntPoly([rng.randint(-bound, bound) for _ in range(n)] + [1])


def random_reciprocal(rng: random.Random, half_degree: int, bound: int) -> IntPoly:
    """Monic palindromic polynomial of degree 2 * half_degree."""
    n = 2 * half_degree
    c = [0] * (n + 1)
    c[0] = c[n] = 1
    for i in range(1, half_degree + 1):
        c[i] = c[n - i] = rng.randint(-bound, bound)
    return IntPoly(c)


def atoral_family(
    count: int, seed: int = 0, max_half_degree: int = 5, bound: int = 6, max_tries: Optional[int] = None
) -> Iterator[IntPoly]:
    """Distinct reciprocal polynomials without unimodular roots."""
    rng = random.Random(seed)
    seen: set[IntPoly] = set()
    tries = 0
    limit = max_tries if max_tries is not None else 100 * count
    while len(seen) < count:
        tries += 1
        if tries > limit:
            raise RuntimeError(f"only found {len(seen)} atoral polynomials in {limit} draws")
        p = random_reciprocal(rng, rng.randint(1, max_half_degree), bound)
        if p in seen or unit_circle_roots(p):
            continue
        seen.add(p)
        yield p
