"""Seeded random polynomials for benchmarks and property checks."""
from __future__ import annotations

import random
from fractions import Fraction

from .basis import full_basis
from .poly import Polynomial

__all__ = ["random_coefficient", "random_polynomial", "random_sos"]


def random_coefficient(rng: random.Random, bound: int = 9) -> int:
    """Uniform integer in ``[-bound, bound]`` without zero."""
    c = rng.randint(1, bound)
    return c if rng.random() < 0.5 else -c


def random_polynomial(rng: random.Random, nvars: int, degree: int, nterms: int) -> Polynomial:
    """Random polynomial of exactly ``degree`` (even) with ``nterms`` terms.

    One term is a pure power ``x_i^degree``, which is an even vertex of the
    Newton polytope; the remaining exponents are drawn uniformly from all
    vectors of total degree at most ``degree``.
    """
    if degree < 0 or degree % 2:
        raise ValueError("degree must be even and nonnegative")
    candidates = list(full_basis(nvars, degree))
    nterms = max(1, min(nterms, len(candidates)))
    lead = [0] * nvars
    lead[rng.randrange(nvars)] = degree
    lead = tuple(lead)
    others = [a for a in candidates if a != lead]
    chosen = [lead] + rng.sample(others, nterms - 1)
    return Polynomial(nvars, {a: random_coefficient(rng) for a in chosen})


def random_sos(
    rng: random.Random, nvars: int, max_degree: int, nsquares: int, nterms: int = 4
) -> tuple[Polynomial, list[Polynomial]]:
    """Return ``(sum f_i^2, [f_i])`` for random sparse ``f_i`` of degree <= max_degree."""
    candidates = list(full_basis(nvars, max_degree))
    fs = []
    for _ in range(nsquares):
        k = rng.randint(1, min(nterms, len(candidates)))
        support = rng.sample(candidates, k)
        fs.append(Polynomial(nvars, {a: Fraction(random_coefficient(rng)) for a in support}))
    total = Polynomial(nvars)
    for f in fs:
        total = total + f * f
    return total, fs
