"""Monomial bases for Gram matrix decompositions."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Sequence

from .poly import DegreeVector, Polynomial, monomial_key

__all__ = [
    "MonomialBasis",
    "count_monomials",
    "full_basis",
    "heuristic_init",
    "hull_bounded_basis",
]


@dataclass(frozen=True)
class MonomialBasis:
    """Distinct degree vectors kept in strictly increasing graded-lex order."""

    nvars: int
    entries: tuple[DegreeVector, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        entries = tuple(tuple(int(a) for a in e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        for e in entries:
            if len(e) != self.nvars:
                raise ValueError(f"degree vector {e} does not have length {self.nvars}")
            if any(a < 0 for a in e):
                raise ValueError(f"negative exponent in {e}")
        for a, b in zip(entries, entries[1:]):
            if not monomial_key(a) < monomial_key(b):
                raise ValueError(f"basis not strictly increasing at {a}, {b}")
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(entries)})

    @classmethod
    def from_monomials(cls, nvars: int, monomials: Iterable[Sequence[int]]) -> MonomialBasis:
        """Build a basis from any iterable, sorting and removing duplicates."""
        unique = {tuple(m) for m in monomials}
        return cls(nvars, tuple(sorted(unique, key=monomial_key)))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[DegreeVector]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __contains__(self, alpha) -> bool:
        return tuple(alpha) in self._index

    def index(self, alpha: Sequence[int]) -> int:
        return self._index[tuple(alpha)]

    def without(self, alphas: Iterable[Sequence[int]]) -> MonomialBasis:
        drop = {tuple(a) for a in alphas}
        return MonomialBasis(self.nvars, tuple(e for e in self.entries if e not in drop))

    def issubset(self, other: MonomialBasis) -> bool:
        return all(e in other for e in self.entries)

    def pairwise_sums(self) -> list[DegreeVector]:
        """The distinct sums ``a + b`` over the basis, in graded-lex order."""
        sums = {
            tuple(x + y for x, y in zip(a, b))
            for i, a in enumerate(self.entries)
            for b in self.entries[i:]
        }
        return sorted(sums, key=monomial_key)


def count_monomials(n: int, d: int) -> int:
    """Number of monomials in ``n`` variables of degree at most ``d``."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return comb(n + d, d)


def _exponents(n: int, d: int) -> Iterator[DegreeVector]:
    if n == 1:
        for k in range(d + 1):
            yield (k,)
        return
    for k in range(d + 1):
        for rest in _exponents(n - 1, d - k):
            yield (k,) + rest


def full_basis(n: int, d: int) -> MonomialBasis:
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return MonomialBasis(n, tuple(sorted(_exponents(n, d), key=monomial_key)))


def hull_bounded_basis(nvars: int, points: Iterable[Sequence[int]]) -> MonomialBasis:
    """All integer ``a`` passing two linear outer bounds on half the hull of ``points``.

    The bounds are: total degree in ``[ceil(min|g|/2), floor(max|g|/2)]`` and
    ``a_i <= floor(max g_i / 2)`` per coordinate.  Linear functionals attain their
    extremes over a convex hull at generators, so every integer point of
    ``0.5 * ch(points)`` passes.
    """
    points = [tuple(p) for p in points]
    if not points:
        return MonomialBasis(nvars, ())
    degs = [sum(p) for p in points]
    lo = -(-min(degs) // 2)
    hi = max(degs) // 2
    caps = [max(p[i] for p in points) // 2 for i in range(nvars)]
    found = [
        a
        for a in itertools.product(*(range(c + 1) for c in caps))
        if lo <= sum(a) <= hi
    ]
    return MonomialBasis.from_monomials(nvars, found)


def heuristic_init(p: Polynomial) -> MonomialBasis:
    """Cheap initial basis containing every lattice point of half the Newton polytope."""
    if p.is_zero():
        raise ValueError("heuristic_init needs a nonzero polynomial")
    if p.degree % 2:
        raise ValueError(f"odd degree {p.degree}: polynomial cannot be SOS")
    return hull_bounded_basis(p.nvars, p.terms)
