"""Coefficient-matching systems for ``p = z^T Q z`` and Gram matrix utilities.

Gram entries are indexed by unordered pairs ``(i, j)`` with ``i <= j``; an
off-diagonal pair carries multiplicity 2 because ``Q[i, j]`` and ``Q[j, i]``
are the same variable.  Basis indices are 0-based positions in the basis.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .basis import MonomialBasis
from .poly import DegreeVector, Polynomial, monomial_key

__all__ = [
    "Equation",
    "GramConstraintSystem",
    "GramMatrix",
    "InfeasibilityCertificate",
    "build_gram_system",
    "deactivate",
    "evaluate_gram",
    "is_psd",
]


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """An equation that no PSD Gram matrix can satisfy.

    ``reason`` is ``"empty-equation"`` (no variables left, nonzero rhs),
    ``"negative-diagonal"`` (a diagonal entry forced below zero),
    ``"sign-conflict"`` (sign information contradicts the equation),
    ``"odd-degree"`` or ``"odd-vertex"`` (Newton polytope vertex with an odd entry).
    """

    reason: str
    product_degree: DegreeVector | None = None
    rhs: Fraction = Fraction(0)
    constraint: int = 0
    detail: str = ""

    def __str__(self):
        where = "" if self.product_degree is None else f" at x^{list(self.product_degree)}"
        text = f"{self.reason}{where}"
        if self.reason == "empty-equation":
            text += f": 0 = {self.rhs}"
        elif self.reason == "negative-diagonal":
            text += f": diagonal entry forced to {self.rhs}"
        if self.detail:
            text += f" ({self.detail})"
        return text


@dataclass(frozen=True)
class Equation:
    """``sum(mult * Q[i, j] for i, j, mult in entries) == rhs`` for one product degree."""

    product_degree: DegreeVector
    entries: tuple[tuple[int, int, int], ...]
    rhs: Fraction

    def forced_diagonal(self) -> int | None:
        """Index ``i`` if the equation reads ``Q[i, i] = rhs``, else None."""
        if len(self.entries) == 1:
            i, j, _ = self.entries[0]
            if i == j:
                return i
        return None


@dataclass(frozen=True)
class GramConstraintSystem:
    polynomial: Polynomial
    basis: MonomialBasis
    active: tuple[bool, ...]
    equations: tuple[Equation, ...]
    outside: tuple[DegreeVector, ...] = ()
    _by_degree: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_by_degree", {eq.product_degree: eq for eq in self.equations}
        )

    @property
    def rhs_support(self) -> frozenset[DegreeVector]:
        return frozenset(eq.product_degree for eq in self.equations if eq.rhs)

    def equation(self, alpha: Sequence[int]) -> Equation:
        return self._by_degree[tuple(alpha)]

    def active_indices(self) -> list[int]:
        return [i for i, a in enumerate(self.active) if a]

    def active_basis(self) -> MonomialBasis:
        return MonomialBasis(
            self.basis.nvars, tuple(self.basis[i] for i in self.active_indices())
        )

    def deactivate(self, *indices: int) -> GramConstraintSystem:
        """Drop basis entries, removing every pair that touches them."""
        drop = set()
        for index in indices:
            if not 0 <= index < len(self.basis):
                raise IndexError(f"basis index {index} out of range")
            if not self.active[index] or index in drop:
                raise ValueError(f"basis index {index} is already inactive")
            drop.add(index)
        active = tuple(a and i not in drop for i, a in enumerate(self.active))
        equations = tuple(
            replace(
                eq,
                entries=tuple(e for e in eq.entries if e[0] not in drop and e[1] not in drop),
            )
            for eq in self.equations
        )
        return replace(self, active=active, equations=equations)

    def satisfied_by(self, Q: GramMatrix) -> bool:
        if Q.dim != len(self.basis):
            raise ValueError(f"Gram matrix is {Q.dim}x{Q.dim}, basis has {len(self.basis)}")
        return all(
            sum((m * Q[i, j] for i, j, m in eq.entries), Fraction(0)) == eq.rhs
            for eq in self.equations
        )


def build_gram_system(p: Polynomial, M: MonomialBasis) -> GramConstraintSystem:
    """Equate coefficients of ``p`` and ``z^T Q z`` over the basis ``M``.

    Support points of ``p`` outside ``M + M`` get an equation with no entries
    (listed in ``outside``); such a system is infeasible.
    """
    if p.nvars != M.nvars:
        raise ValueError(f"polynomial has {p.nvars} variables, basis has {M.nvars}")
    pairs: dict[DegreeVector, list] = defaultdict(list)
    for i, a in enumerate(M):
        for j in range(i, len(M)):
            alpha = tuple(x + y for x, y in zip(a, M[j]))
            pairs[alpha].append((i, j, 1 if i == j else 2))
    outside = tuple(a for a in p.support if a not in pairs)
    for a in outside:
        pairs[a] = []
    equations = tuple(
        Equation(alpha, tuple(pairs[alpha]), p.coefficient(alpha))
        for alpha in sorted(pairs, key=monomial_key)
    )
    return GramConstraintSystem(p, M, (True,) * len(M), equations, outside)


def deactivate(csys: GramConstraintSystem, index: int) -> GramConstraintSystem:
    return csys.deactivate(index)


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric matrix of exact rationals."""

    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.values)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"Gram matrix not symmetric at ({i}, {j})")
        object.__setattr__(self, "values", rows)

    @classmethod
    def zeros(cls, n: int) -> GramMatrix:
        return cls(tuple((Fraction(0),) * n for _ in range(n)))

    @classmethod
    def from_factor(cls, vectors: Iterable[Sequence]) -> GramMatrix:
        """``sum(a a^T)`` over the given coefficient vectors."""
        vectors = [tuple(Fraction(v) for v in a) for a in vectors]
        if not vectors:
            raise ValueError("need at least one vector")
        n = len(vectors[0])
        return cls(
            tuple(
                tuple(sum((a[i] * a[j] for a in vectors), Fraction(0)) for j in range(n))
                for i in range(n)
            )
        )

    @property
    def dim(self) -> int:
        return len(self.values)

    def __getitem__(self, ij):
        i, j = ij
        return self.values[i][j]


def evaluate_gram(M: MonomialBasis, Q: GramMatrix) -> Polynomial:
    """Expand ``z^T Q z`` exactly."""
    if Q.dim != len(M):
        raise ValueError(f"Gram matrix is {Q.dim}x{Q.dim}, basis has {len(M)}")
    terms: dict[DegreeVector, Fraction] = {}
    for i, a in enumerate(M):
        for j, b in enumerate(M):
            if Q[i, j]:
                alpha = tuple(x + y for x, y in zip(a, b))
                terms[alpha] = terms.get(alpha, Fraction(0)) + Q[i, j]
    return Polynomial(M.nvars, terms)


def is_psd(Q: GramMatrix | Sequence[Sequence]) -> bool:
    """Exact PSD test by diagonally pivoted LDL^T over the rationals."""
    if not isinstance(Q, GramMatrix):
        Q = GramMatrix(tuple(tuple(r) for r in Q))
    A = [list(r) for r in Q.values]
    remaining = list(range(Q.dim))
    while remaining:
        k = max(remaining, key=lambda i: A[i][i])
        pivot = A[k][k]
        if pivot < 0:
            return False
        if pivot == 0:
            # all remaining diagonals are zero: PSD only if the block vanishes
            return all(A[i][j] == 0 for i in remaining for j in remaining)
        remaining.remove(k)
        for i in remaining:
            if A[i][k]:
                f = A[i][k] / pivot
                for j in remaining:
                    A[i][j] -= f * A[k][j]
    return True
