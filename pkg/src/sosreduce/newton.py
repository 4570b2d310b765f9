"""Newton polytope pruning and the even-vertex screen.

Membership of ``a`` in half the Newton polytope is decided as ``2a in ch(support)``
with one exact LP per candidate; no facet description is ever built.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .basis import MonomialBasis
from .poly import DegreeVector, Polynomial
from .ratlp import LpFeasibilityProblem, lp_feasible

__all__ = [
    "PointSet",
    "ScreenReason",
    "ScreenResult",
    "Verdict",
    "caratheodory_membership",
    "even_vertex_screen",
    "hull_membership",
    "newton_reduce",
    "polytope_vertices",
]


@dataclass(frozen=True)
class PointSet:
    nvars: int
    points: tuple[DegreeVector, ...]

    def __post_init__(self):
        seen = {}
        for p in self.points:
            p = tuple(int(v) for v in p)
            if len(p) != self.nvars:
                raise ValueError(f"point {p} does not have length {self.nvars}")
            seen.setdefault(p, None)
        object.__setattr__(self, "points", tuple(seen))

    @classmethod
    def of(cls, points: Iterable[Sequence[int]]) -> PointSet:
        points = [tuple(p) for p in points]
        if not points:
            raise ValueError("empty point set")
        return cls(len(points[0]), tuple(points))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return tuple(p) in self.points


def _as_points(generators) -> list[tuple[int, ...]]:
    pts = list(generators.points if isinstance(generators, PointSet) else generators)
    return [tuple(p) for p in pts]


def hull_membership(point: Sequence[int], generators) -> bool:
    """True iff ``point`` lies in the convex hull of ``generators`` (exact LP)."""
    gens = _as_points(generators)
    if not gens:
        raise ValueError("empty generator set")
    n = len(point)
    if any(len(g) != n for g in gens):
        raise ValueError("dimension mismatch between point and generators")
    rows = [({j: Fraction(g[c]) for j, g in enumerate(gens) if g[c]}, Fraction(point[c]))
            for c in range(n)]
    rows.append(({j: Fraction(1) for j in range(len(gens))}, Fraction(1)))
    return lp_feasible(LpFeasibilityProblem(len(gens), tuple(rows))).feasible


def _solve_unique(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Solve ``A x = b`` exactly; None unless consistent with full column rank."""
    rows, cols = len(A), len(A[0])
    M = [list(A[r]) + [b[r]] for r in range(rows)]
    r = 0
    pivots = []
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            return None
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * bb for a, bb in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(M[i][cols] != 0 for i in range(r, rows)):
        return None
    return [M[i][cols] for i in range(cols)]


def caratheodory_membership(point: Sequence[int], generators) -> bool:
    """Brute-force hull membership by Caratheodory's theorem.

    Tries every affinely independent subset of at most ``n + 1`` generators and
    accepts when the barycentric coordinates are all nonnegative.  Exponential;
    meant as an independent oracle for small instances.
    """
    gens = _as_points(generators)
    if not gens:
        raise ValueError("empty generator set")
    n = len(point)
    target = [Fraction(v) for v in point] + [Fraction(1)]
    for size in range(1, min(n + 1, len(gens)) + 1):
        for subset in itertools.combinations(gens, size):
            A = [[Fraction(g[c]) for g in subset] for c in range(n)]
            A.append([Fraction(1)] * size)
            lam = _solve_unique(A, target)
            if lam is not None and all(v >= 0 for v in lam):
                return True
    return False


def _check_reducible(p: Polynomial) -> None:
    if p.is_zero():
        raise ValueError("zero polynomial has no Newton polytope")
    if p.degree % 2:
        raise ValueError(f"odd degree {p.degree}: polynomial cannot be SOS")


def newton_reduce(p: Polynomial, M0: MonomialBasis) -> MonomialBasis:
    """Keep the entries ``a`` of ``M0`` with ``2a`` in the Newton polytope of ``p``."""
    _check_reducible(p)
    if M0.nvars != p.nvars:
        raise ValueError(f"polynomial has {p.nvars} variables, basis has {M0.nvars}")
    gens = list(p.support)
    degs = [sum(g) for g in gens]
    lo_deg, hi_deg = min(degs), max(degs)
    lo = [min(g[i] for g in gens) for i in range(p.nvars)]
    hi = [max(g[i] for g in gens) for i in range(p.nvars)]
    kept = []
    for a in M0:
        doubled = tuple(2 * v for v in a)
        # bounding-box and degree-band rejection before paying for an LP
        if not lo_deg <= sum(doubled) <= hi_deg:
            continue
        if any(not l <= v <= h for v, l, h in zip(doubled, lo, hi)):
            continue
        if hull_membership(doubled, gens):
            kept.append(a)
    return MonomialBasis(M0.nvars, tuple(kept))


def polytope_vertices(points) -> PointSet:
    """Points not in the hull of the others (the vertex set), in input order."""
    pts = _as_points(points)
    if not pts:
        raise ValueError("empty point set")
    pts = list(dict.fromkeys(pts))
    if len(pts) == 1:
        return PointSet(len(pts[0]), tuple(pts))
    verts = [
        q for k, q in enumerate(pts)
        if not hull_membership(q, pts[:k] + pts[k + 1:])
    ]
    return PointSet(len(pts[0]), tuple(verts))


class Verdict(enum.Enum):
    PASS = "Pass"
    NOT_SOS = "NotSos"


class ScreenReason(enum.Enum):
    ODD_DEGREE = "OddDegree"
    ODD_VERTEX = "OddVertex"


@dataclass(frozen=True)
class ScreenResult:
    verdict: Verdict
    reason: ScreenReason | None = None
    vertex: DegreeVector | None = None

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def __str__(self):
        if self.passed:
            return "Pass"
        if self.reason is ScreenReason.ODD_VERTEX:
            return f"NotSos(OddVertex {self.vertex})"
        return f"NotSos({self.reason.value})"


def even_vertex_screen(p: Polynomial) -> ScreenResult:
    """Necessary condition for SOS: even degree and even Newton polytope vertices."""
    if p.is_zero():
        raise ValueError("zero polynomial has no Newton polytope")
    if p.degree % 2:
        return ScreenResult(Verdict.NOT_SOS, ScreenReason.ODD_DEGREE)
    for v in polytope_vertices(p.support):
        if any(c % 2 for c in v):
            return ScreenResult(Verdict.NOT_SOS, ScreenReason.ODD_VERTEX, v)
    return ScreenResult(Verdict.PASS)
