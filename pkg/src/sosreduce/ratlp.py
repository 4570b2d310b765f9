"""Exact feasibility of ``{x >= 0 : A x = b}`` by phase-1 simplex.

Dense rational tableau, one artificial variable per row, Bland's rule for
both the entering column and the ratio-test tie break.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

__all__ = ["LpFeasibilityProblem", "LpOutcome", "LpStatus", "check_witness", "lp_feasible"]


class LpStatus(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LpFeasibilityProblem:
    ncols: int
    rows: tuple[tuple[Mapping[int, Fraction], Fraction], ...]

    def __post_init__(self):
        rows = tuple(
            ({int(c): Fraction(v) for c, v in coeffs.items()}, Fraction(rhs))
            for coeffs, rhs in self.rows
        )
        for coeffs, _ in rows:
            for c in coeffs:
                if not 0 <= c < self.ncols:
                    raise ValueError(f"column {c} out of range for {self.ncols} columns")
        object.__setattr__(self, "rows", rows)


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    witness: tuple[Fraction, ...] | None
    iterations: int

    @property
    def feasible(self) -> bool:
        return self.status is LpStatus.FEASIBLE


def check_witness(prob: LpFeasibilityProblem, x: Sequence[Fraction]) -> bool:
    if len(x) != prob.ncols or any(v < 0 for v in x):
        return False
    return all(
        sum((v * x[c] for c, v in coeffs.items()), Fraction(0)) == rhs
        for coeffs, rhs in prob.rows
    )


def lp_feasible(prob: LpFeasibilityProblem) -> LpOutcome:
    n, m = prob.ncols, len(prob.rows)
    width = n + m
    T: list[list[Fraction]] = []
    for r, (coeffs, rhs) in enumerate(prob.rows):
        s = -1 if rhs < 0 else 1
        row = [Fraction(0)] * (width + 1)
        for c, v in coeffs.items():
            row[c] = s * v
        row[n + r] = Fraction(1)
        row[width] = s * rhs
        T.append(row)
    basis = [n + r for r in range(m)]

    # reduced costs of "minimize sum of artificials"; last entry is -objective
    cost = [Fraction(0)] * (width + 1)
    for row in T:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]

    iterations = 0
    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leave = None
        best = None
        for r in range(m):
            a = T[r][entering]
            if a > 0:
                ratio = T[r][width] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        # phase-1 objective is bounded below by zero, so some row always qualifies
        assert leave is not None
        prow = T[leave]
        piv = prow[entering]
        if piv != 1:
            prow[:] = [v / piv for v in prow]
        for r in range(m):
            if r != leave and T[r][entering]:
                f = T[r][entering]
                T[r] = [a - f * b for a, b in zip(T[r], prow)]
        if cost[entering]:
            f = cost[entering]
            cost = [a - f * b for a, b in zip(cost, prow)]
        basis[leave] = entering
        iterations += 1

    if cost[width] != 0:
        return LpOutcome(LpStatus.INFEASIBLE, None, iterations)
    x = [Fraction(0)] * n
    for r, var in enumerate(basis):
        if var < n:
            x[var] = T[r][width]
    return LpOutcome(LpStatus.FEASIBLE, tuple(x), iterations)
