"""Zero diagonal monomial reduction.

If an equation of the Gram system reads ``Q[i, i] = 0`` then every PSD
solution has a zero ``i``-th row and column, so the ``i``-th monomial can be
dropped.  Dropping it removes pairs from other equations, which may expose
further zero diagonals; the sweep repeats until nothing new is found.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .basis import MonomialBasis, heuristic_init
from .gram import GramConstraintSystem, InfeasibilityCertificate, build_gram_system
from .poly import DegreeVector, Polynomial

__all__ = [
    "ZdaResult",
    "ZdaStatus",
    "find_certificate",
    "find_forced_zero_diagonals",
    "zda_reduce",
    "zda_reduce_polynomial",
]


class ZdaStatus(enum.Enum):
    REDUCED = "reduced"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class ZdaResult:
    initial_basis: MonomialBasis
    final_basis: MonomialBasis
    removed: tuple[tuple[int, DegreeVector], ...]
    sweeps: int
    status: ZdaStatus
    certificate: InfeasibilityCertificate | None
    reduced_system: GramConstraintSystem

    def removed_in(self, sweep: int) -> list[DegreeVector]:
        return [a for k, a in self.removed if k == sweep]


def find_forced_zero_diagonals(csys: GramConstraintSystem) -> list[int]:
    """Active indices ``i`` with some equation reduced to ``Q[i, i] = 0``."""
    found = set()
    for eq in csys.equations:
        if eq.rhs == 0:
            i = eq.forced_diagonal()
            if i is not None and csys.active[i]:
                found.add(i)
    return sorted(found)


def find_certificate(csys: GramConstraintSystem) -> InfeasibilityCertificate | None:
    """First equation (graded-lex) that rules out every PSD solution, if any."""
    for eq in csys.equations:
        if not eq.entries and eq.rhs != 0:
            return InfeasibilityCertificate("empty-equation", eq.product_degree, eq.rhs)
        if eq.rhs < 0 and eq.forced_diagonal() is not None:
            return InfeasibilityCertificate("negative-diagonal", eq.product_degree, eq.rhs)
    return None


def zda_reduce(csys: GramConstraintSystem) -> ZdaResult:
    """Run zero-diagonal sweeps to a fixed point.

    Each sweep collects every forced zero diagonal before deactivating any.
    ``sweeps`` counts passes including the final one that finds nothing.
    An infeasibility certificate, once found, is kept, and the sweeps still run
    to completion so ``final_basis`` is always the full fixed point.
    """
    initial = csys.active_basis()
    certificate = find_certificate(csys)
    removed = []
    sweep = 0
    while True:
        sweep += 1
        found = find_forced_zero_diagonals(csys)
        if found:
            removed.extend((sweep, csys.basis[i]) for i in found)
            csys = csys.deactivate(*found)
            if certificate is None:
                certificate = find_certificate(csys)
        else:
            break
    status = ZdaStatus.REDUCED if certificate is None else ZdaStatus.INFEASIBLE
    return ZdaResult(
        initial_basis=initial,
        final_basis=csys.active_basis(),
        removed=tuple(removed),
        sweeps=sweep,
        status=status,
        certificate=certificate,
        reduced_system=csys,
    )


def zda_reduce_polynomial(p: Polynomial, basis: MonomialBasis | None = None) -> ZdaResult:
    """Build the Gram system for ``p`` (default basis: :func:`heuristic_init`) and reduce it."""
    if basis is None:
        basis = heuristic_init(p)
    return zda_reduce(build_gram_system(p, basis))
