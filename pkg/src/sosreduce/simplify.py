"""Simplification of SOS programs.

An SOS program minimizes ``c^T d`` subject to constraints
``a_k0(x) + a_k1(x) d_1 + ... + a_kr(x) d_r`` being SOS.  Each constraint gets
a Gram matrix ``Q_k``; equating coefficients gives linear equations over the
decision slots ``y = [d; symvec(Q_1); ...; symvec(Q_N)]``.  The simplifier
tracks a sign mark per slot and repeatedly scans equations with one or two
live slots, marking slots zero or sign-definite.  A Gram diagonal marked zero
removes its monomial (and the whole row and column) from that constraint.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .basis import MonomialBasis, hull_bounded_basis
from .gram import InfeasibilityCertificate
from .poly import DegreeVector, Polynomial, monomial_key

__all__ = [
    "AffineSosConstraint",
    "Deduction",
    "ProgramEquation",
    "ProgramSystem",
    "Sign",
    "SimplificationReport",
    "SimplifyStatus",
    "Slot",
    "SosProgram",
    "build_program_system",
    "meet",
    "process_single_var_equation",
    "process_two_var_equation",
    "simplify_program",
]


class Sign(enum.Enum):
    UNKNOWN = "unknown"
    NONNEG = "nonneg"
    NONPOS = "nonpos"
    ZERO = "zero"


def meet(a: Sign, b: Sign) -> Sign:
    """Combine two facts about one slot (``nonneg`` and ``nonpos`` give ``zero``)."""
    if a is b or b is Sign.UNKNOWN:
        return a
    if a is Sign.UNKNOWN:
        return b
    return Sign.ZERO


def _flip(s: Sign) -> Sign:
    return {Sign.NONNEG: Sign.NONPOS, Sign.NONPOS: Sign.NONNEG}.get(s, s)


def _sign_of(v: Fraction) -> Sign:
    return Sign.NONNEG if v > 0 else Sign.NONPOS


def _orientation(coef: Fraction, mark: Sign) -> Sign | None:
    """Sign of ``coef * y`` given the mark of ``y``; None when unknown."""
    if mark in (Sign.UNKNOWN, Sign.ZERO):
        return None
    return mark if coef > 0 else _flip(mark)


@dataclass(frozen=True)
class AffineSosConstraint:
    parts: tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("a constraint needs at least the constant part")


@dataclass(frozen=True)
class SosProgram:
    nvars: int
    ndecs: int
    cost: tuple[Fraction, ...]
    constraints: tuple[AffineSosConstraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "cost", tuple(Fraction(c) for c in self.cost))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.ndecs < 0:
            raise ValueError("ndecs must be >= 0")
        if len(self.cost) != self.ndecs:
            raise ValueError(f"cost has length {len(self.cost)}, expected {self.ndecs}")
        if not self.constraints:
            raise ValueError("an SOS program needs at least one constraint")
        for k, con in enumerate(self.constraints):
            if len(con.parts) != self.ndecs + 1:
                raise ValueError(
                    f"constraint {k} has {len(con.parts)} parts, expected {self.ndecs + 1}"
                )
            for p in con.parts:
                if p.nvars != self.nvars:
                    raise ValueError(f"constraint {k} mixes variable counts")


@dataclass(frozen=True)
class Slot:
    """One entry of ``y``: a decision variable ``d_j`` or a Gram pair ``Q_k[i, j]``."""

    kind: str  # "d" or "q"
    index: int = 0  # decision variable (0-based) for kind "d"
    constraint: int = 0
    i: int = 0
    j: int = 0

    @property
    def is_diagonal(self) -> bool:
        return self.kind == "q" and self.i == self.j

    def __str__(self):
        if self.kind == "d":
            return f"d{self.index + 1}"
        return f"Q{self.constraint + 1}[{self.i},{self.j}]"


@dataclass(frozen=True)
class ProgramEquation:
    """``sum(coef * y[slot]) == rhs`` for one constraint and product degree."""

    constraint: int
    product_degree: DegreeVector
    entries: tuple[tuple[int, Fraction], ...]
    rhs: Fraction

    def live(self, sign: Sequence[Sign]) -> list[tuple[int, Fraction]]:
        return [(s, c) for s, c in self.entries if sign[s] is not Sign.ZERO]


@dataclass
class ProgramSystem:
    program: SosProgram
    bases: tuple[MonomialBasis, ...]
    slots: tuple[Slot, ...]
    equations: tuple[ProgramEquation, ...]
    sign: list[Sign]
    _slot_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self._slot_index = {
            (s.constraint, s.i, s.j): n for n, s in enumerate(self.slots) if s.kind == "q"
        }

    def q_slot(self, k: int, i: int, j: int) -> int:
        i, j = min(i, j), max(i, j)
        return self._slot_index[(k, i, j)]

    def d_slot(self, j: int) -> int:
        """Slot of decision variable ``d_{j+1}`` (0-based ``j``)."""
        return j

    def row_slots(self, k: int, i: int) -> list[int]:
        return [self.q_slot(k, i, j) for j in range(len(self.bases[k]))]

    def active_indices(self, k: int) -> list[int]:
        return [
            i for i in range(len(self.bases[k]))
            if self.sign[self.q_slot(k, i, i)] is not Sign.ZERO
        ]

    def active_basis(self, k: int) -> MonomialBasis:
        b = self.bases[k]
        return MonomialBasis(b.nvars, tuple(b[i] for i in self.active_indices(k)))

    def copy(self) -> ProgramSystem:
        return ProgramSystem(self.program, self.bases, self.slots, self.equations, list(self.sign))


def _default_basis(con: AffineSosConstraint, nvars: int) -> MonomialBasis:
    # every a(x, d) has support inside the union of the parts' supports
    support = set()
    for part in con.parts:
        support.update(part.terms)
    return hull_bounded_basis(nvars, support)


def build_program_system(
    prog: SosProgram, bases: Sequence[MonomialBasis | None] | None = None
) -> ProgramSystem:
    """Assemble the equations of all constraints over a shared decision-slot layout.

    Missing bases default to integer points passing linear outer bounds on half
    the hull of the union of each constraint's part supports.
    """
    if bases is None:
        bases = [None] * len(prog.constraints)
    if len(bases) != len(prog.constraints):
        raise ValueError(f"got {len(bases)} bases for {len(prog.constraints)} constraints")
    chosen = []
    for con, b in zip(prog.constraints, bases):
        if b is None:
            b = _default_basis(con, prog.nvars)
        elif b.nvars != prog.nvars:
            raise ValueError(f"basis has {b.nvars} variables, program has {prog.nvars}")
        chosen.append(b)

    slots = [Slot("d", index=j) for j in range(prog.ndecs)]
    q_index = {}
    for k, b in enumerate(chosen):
        for i in range(len(b)):
            for j in range(i, len(b)):
                q_index[(k, i, j)] = len(slots)
                slots.append(Slot("q", constraint=k, i=i, j=j))

    equations = []
    for k, (con, b) in enumerate(zip(prog.constraints, chosen)):
        rows: dict[DegreeVector, dict[int, Fraction]] = {}
        for i, a in enumerate(b):
            for j in range(i, len(b)):
                alpha = tuple(x + y for x, y in zip(a, b[j]))
                rows.setdefault(alpha, {})[q_index[(k, i, j)]] = Fraction(1 if i == j else 2)
        for dj, part in enumerate(con.parts[1:]):
            for alpha, c in part.terms.items():
                rows.setdefault(alpha, {})[dj] = -c
        for alpha in con.parts[0].terms:
            rows.setdefault(alpha, {})
        for alpha in sorted(rows, key=monomial_key):
            entries = tuple(sorted(rows[alpha].items()))
            equations.append(ProgramEquation(k, alpha, entries, con.parts[0].coefficient(alpha)))

    sign = [Sign.NONNEG if s.is_diagonal else Sign.UNKNOWN for s in slots]
    return ProgramSystem(prog, tuple(chosen), tuple(slots), tuple(equations), sign)


@dataclass(frozen=True)
class Deduction:
    marks: dict = field(default_factory=dict)
    contradiction: str | None = None


def process_single_var_equation(eq: ProgramEquation, sign: Sequence[Sign]) -> Deduction:
    """Rules for ``a * y = b`` with one live slot.

    ``b == 0`` marks the slot zero.  Otherwise the equation implies
    ``sign(y) = sign(a * b)``: it is recorded on an unknown slot, and it is a
    contradiction on a slot already carrying the opposite mark or zero.
    """
    live = eq.live(sign)
    if len(live) > 1:
        raise ValueError(f"equation has {len(live)} live slots, expected at most one")
    if not live:
        if eq.rhs != 0:
            return Deduction(contradiction=f"no live variables left but rhs is {eq.rhs}")
        return Deduction()
    s, a = live[0]
    if eq.rhs == 0:
        return Deduction({s: Sign.ZERO})
    implied = _sign_of(a * eq.rhs)
    mark = sign[s]
    if mark is Sign.UNKNOWN:
        return Deduction({s: implied})
    if mark is not implied:
        return Deduction(
            contradiction=f"slot {s} is {mark.value} but the equation forces it {implied.value} and nonzero"
        )
    return Deduction()


def process_two_var_equation(eq: ProgramEquation, sign: Sequence[Sign]) -> Deduction:
    """Rules for ``a1 * y1 + a2 * y2 = b``.

    * one slot already zero: fall back to the single-slot rules;
    * ``b == 0`` and both terms provably of the same sign: both slots are zero;
    * ``b == 0`` and one term's sign known: the other term has the opposite sign;
    * both terms provably of one sign but ``b`` of the other: contradiction.
    """
    live = eq.live(sign)
    if len(live) > 2:
        raise ValueError(f"equation has {len(live)} live slots, expected at most two")
    if len(live) < 2:
        return process_single_var_equation(eq, sign)
    (s1, a1), (s2, a2) = live
    o1 = _orientation(a1, sign[s1])
    o2 = _orientation(a2, sign[s2])
    b = eq.rhs
    if o1 is not None and o1 is o2:
        if b == 0:
            return Deduction({s1: Sign.ZERO, s2: Sign.ZERO})
        if _sign_of(b) is not o1:
            return Deduction(contradiction=f"two {o1.value} terms cannot sum to {b}")
        return Deduction()
    if b == 0 and (o1 is None) != (o2 is None):
        if o1 is None:
            s, a, known = s1, a1, o2
        else:
            s, a, known = s2, a2, o1
        term = _flip(known)
        return Deduction({s: term if a > 0 else _flip(term)})
    return Deduction()


class SimplifyStatus(enum.Enum):
    SIMPLIFIED = "simplified"
    INFEASIBLE = "infeasible"


@dataclass
class SimplificationReport:
    bases: tuple[MonomialBasis, ...]
    initial_bases: tuple[MonomialBasis, ...]
    removed: tuple[tuple[tuple[int, DegreeVector], ...], ...]
    zeroed_decision_vars: tuple[int, ...]  # 1-based, d1 .. dr
    decision_signs: tuple[Sign, ...]
    iterations: int
    status: SimplifyStatus
    certificate: InfeasibilityCertificate | None
    system: ProgramSystem
    zero_history: tuple[frozenset, ...] = ()


def simplify_program(psys: ProgramSystem) -> SimplificationReport:
    """Propagate zero and sign marks to a fixed point.

    Marks are applied as soon as they are deduced; monomial pruning (whole
    rows and columns of a Gram block) happens at the end of each pass.
    Deductions that would contradict an equation are not applied; the first
    one is kept as the infeasibility certificate and the scan continues.
    """
    psys = psys.copy()
    sign = psys.sign
    ncon = len(psys.bases)
    initial = tuple(psys.active_basis(k) for k in range(ncon))
    removed: list[list] = [[] for _ in range(ncon)]
    pruned = [set() for _ in range(ncon)]
    certificate = None
    history = []
    iteration = 0

    def note(eq: ProgramEquation, reason: str, detail: str = ""):
        nonlocal certificate
        if certificate is None:
            certificate = InfeasibilityCertificate(
                reason, eq.product_degree, eq.rhs, eq.constraint, detail
            )

    while True:
        iteration += 1
        new_zero, new_sign = set(), set()
        for eq in psys.equations:
            live = eq.live(sign)
            if not live:
                if eq.rhs != 0:
                    note(eq, "empty-equation")
                continue
            if len(live) == 1:
                ded = process_single_var_equation(eq, sign)
            elif len(live) == 2:
                ded = process_two_var_equation(eq, sign)
            else:
                continue
            if ded.contradiction:
                s = live[0][0]
                reason = (
                    "negative-diagonal"
                    if len(live) == 1 and psys.slots[s].is_diagonal
                    else "sign-conflict"
                )
                note(eq, reason, ded.contradiction)
                continue
            for s, mark in ded.marks.items():
                new = meet(sign[s], mark)
                if new is not sign[s]:
                    sign[s] = new
                    (new_zero if new is Sign.ZERO else new_sign).add(s)
        for s in sorted(new_zero):
            slot = psys.slots[s]
            if slot.is_diagonal and slot.i not in pruned[slot.constraint]:
                k, i = slot.constraint, slot.i
                pruned[k].add(i)
                removed[k].append((iteration, psys.bases[k][i]))
                for t in psys.row_slots(k, i):
                    sign[t] = Sign.ZERO
        history.append(frozenset(n for n, m in enumerate(sign) if m is Sign.ZERO))
        if not new_zero and not new_sign:
            break

    r = psys.program.ndecs
    return SimplificationReport(
        bases=tuple(psys.active_basis(k) for k in range(ncon)),
        initial_bases=initial,
        removed=tuple(tuple(sorted(rm, key=lambda t: (t[0], monomial_key(t[1])))) for rm in removed),
        zeroed_decision_vars=tuple(j + 1 for j in range(r) if sign[j] is Sign.ZERO),
        decision_signs=tuple(sign[:r]),
        iterations=iteration,
        status=SimplifyStatus.SIMPLIFIED if certificate is None else SimplifyStatus.INFEASIBLE,
        certificate=certificate,
        system=psys,
        zero_history=tuple(history),
    )
