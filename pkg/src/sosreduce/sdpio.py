"""Serialization of reduced problems.

* :func:`to_primal_form` turns a reduced Gram or program system into
  ``min c^T d  s.t.  A y = b,  Q_k PSD`` with ``y = [d; vec(Q_1); ...]``
  (``vec`` stacks columns; both ``(i, j)`` and ``(j, i)`` carry coefficients).
* :func:`export_sdpa_sparse` writes SDPA sparse (``.dat-s``) text.
* Reduction reports and SOS programs are exchanged as JSON, rationals as
  ``"num/den"`` strings.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .basis import MonomialBasis
from .gram import GramConstraintSystem, InfeasibilityCertificate
from .poly import PolynomialSyntaxError, format_polynomial, parse_polynomial
from .simplify import AffineSosConstraint, ProgramSystem, Sign, SosProgram

__all__ = [
    "InfeasibleSystemError",
    "MethodResult",
    "PrimalSdpData",
    "ProgramSchemaError",
    "ReductionReport",
    "certificate_from_json",
    "certificate_to_json",
    "digest",
    "export_report_json",
    "export_sdpa_sparse",
    "format_rational",
    "parse_program_json",
    "parse_rational",
    "program_to_json",
    "report_from_json",
    "to_primal_form",
]


class InfeasibleSystemError(ValueError):
    def __init__(self, certificate: InfeasibilityCertificate):
        super().__init__(f"system is infeasible: {certificate}")
        self.certificate = certificate


class ProgramSchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def format_rational(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_rational(s: str | int) -> Fraction:
    if isinstance(s, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"expected a rational string, got {type(s).__name__}")


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


# -- primal form ---------------------------------------------------------------

@dataclass(frozen=True)
class PrimalSdpData:
    nfree: int
    blocks: tuple[int, ...]
    rows: tuple[dict[int, Fraction], ...]
    rhs: tuple[Fraction, ...]
    cost: tuple[Fraction, ...]
    free_vars: tuple[int, ...] = ()  # 1-based decision variable numbers kept free
    block_bases: tuple[MonomialBasis, ...] = ()

    @property
    def ncols(self) -> int:
        return self.nfree + sum(m * m for m in self.blocks)

    def block_offsets(self) -> list[int]:
        offsets, pos = [], self.nfree
        for m in self.blocks:
            offsets.append(pos)
            pos += m * m
        return offsets

    def locate(self, col: int) -> tuple[int, int, int] | None:
        """``(block, i, j)`` (0-based) of a Gram column, None for a free column."""
        if col < self.nfree:
            return None
        for b, (off, m) in enumerate(zip(self.block_offsets(), self.blocks)):
            if off <= col < off + m * m:
                i, j = (col - off) % m, (col - off) // m
                return b, i, j
        raise IndexError(f"column {col} out of range")


def _gram_primal(csys: GramConstraintSystem) -> PrimalSdpData:
    keep = csys.active_indices()
    new = {old: n for n, old in enumerate(keep)}
    m = len(keep)
    rows, rhs = [], []
    for eq in csys.equations:
        if not eq.entries:
            if eq.rhs != 0:
                raise InfeasibleSystemError(
                    InfeasibilityCertificate("empty-equation", eq.product_degree, eq.rhs)
                )
            continue
        row: dict[int, Fraction] = {}
        for i, j, _ in eq.entries:
            a, b = new[i], new[j]
            row[a + b * m] = row.get(a + b * m, Fraction(0)) + 1
            if a != b:
                row[b + a * m] = row.get(b + a * m, Fraction(0)) + 1
        rows.append(row)
        rhs.append(eq.rhs)
    blocks = (m,) if m else ()
    bases = (csys.active_basis(),) if m else ()
    return PrimalSdpData(0, blocks, tuple(rows), tuple(rhs), (), (), bases)


def _program_primal(psys: ProgramSystem, cost: Sequence[Fraction] | None) -> PrimalSdpData:
    prog = psys.program
    cost = prog.cost if cost is None else tuple(Fraction(c) for c in cost)
    if len(cost) != prog.ndecs:
        raise ValueError(f"cost has length {len(cost)}, expected {prog.ndecs}")
    free = [j for j in range(prog.ndecs) if psys.sign[j] is not Sign.ZERO]
    free_col = {j: n for n, j in enumerate(free)}
    blocks, bases, offsets, remap = [], [], {}, {}
    pos = len(free)
    for k in range(len(psys.bases)):
        keep = psys.active_indices(k)
        if not keep:
            continue
        offsets[k] = pos
        remap[k] = {old: n for n, old in enumerate(keep)}
        blocks.append(len(keep))
        bases.append(psys.active_basis(k))
        pos += len(keep) ** 2
    rows, rhs = [], []
    for eq in psys.equations:
        row: dict[int, Fraction] = {}
        for s, c in eq.entries:
            slot = psys.slots[s]
            if slot.kind == "d":
                if slot.index in free_col:
                    row[free_col[slot.index]] = c
                continue
            k = slot.constraint
            rm = remap.get(k, {})
            if slot.i not in rm or slot.j not in rm:
                continue  # row/column of a pruned monomial: identically zero
            m = len(rm)
            a, b = rm[slot.i], rm[slot.j]
            if a == b:
                row[offsets[k] + a + a * m] = c
            else:
                row[offsets[k] + a + b * m] = c / 2
                row[offsets[k] + b + a * m] = c / 2
        if not row:
            if eq.rhs != 0:
                raise InfeasibleSystemError(
                    InfeasibilityCertificate(
                        "empty-equation", eq.product_degree, eq.rhs, eq.constraint
                    )
                )
            continue
        rows.append(row)
        rhs.append(eq.rhs)
    return PrimalSdpData(
        nfree=len(free),
        blocks=tuple(blocks),
        rows=tuple(rows),
        rhs=tuple(rhs),
        cost=tuple(cost[j] for j in free),
        free_vars=tuple(j + 1 for j in free),
        block_bases=tuple(bases),
    )


def to_primal_form(system, cost: Sequence[Fraction] | None = None) -> PrimalSdpData:
    """Drop inactive slots and expand the symmetric pair encoding to full ``vec(Q)``.

    Decision variables marked zero are eliminated.  Off-diagonal Gram entries
    that are known to be zero but sit in a surviving row and column keep their
    equations, so the exported problem is equivalent rather than relaxed.
    Raises :class:`InfeasibleSystemError` on an equation ``0 = b`` with ``b != 0``.
    """
    if isinstance(system, GramConstraintSystem):
        if cost:
            raise ValueError("a Gram feasibility system has no decision variables to cost")
        return _gram_primal(system)
    if isinstance(system, ProgramSystem):
        return _program_primal(system, cost)
    raise TypeError(f"cannot convert {type(system).__name__} to primal form")


def _num(v: Fraction) -> str:
    return repr(float(v))


def export_sdpa_sparse(data: PrimalSdpData) -> str:
    """SDPA sparse text for ``max F0.Y  s.t.  Fi.Y = b_i,  Y PSD``.

    Row ``i`` becomes ``F_i``, the right-hand side becomes the SDPA ``c``
    vector and ``F0 = -cost`` (SDPA maximizes).  Free variables are split as
    ``d = d+ - d-`` into one diagonal block appended after the Gram blocks.
    """
    out = ["* sosreduce SDPA sparse export"]
    if data.nfree:
        out.append(f"* {data.nfree} free variable(s) split as d = d+ - d- in the last diagonal block")
    nblocks = len(data.blocks) + (1 if data.nfree else 0)
    struct = [str(m) for m in data.blocks]
    if data.nfree:
        struct.append(str(-2 * data.nfree))
    lp_block = len(data.blocks) + 1
    out.append(str(len(data.rows)))
    out.append(str(nblocks))
    out.append(" ".join(struct))
    out.append(" ".join(_num(v) for v in data.rhs))

    entries: list[tuple[int, int, int, int, Fraction]] = []
    for j, c in enumerate(data.cost):
        if c:
            entries.append((0, lp_block, 2 * j + 1, 2 * j + 1, -c))
            entries.append((0, lp_block, 2 * j + 2, 2 * j + 2, c))
    for r, row in enumerate(data.rows, start=1):
        for col, v in row.items():
            if not v:
                continue
            loc = data.locate(col)
            if loc is None:
                entries.append((r, lp_block, 2 * col + 1, 2 * col + 1, v))
                entries.append((r, lp_block, 2 * col + 2, 2 * col + 2, -v))
                continue
            b, i, j = loc
            if i <= j:
                entries.append((r, b + 1, i + 1, j + 1, v))
    entries.sort(key=lambda e: e[:4])
    out.extend(f"{m} {b} {i} {j} {_num(v)}" for m, b, i, j, v in entries)
    return "\n".join(out) + "\n"


# -- reports ---------------------------------------------------------------------

@dataclass(frozen=True)
class MethodResult:
    """Outcome of one reduction method on one constraint."""

    method: str
    constraint: int
    initial_size: int
    final_size: int
    final_basis: tuple[tuple[int, ...], ...]
    removed: tuple[tuple[int, tuple[int, ...]], ...] = ()
    sweeps: int | None = None
    wall_time: float = 0.0

    def __post_init__(self):
        if self.final_size > self.initial_size:
            raise ValueError("final basis larger than initial basis")


@dataclass(frozen=True)
class ReductionReport:
    input_digest: str
    method: str  # newton | zda | both | simplify
    status: str
    results: tuple[MethodResult, ...] = ()
    certificate: InfeasibilityCertificate | None = None
    screen: str | None = None
    containment_ok: bool | None = None
    zeroed_decision_vars: tuple[int, ...] = ()
    decision_signs: tuple[str, ...] = ()
    iterations: int | None = None
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)

    def result(self, method: str, constraint: int = 0) -> MethodResult:
        for r in self.results:
            if r.method == method and r.constraint == constraint:
                return r
        raise KeyError((method, constraint))


def certificate_to_json(cert: InfeasibilityCertificate | None) -> dict | None:
    if cert is None:
        return None
    return {
        "reason": cert.reason,
        "product_degree": None if cert.product_degree is None else list(cert.product_degree),
        "rhs": format_rational(cert.rhs),
        "constraint": cert.constraint,
        "detail": cert.detail,
        "text": str(cert),
    }


def certificate_from_json(obj: dict | None) -> InfeasibilityCertificate | None:
    if obj is None:
        return None
    pd = obj.get("product_degree")
    return InfeasibilityCertificate(
        reason=obj["reason"],
        product_degree=None if pd is None else tuple(pd),
        rhs=parse_rational(obj["rhs"]),
        constraint=obj.get("constraint", 0),
        detail=obj.get("detail", ""),
    )


def _result_to_json(r: MethodResult) -> dict:
    return {
        "method": r.method,
        "constraint": r.constraint,
        "initial_size": r.initial_size,
        "final_size": r.final_size,
        "final_basis": [list(a) for a in r.final_basis],
        "removed": [{"sweep": k, "monomial": list(a)} for k, a in r.removed],
        "sweeps": r.sweeps,
        "wall_time": r.wall_time,
    }


def _result_from_json(obj: dict) -> MethodResult:
    return MethodResult(
        method=obj["method"],
        constraint=obj["constraint"],
        initial_size=obj["initial_size"],
        final_size=obj["final_size"],
        final_basis=tuple(tuple(a) for a in obj["final_basis"]),
        removed=tuple((e["sweep"], tuple(e["monomial"])) for e in obj["removed"]),
        sweeps=obj["sweeps"],
        wall_time=obj["wall_time"],
    )


def export_report_json(report: ReductionReport) -> str:
    obj = {
        "input_digest": report.input_digest,
        "method": report.method,
        "status": report.status,
        "results": [_result_to_json(r) for r in report.results],
        "certificate": certificate_to_json(report.certificate),
        "screen": report.screen,
        "containment_ok": report.containment_ok,
        "zeroed_decision_vars": list(report.zeroed_decision_vars),
        "decision_signs": list(report.decision_signs),
        "iterations": report.iterations,
        "wall_time": report.wall_time,
        "extra": report.extra,
    }
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def report_from_json(text: str) -> ReductionReport:
    obj = json.loads(text)
    return ReductionReport(
        input_digest=obj["input_digest"],
        method=obj["method"],
        status=obj["status"],
        results=tuple(_result_from_json(r) for r in obj["results"]),
        certificate=certificate_from_json(obj["certificate"]),
        screen=obj["screen"],
        containment_ok=obj["containment_ok"],
        zeroed_decision_vars=tuple(obj["zeroed_decision_vars"]),
        decision_signs=tuple(obj["decision_signs"]),
        iterations=obj["iterations"],
        wall_time=obj["wall_time"],
        extra=obj.get("extra", {}),
    )


# -- SOS program JSON ------------------------------------------------------------

def _require(obj: dict, key: str, path: str) -> Any:
    if key not in obj:
        raise ProgramSchemaError(f"{path}.{key}" if path else key, "missing required field")
    return obj[key]


def _int_field(obj: dict, key: str, minimum: int) -> int:
    v = _require(obj, key, "")
    if isinstance(v, bool) or not isinstance(v, int):
        raise ProgramSchemaError(key, "expected an integer")
    if v < minimum:
        raise ProgramSchemaError(key, f"must be >= {minimum}")
    return v


def parse_program_json(text: str) -> SosProgram:
    """Validate and load an SOS program document.

    Schema: ``{"nvars": int, "ndecs": int, "cost": [rational, ...],
    "constraints": [{"parts": [poly-string, ...]}, ...]}``; each constraint
    has ``ndecs + 1`` parts and ``cost`` (default all zero) has ``ndecs`` entries.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProgramSchemaError("$", f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ProgramSchemaError("$", "expected a JSON object")
    nvars = _int_field(obj, "nvars", 1)
    ndecs = _int_field(obj, "ndecs", 0)
    raw_cost = obj.get("cost", ["0"] * ndecs)
    if not isinstance(raw_cost, list):
        raise ProgramSchemaError("cost", "expected a list")
    if len(raw_cost) != ndecs:
        raise ProgramSchemaError("cost", f"expected {ndecs} entries, got {len(raw_cost)}")
    cost = []
    for n, c in enumerate(raw_cost):
        try:
            cost.append(parse_rational(c))
        except (ValueError, ZeroDivisionError) as exc:
            raise ProgramSchemaError(f"cost[{n}]", str(exc)) from None
    cons = _require(obj, "constraints", "")
    if not isinstance(cons, list) or not cons:
        raise ProgramSchemaError("constraints", "expected a non-empty list")
    constraints = []
    for k, con in enumerate(cons):
        path = f"constraints[{k}]"
        if not isinstance(con, dict):
            raise ProgramSchemaError(path, "expected an object")
        parts = _require(con, "parts", path)
        if not isinstance(parts, list):
            raise ProgramSchemaError(f"{path}.parts", "expected a list")
        if len(parts) != ndecs + 1:
            raise ProgramSchemaError(
                f"{path}.parts", f"expected {ndecs + 1} polynomials, got {len(parts)}"
            )
        polys = []
        for j, s in enumerate(parts):
            if not isinstance(s, str):
                raise ProgramSchemaError(f"{path}.parts[{j}]", "expected a polynomial string")
            try:
                polys.append(parse_polynomial(s, nvars))
            except PolynomialSyntaxError as exc:
                raise ProgramSchemaError(f"{path}.parts[{j}]", str(exc)) from None
        constraints.append(AffineSosConstraint(tuple(polys)))
    return SosProgram(nvars, ndecs, tuple(cost), tuple(constraints))


def program_to_json(prog: SosProgram) -> str:
    obj = {
        "nvars": prog.nvars,
        "ndecs": prog.ndecs,
        "cost": [format_rational(c) for c in prog.cost],
        "constraints": [
            {"parts": [format_polynomial(p) for p in con.parts]} for con in prog.constraints
        ],
    }
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
