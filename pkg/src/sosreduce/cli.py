"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 infeasibility certificate
(or a rejected Gram witness), 3 screen says not SOS.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import tempfile
import time
from pathlib import Path

from .basis import MonomialBasis, full_basis, heuristic_init
from .corpus import random_polynomial
from .gram import GramMatrix, InfeasibilityCertificate, build_gram_system, evaluate_gram, is_psd
from .newton import ScreenReason, even_vertex_screen, newton_reduce
from .poly import Polynomial, PolynomialSyntaxError, format_polynomial, parse_polynomial
from .sdpio import (
    MethodResult,
    ProgramSchemaError,
    ReductionReport,
    digest,
    export_report_json,
    export_sdpa_sparse,
    parse_program_json,
    parse_rational,
    program_to_json,
    to_primal_form,
)
from .simplify import SimplifyStatus, build_program_system, simplify_program
from .zda import ZdaStatus, zda_reduce

log = logging.getLogger("sosreduce")

OUTPUT_DIR_ENV = "SOSREDUCE_OUTPUT_DIR"

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_NOT_SOS = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def write_atomic(path: str | Path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def read_polynomial(path: str) -> Polynomial:
    text = _read_text(path)
    try:
        return parse_polynomial(text)
    except PolynomialSyntaxError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit_report(text: str, dest: str | None, source: str, suffix: str = ".report.json") -> None:
    if dest is None and os.environ.get(OUTPUT_DIR_ENV):
        dest = str(Path(os.environ[OUTPUT_DIR_ENV]) / (Path(source).stem + suffix))
    if dest is None:
        sys.stdout.write(text)
    else:
        write_atomic(dest, text)
        log.info("wrote %s", dest)


def initial_basis(p: Polynomial, init: str) -> MonomialBasis:
    if init == "full":
        return full_basis(p.nvars, p.degree // 2)
    return heuristic_init(p)


def _removed(M0: MonomialBasis, final: MonomialBasis, sweep: int = 1):
    return tuple((sweep, a) for a in M0 if a not in final)


def reduce_polynomial(p: Polynomial, method: str = "both", init: str = "heuristic"):
    """Run the selected reducers; returns ``(report, system_for_export)``."""
    start = time.perf_counter()
    key = digest(format_polynomial(p))
    if p.is_zero():
        empty = MonomialBasis(p.nvars, ())
        results = tuple(
            MethodResult(m, 0, 0, 0, ()) for m in (["newton", "zda"] if method == "both" else [method])
        )
        report = ReductionReport(key, method, "reduced", results, screen="Pass",
                                 containment_ok=True if method == "both" else None)
        return report, build_gram_system(p, empty)
    screen = even_vertex_screen(p)
    if screen.reason is ScreenReason.ODD_DEGREE:
        cert = InfeasibilityCertificate("odd-degree", detail=f"degree {p.degree}")
        report = ReductionReport(key, method, "infeasible", (), cert, str(screen),
                                 wall_time=time.perf_counter() - start)
        return report, None

    M0 = initial_basis(p, init)
    results = []
    certificate = None
    system = None
    newton_basis = zda_basis = None
    if method in ("newton", "both"):
        t = time.perf_counter()
        newton_basis = newton_reduce(p, M0)
        results.append(MethodResult(
            "newton", 0, len(M0), len(newton_basis), newton_basis.entries,
            _removed(M0, newton_basis), None, time.perf_counter() - t,
        ))
        system = build_gram_system(p, newton_basis)
    if method in ("zda", "both"):
        t = time.perf_counter()
        res = zda_reduce(build_gram_system(p, M0))
        zda_basis = res.final_basis
        results.append(MethodResult(
            "zda", 0, len(M0), len(zda_basis), zda_basis.entries,
            res.removed, res.sweeps, time.perf_counter() - t,
        ))
        system = res.reduced_system
        if res.status is ZdaStatus.INFEASIBLE:
            certificate = res.certificate
    if certificate is None and not screen.passed:
        certificate = InfeasibilityCertificate("odd-vertex", screen.vertex)
    containment = None
    if method == "both":
        containment = zda_basis.issubset(newton_basis) and newton_basis.issubset(M0)
    status = "reduced" if certificate is None else "infeasible"
    report = ReductionReport(
        key, method, status, tuple(results), certificate, str(screen), containment,
        wall_time=time.perf_counter() - start,
        extra={"init": init, "polynomial": format_polynomial(p)},
    )
    return report, (system if certificate is None else None)


def _write_sdpa(system, dest: str) -> None:
    write_atomic(dest, export_sdpa_sparse(to_primal_form(system)))
    log.info("wrote %s", dest)


def cmd_reduce(args) -> int:
    p = read_polynomial(args.input)
    report, system = reduce_polynomial(p, args.method, args.init)
    _emit_report(export_report_json(report), args.report, args.input)
    if report.status == "infeasible":
        print(f"infeasible: {report.certificate}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if args.sdpa:
        _write_sdpa(system, args.sdpa)
    return EXIT_OK


def cmd_export(args) -> int:
    p = read_polynomial(args.input)
    report, system = reduce_polynomial(p, args.method, args.init)
    if report.status == "infeasible":
        print(f"infeasible: {report.certificate}", file=sys.stderr)
        return EXIT_INFEASIBLE
    _write_sdpa(system, args.output)
    return EXIT_OK


def cmd_simplify(args) -> int:
    try:
        prog = parse_program_json(_read_text(args.input))
    except ProgramSchemaError as exc:
        raise UsageError(f"{args.input}: {exc}") from None
    start = time.perf_counter()
    rep = simplify_program(build_program_system(prog))
    elapsed = time.perf_counter() - start
    results = tuple(
        MethodResult("simplify", k, len(rep.initial_bases[k]), len(rep.bases[k]),
                     rep.bases[k].entries, rep.removed[k], rep.iterations)
        for k in range(len(rep.bases))
    )
    infeasible = rep.status is SimplifyStatus.INFEASIBLE
    report = ReductionReport(
        digest(program_to_json(prog)), "simplify",
        "infeasible" if infeasible else "simplified",
        results, rep.certificate,
        zeroed_decision_vars=rep.zeroed_decision_vars,
        decision_signs=tuple(s.value for s in rep.decision_signs),
        iterations=rep.iterations, wall_time=elapsed,
    )
    _emit_report(export_report_json(report), args.report, args.input)
    if infeasible:
        print(f"infeasible: {rep.certificate}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if args.sdpa:
        _write_sdpa(rep.system, args.sdpa)
    return EXIT_OK


def cmd_screen(args) -> int:
    p = read_polynomial(args.input)
    if p.is_zero():
        print("Pass")
        return EXIT_OK
    result = even_vertex_screen(p)
    print(result)
    return EXIT_OK if result.passed else EXIT_NOT_SOS


def cmd_verify(args) -> int:
    """Check a Gram witness ``{"basis": [[...]], "gram": [[...]]}`` against a polynomial."""
    p = read_polynomial(args.input)
    try:
        obj = json.loads(_read_text(args.witness))
        basis = MonomialBasis(p.nvars, tuple(tuple(a) for a in obj["basis"]))
        Q = GramMatrix(tuple(tuple(parse_rational(v) for v in row) for row in obj["gram"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{args.witness}: bad witness: {exc}") from None
    if Q.dim != len(basis):
        raise UsageError(f"{args.witness}: gram is {Q.dim}x{Q.dim} but basis has {len(basis)}")
    matches = evaluate_gram(basis, Q) == p
    psd = is_psd(Q)
    print(f"z^T Q z == p: {matches}")
    print(f"Q PSD: {psd}")
    return EXIT_OK if matches and psd else EXIT_INFEASIBLE


def run_bench(n: int, deg: int, terms: int, count: int, seed: int, init: str = "heuristic") -> dict:
    rng = random.Random(seed)
    rows = []
    violations = 0
    for index in range(count):
        p = random_polynomial(rng, n, deg, terms)
        M0 = initial_basis(p, init)
        t = time.perf_counter()
        nb = newton_reduce(p, M0)
        newton_time = time.perf_counter() - t
        t = time.perf_counter()
        res = zda_reduce(build_gram_system(p, M0))
        zda_time = time.perf_counter() - t
        contained = res.final_basis.issubset(nb) and nb.issubset(M0)
        violations += not contained
        rows.append({
            "index": index,
            "polynomial": format_polynomial(p),
            "initial_size": len(M0),
            "newton_size": len(nb),
            "zda_size": len(res.final_basis),
            "zda_status": res.status.value,
            "zda_sweeps": res.sweeps,
            "contained": contained,
            "newton_time": newton_time,
            "zda_time": zda_time,
        })
    return {
        "params": {"n": n, "deg": deg, "terms": terms, "count": count, "seed": seed, "init": init},
        "rows": rows,
        "violations": violations,
        "total_newton_time": sum(r["newton_time"] for r in rows),
        "total_zda_time": sum(r["zda_time"] for r in rows),
    }


def cmd_bench(args) -> int:
    if args.deg % 2:
        raise UsageError("--deg must be even")
    result = run_bench(args.n, args.deg, args.terms, args.count, args.seed, args.init)
    text = json.dumps(result, sort_keys=True, indent=2) + "\n"
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    if result["violations"]:
        print(f"{result['violations']} containment violation(s)", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sosreduce", description="SOS monomial reduction and simplification")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def reducer_options(sp):
        sp.add_argument("--method", choices=["newton", "zda", "both"], default="both")
        sp.add_argument("--init", choices=["full", "heuristic"], default="heuristic")

    sp = sub.add_parser("reduce", help="prune the Gram basis of a .poly file")
    sp.add_argument("input")
    reducer_options(sp)
    sp.add_argument("--report", help="report JSON path (default: stdout or $%s)" % OUTPUT_DIR_ENV)
    sp.add_argument("--sdpa", help="also write the reduced SDP as .dat-s")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("simplify", help="simplify an SOS program JSON")
    sp.add_argument("input")
    sp.add_argument("--report")
    sp.add_argument("--sdpa")
    sp.set_defaults(func=cmd_simplify)

    sp = sub.add_parser("screen", help="even-vertex necessary condition")
    sp.add_argument("input")
    sp.set_defaults(func=cmd_screen)

    sp = sub.add_parser("export", help="reduce a .poly file and write SDPA sparse")
    sp.add_argument("input")
    sp.add_argument("-o", "--output", required=True)
    reducer_options(sp)
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("verify", help="check a Gram matrix witness")
    sp.add_argument("input")
    sp.add_argument("witness")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="Newton vs zero-diagonal on a random corpus")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--deg", type=int, default=4)
    sp.add_argument("--terms", type=int, default=6)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--init", choices=["full", "heuristic"], default="heuristic")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(
        level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
