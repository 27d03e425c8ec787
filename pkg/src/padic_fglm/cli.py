"""Command-line front end.

Exit codes: 0 success, 2 insufficient precision, 3 malformed input,
4 violated hypotheses (not zero-dimensional / semi-stable / shape).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from .errors import (
    InsufficientPrecision,
    InvalidPrime,
    NotSemiStable,
    NotShapePosition,
    NotZeroDimensional,
    ParseError,
)
from .experiments import ExperimentSpec, loss_statistics, stats_table, write_trials_csv
from .fglm import fglm_change_order_run, fglm_shape_from_grevlex_run, precision_loss_report
from .lifting import hensel_lift_roots
from .linalg import condition_number, snf_approximate, snf_precise
from .orders import GREVLEX, ORDER_TAGS
from .padics import format_scalar
from .polynomials import is_reduced_groebner
from .textio import basis_from_parsed, emit_basis, emit_matrix, parse_matrix, parse_system

EXIT_OK = 0
EXIT_PRECISION = 2
EXIT_PARSE = 3
EXIT_HYPOTHESIS = 4


class _HypothesisError(Exception):
    pass


def _load_basis(path: str):
    parsed = parse_system(Path(path).read_text())
    if not is_reduced_groebner(parsed.polys, parsed.order):
        raise _HypothesisError(f"input is not a reduced Groebner basis for {parsed.order}")
    return parsed, basis_from_parsed(parsed)


def _write_report(report, path: str):
    data = asdict(report)
    data["input_prec"] = None if data["input_prec"] == float("inf") else data["input_prec"]
    Path(path).write_text(json.dumps(data, indent=2, default=str) + "\n")


def cmd_convert(args) -> int:
    parsed, basis = _load_basis(args.infile)
    if args.shape:
        if basis.order != GREVLEX:
            raise _HypothesisError("the shape pipeline starts from a grevlex basis")
        run = fglm_shape_from_grevlex_run(basis)
    else:
        run = fglm_change_order_run(basis, args.to)
    report = precision_loss_report(run)
    if args.report:
        _write_report(report, args.report)
    if run.basis is None:
        print(run.error, file=sys.stderr)
        return EXIT_PRECISION
    sys.stdout.write(emit_basis(run.basis))
    if report.cond is not None:
        print(
            f"cond {report.cond}  observed_loss {report.observed_loss}  "
            f"budget {report.predicted_loss_shape if report.variant == 'shape' else report.predicted_loss_general}",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_snf(args) -> int:
    field, M = parse_matrix(Path(args.matrix).read_text())
    f = snf_approximate(M, with_inverses=False)
    if args.precise:
        f = snf_precise(f)
    prec = min(
        (e.prec for row in M.entries for e in row if e.prec != float("inf")),
        default=1,
    )
    vals = " ".join(
        "?" if a is None else ("inf" if a == float("inf") else str(a))
        for a in f.diag_valuations
    )
    print(f"diag_valuations {vals}")
    try:
        print(f"cond {condition_number(f)}")
    except Exception:
        print("cond ?")
    sys.stdout.write(emit_matrix(f.delta, prec))
    return EXIT_OK


def cmd_solve(args) -> int:
    parsed, basis = _load_basis(args.infile)
    if basis.order != GREVLEX:
        raise _HypothesisError("solve expects a grevlex basis")
    run = fglm_shape_from_grevlex_run(basis)
    if run.basis is None:
        print(run.error, file=sys.stderr)
        return EXIT_PRECISION
    target = args.prec if args.prec else int(parsed.prec)
    lifted = hensel_lift_roots(run.basis, target)
    names = basis.ring.variables
    for point in lifted.points:
        parts = ", ".join(f"{n} = {format_scalar(b)}" for n, b in zip(names, point))
        print(f"solution: {parts}")
    for r in lifted.singular:
        print(f"singular residue root: {r} (skipped)", file=sys.stderr)
    if not lifted.points:
        print("no simple residue roots", file=sys.stderr)
    return EXIT_OK


def cmd_stats(args) -> int:
    degrees = tuple(int(d) for d in args.degrees.split(","))
    spec = ExperimentSpec(
        degrees=degrees,
        prime=args.prime,
        prec=args.prec,
        trials=args.trials,
        seed=args.seed,
        affine=args.affine,
    )
    stats = loss_statistics(spec, pipeline=args.pipeline, jobs=args.jobs)
    print(stats_table([stats]))
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        write_trials_csv(stats, outdir / "trials.csv")
        (outdir / "summary.txt").write_text(stats_table([stats]) + "\n")
        from .figures import render_report_figures

        paths = render_report_figures(stats, outdir)
        written = [str(outdir / "trials.csv"), str(outdir / "summary.txt")] + [str(p) for p in paths]
        print("wrote " + ", ".join(written), file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="padic-fglm",
        description="Change of monomial ordering for p-adic Groebner bases with certified precision tracking.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("convert", help="change the monomial ordering of a reduced basis")
    c.add_argument("--in", dest="infile", required=True, metavar="FILE")
    c.add_argument("--to", choices=ORDER_TAGS, default="lex")
    c.add_argument("--shape", action="store_true", help="use the shape-position fast path")
    c.add_argument("--report", metavar="FILE", help="write the precision-loss report as JSON")
    c.set_defaults(func=cmd_convert)

    s = sub.add_parser("snf", help="Smith normal form of a matrix file")
    s.add_argument("--matrix", required=True, metavar="FILE")
    s.add_argument("--precise", action="store_true", help="refine to the exact diagonal")
    s.set_defaults(func=cmd_snf)

    so = sub.add_parser("solve", help="shape-position pipeline plus root lifting")
    so.add_argument("--in", dest="infile", required=True, metavar="FILE")
    so.add_argument("--prec", type=int, default=0, help="target precision for lifted roots")
    so.set_defaults(func=cmd_solve)

    st = sub.add_parser("stats", help="precision-loss statistics over random systems")
    st.add_argument("--degrees", required=True, help="comma-separated, e.g. 3,3,3")
    st.add_argument("--prime", type=int, required=True)
    st.add_argument("--prec", type=int, required=True)
    st.add_argument("--trials", type=int, required=True)
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--affine", action="store_true")
    st.add_argument("--pipeline", choices=("general", "shape"), default="general")
    st.add_argument("--jobs", type=int, default=1)
    st.add_argument("--out", metavar="DIR", help="write trials.csv, summary and figures here")
    st.set_defaults(func=cmd_stats)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidPrime as exc:
        print(f"invalid prime: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InsufficientPrecision as exc:
        print(f"insufficient precision: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (NotZeroDimensional, NotSemiStable, NotShapePosition, _HypothesisError) as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
