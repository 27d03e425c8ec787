"""Randomized measurement of the precision loss of the change of
ordering, mirroring the reference experimental protocol: draw square
systems with Haar-uniform coefficients, build the exact reduced grevlex
basis of the rational lift, truncate, convert to lex, and record the
observed loss per trial.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .errors import DegreeBlowup, NotSemiStable, NotShapePosition, NotZeroDimensional
from .exact import ExactPoly, exact_buchberger, embed_basis
from .fglm import fglm_change_order_run, fglm_shape_from_grevlex_run
from .orders import GREVLEX, LEX
from .padics import PadicField
from .polynomials import OrderedPoly, PolyRing


@dataclass
class ExperimentSpec:
    """One row of the experiment grid: a square system shape plus the
    p-adic context.  ``fast`` is recorded in logs only."""

    degrees: tuple
    prime: int
    prec: int
    trials: int
    seed: int
    affine: bool = False
    fast: bool = False

    def __post_init__(self):
        self.degrees = tuple(self.degrees)
        if not self.degrees:
            raise ValueError("empty degree list")

    @property
    def nvars(self) -> int:
        return len(self.degrees)

    @property
    def macaulay_bound(self) -> int:
        return sum(d - 1 for d in self.degrees) + 1

    def trial_seed(self, index: int) -> int:
        return self.seed * 1_000_003 + index


@dataclass
class TrialRecord:
    index: int
    seed: int
    status: str  # ok | generation_failed | conversion_failed
    quotient_dim: int | None = None
    cond: int | None = None
    min_coeff_val: int | None = None
    observed_loss: float | None = None
    predicted_loss: int | None = None
    field_ops: int | None = None
    error: str | None = None


@dataclass
class LossStats:
    """Aggregate over one spec: max/mean loss over the successful trials
    and the failure counts as (generation, conversion)."""

    spec: ExperimentSpec
    pipeline: str
    max_loss: float
    mean_loss: float
    generation_failures: int
    conversion_failures: int
    records: list = field(default_factory=list)

    @property
    def failures(self) -> tuple:
        return (self.generation_failures, self.conversion_failures)


def monomials_up_to(nvars: int, degree: int, affine: bool):
    degrees = range(degree + 1) if affine else (degree,)
    for d in degrees:
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            yield tuple(e)


def _draw_coefficients(spec: ExperimentSpec, trial: int):
    """The trial's coefficient stream: lists of (monomial, integer draw)."""
    rng = random.Random(spec.trial_seed(trial))
    bound = spec.prime**spec.prec
    return [
        [(mono, rng.randrange(bound)) for mono in monomials_up_to(spec.nvars, d, spec.affine)]
        for d in spec.degrees
    ]


def random_system(spec: ExperimentSpec, trial: int = 0):
    """Seeded dense polynomials of the given degrees with coefficients
    uniform in [0, p^N), read at precision O(p^N)."""
    ring = PolyRing(PadicField(spec.prime), tuple(f"x{i+1}" for i in range(spec.nvars)))
    return [
        OrderedPoly(ring, {mono: ring.field.ball(c, spec.prec) for mono, c in draws})
        for draws in _draw_coefficients(spec, trial)
    ]


def _random_lift(spec: ExperimentSpec, trial: int):
    """Integer lift of the trial's system (the drawn coefficients are the
    canonical lifts)."""
    return [
        ExactPoly(spec.nvars, {mono: c for mono, c in draws if c})
        for draws in _draw_coefficients(spec, trial)
    ]


def run_trial(spec: ExperimentSpec, trial: int, pipeline: str = "general") -> TrialRecord:
    rec = TrialRecord(index=trial, seed=spec.trial_seed(trial), status="ok")
    lift = _random_lift(spec, trial)
    try:
        gb = exact_buchberger(lift, GREVLEX)
    except (NotZeroDimensional, DegreeBlowup, ValueError) as exc:
        rec.status = "generation_failed"
        rec.error = str(exc)
        return rec
    ring = PolyRing(PadicField(spec.prime), tuple(f"x{i+1}" for i in range(spec.nvars)))
    basis = embed_basis(gb, ring, GREVLEX, spec.prec)
    rec.quotient_dim = basis.quotient_dimension
    rec.min_coeff_val = basis.min_coeff_val
    try:
        if pipeline == "shape":
            run = fglm_shape_from_grevlex_run(basis)
        else:
            run = fglm_change_order_run(basis, LEX)
    except (NotSemiStable, NotShapePosition) as exc:
        rec.status = "conversion_failed"
        rec.error = str(exc)
        return rec
    rec.cond = run.report.cond
    rec.field_ops = sum(run.report.op_counts.values())
    if run.basis is None:
        rec.status = "conversion_failed"
        rec.error = run.error
        return rec
    rec.observed_loss = run.report.observed_loss
    rec.predicted_loss = (
        run.report.predicted_loss_shape if pipeline == "shape" else run.report.predicted_loss_general
    )
    return rec


def loss_statistics(spec: ExperimentSpec, pipeline: str = "general", jobs: int = 1) -> LossStats:
    """Run every trial of the spec and aggregate max/mean loss over the
    successes; failures are data, split into generation and conversion."""
    if pipeline not in ("general", "shape"):
        raise ValueError("pipeline must be 'general' or 'shape'")
    records = []
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_trial_task, [(spec, t, pipeline) for t in range(spec.trials)]))
    else:
        for t in range(spec.trials):
            records.append(run_trial(spec, t, pipeline))
    losses = [r.observed_loss for r in records if r.status == "ok"]
    return LossStats(
        spec=spec,
        pipeline=pipeline,
        max_loss=max(losses) if losses else 0,
        mean_loss=sum(losses) / len(losses) if losses else 0,
        generation_failures=sum(r.status == "generation_failed" for r in records),
        conversion_failures=sum(r.status == "conversion_failed" for r in records),
        records=records,
    )


def _trial_task(args):
    spec, t, pipeline = args
    return run_trial(spec, t, pipeline)


TABLE_HEADER = ("d", "trials", "aff.", "fast", "D", "p", "max", "mean", "fail")


def stats_table(rows) -> str:
    """Plain-text table over (spec, stats) pairs in the reference layout."""
    cells = [TABLE_HEADER]
    for stats in rows:
        spec = stats.spec
        cells.append(
            (
                "[" + ",".join(str(d) for d in spec.degrees) + "]",
                str(spec.trials),
                "yes" if spec.affine else "no",
                "yes" if spec.fast else "no",
                str(spec.macaulay_bound),
                str(spec.prime),
                str(stats.max_loss),
                f"{stats.mean_loss:.2f}",
                f"({stats.generation_failures},{stats.conversion_failures})",
            )
        )
    widths = [max(len(row[i]) for row in cells) for i in range(len(TABLE_HEADER))]
    lines = []
    for i, row in enumerate(cells):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("-" * (sum(widths) + 2 * (len(widths) - 1)))
    return "\n".join(lines)


CSV_FIELDS = (
    "trial",
    "seed",
    "status",
    "quotient_dim",
    "cond",
    "min_coeff_val",
    "observed_loss",
    "predicted_loss",
    "field_ops",
    "error",
)


def write_trials_csv(stats: LossStats, path):
    """Machine-readable one-line-per-trial log."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_FIELDS)
        for r in stats.records:
            w.writerow(
                [
                    r.index,
                    r.seed,
                    r.status,
                    r.quotient_dim,
                    r.cond,
                    r.min_coeff_val,
                    r.observed_loss,
                    r.predicted_loss,
                    r.field_ops,
                    r.error or "",
                ]
            )
