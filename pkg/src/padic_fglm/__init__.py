"""Change of monomial ordering for Groebner bases over Q_p at finite
precision, with Smith-normal-form linear algebra and certified loss
tracking, plus an exact rational oracle and an experiment harness."""

from . import errors
from .exact import ExactPoly, exact_buchberger, exact_fglm, embed_basis, embed_poly
from .experiments import ExperimentSpec, LossStats, TrialRecord, loss_statistics, random_system
from .fglm import (
    FglmRun,
    LossReport,
    compute_change_condition,
    fglm_change_order,
    fglm_change_order_run,
    fglm_shape_from_grevlex,
    fglm_shape_from_grevlex_run,
    is_semi_stable,
    multiplication_matrices,
    precision_loss_report,
    read_shape_inputs,
)
from .lifting import LiftedRoots, hensel_lift_roots
from .linalg import (
    BallMatrix,
    OpCounter,
    SnfFactorization,
    ball_det,
    condition_number,
    snf_approximate,
    snf_precise,
    snf_update,
    solve_in_image,
    solve_square,
)
from .orders import (
    DEGLEX,
    GREVLEX,
    LEX,
    ORDER_TAGS,
    compare_monomials,
    sort_key,
    staircase,
)
from .padics import INF, Ball, PadicField, format_scalar
from .polynomials import GroebnerBasis, OrderedPoly, PolyRing, is_reduced_groebner, normal_form
from .textio import emit_basis, parse_system

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "BallMatrix",
    "DEGLEX",
    "ExactPoly",
    "ExperimentSpec",
    "FglmRun",
    "GREVLEX",
    "GroebnerBasis",
    "INF",
    "LEX",
    "LiftedRoots",
    "LossReport",
    "LossStats",
    "OpCounter",
    "ORDER_TAGS",
    "OrderedPoly",
    "PadicField",
    "PolyRing",
    "SnfFactorization",
    "TrialRecord",
    "ball_det",
    "compare_monomials",
    "compute_change_condition",
    "condition_number",
    "embed_basis",
    "embed_poly",
    "emit_basis",
    "errors",
    "exact_buchberger",
    "exact_fglm",
    "fglm_change_order",
    "fglm_change_order_run",
    "fglm_shape_from_grevlex",
    "fglm_shape_from_grevlex_run",
    "format_scalar",
    "hensel_lift_roots",
    "is_reduced_groebner",
    "is_semi_stable",
    "loss_statistics",
    "multiplication_matrices",
    "normal_form",
    "parse_system",
    "precision_loss_report",
    "random_system",
    "read_shape_inputs",
    "snf_approximate",
    "snf_precise",
    "snf_update",
    "solve_in_image",
    "solve_square",
    "sort_key",
    "staircase",
]
