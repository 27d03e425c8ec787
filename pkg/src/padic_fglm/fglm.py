"""Change of monomial ordering for approximate Groebner bases.

The driver keeps, at every step, an approximate SNF factorization of the
matrix of normal-form columns accepted so far.  A candidate monomial is
independent exactly when the transformed column keeps a significant digit
below the current rank; dependent candidates are resolved into basis
relations through the refined factorization.  The run succeeds only when
the number of accepted monomials matches the quotient dimension, and the
result ships with a precision-loss report comparing the observed loss to
the certified budget.

The grevlex entry point for ideals in shape position skips the generic
candidate loop entirely: the last multiplication matrix is read off the
input basis (no arithmetic), its power columns are factored once, and one
solve per variable reconstructs the univariate presentation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    InsufficientPrecision,
    MembershipViolated,
    NotSemiStable,
    NotZeroDimensional,
    RankNotCertified,
)
from .linalg import (
    BallMatrix,
    OpCounter,
    SnfFactorization,
    condition_number,
    snf_approximate,
    snf_precise,
    snf_update,
    solve_refined,
)
from .orders import (
    GREVLEX,
    LEX,
    mono_div,
    mono_divides,
    mono_mul,
    sort_key,
    unit_monomial,
    var_monomial,
)
from .padics import INF
from .polynomials import GroebnerBasis, OrderedPoly, normal_form


@dataclass
class LossReport:
    """Observed versus certified precision loss for one run.

    ``predicted_loss_general`` is n^2 (delta+1)^2 |min(beta,0)| + 2 cond and
    ``predicted_loss_shape`` is delta |min(beta,0)| + 2 cond, with beta the
    smallest input tail valuation and cond the realized condition number of
    the change of ordering.  ``bound_variants`` records both sign readings
    of the output-precision formulas for inspection; the package tests the
    min(beta, 0) convention.
    """

    variant: str
    input_prec: float
    nvars: int
    quotient_dim: int
    min_coeff_val: int
    min_coeff_val_neg: int
    cond: int | None
    observed_loss: float | None
    predicted_loss_general: int | None
    predicted_loss_shape: int | None
    shape_loss_signed: int | None
    op_counts: dict = field(default_factory=dict)
    bound_variants: dict = field(default_factory=dict)
    ok: bool = True
    error: str | None = None

    @property
    def within_budget(self) -> bool | None:
        if not self.ok or self.observed_loss is None:
            return None
        budget = (
            self.predicted_loss_shape
            if self.variant == "shape"
            else self.predicted_loss_general
        )
        return self.observed_loss <= budget


@dataclass
class FglmRun:
    """Everything a run produced: the basis (or None on failure), the live
    factorization's data and the loss report."""

    basis: GroebnerBasis | None
    report: LossReport
    error: str | None = None
    accepted: list = field(default_factory=list)


def precision_loss_report(run: FglmRun) -> LossReport:
    """The per-run ledger of observed vs predicted precision loss."""
    return run.report


def _observed_loss(G_in: GroebnerBasis, out: GroebnerBasis):
    if G_in.prec == INF:
        return 0
    worst = min((g.min_precision() for g in out.polys))
    if worst == INF:
        return 0
    return G_in.prec - worst


def _make_report(variant, G, cond, out, counter, error=None):
    n, delta = G.nvars, G.quotient_dimension
    beta = G.min_coeff_val
    beta_neg = min(beta, 0)
    pred_general = pred_shape = signed = None
    variants = {}
    if cond is not None:
        pred_general = n * n * (delta + 1) ** 2 * abs(beta_neg) + 2 * cond
        pred_shape = delta * abs(beta_neg) + 2 * cond
        signed = -delta * beta + 2 * cond
        if G.prec != INF:
            variants = {
                "general_plus_beta": G.prec + n * n * (delta + 1) ** 2 * beta - 2 * cond,
                "general_minus_beta": G.prec - n * n * (delta + 1) ** 2 * beta - 2 * cond,
                "shape_signed": G.prec + delta * beta - 2 * cond,
            }
    return LossReport(
        variant=variant,
        input_prec=G.prec,
        nvars=n,
        quotient_dim=delta,
        min_coeff_val=beta,
        min_coeff_val_neg=beta_neg,
        cond=cond,
        observed_loss=None if out is None else _observed_loss(G, out),
        predicted_loss_general=pred_general,
        predicted_loss_shape=pred_shape,
        shape_loss_signed=signed,
        op_counts=counter.snapshot(),
        bound_variants=variants,
        ok=error is None,
        error=error,
    )


# ---------------------------------------------------------------------------
# multiplication matrices
# ---------------------------------------------------------------------------


def multiplication_matrices(G: GroebnerBasis, counter: OpCounter | None = None) -> list:
    """The matrices of multiplication by each variable on A/I in the
    staircase basis.  Columns are unit vectors for standard products, read
    off the basis tails for minimal leading monomials, and otherwise one
    matrix-vector product against an already-known column."""
    ring = G.ring
    field_ = ring.field
    B = G.staircase
    if not B:
        raise NotZeroDimensional("unit ideal has no staircase")
    index = {u: k for k, u in enumerate(B)}
    delta = len(B)
    n = ring.nvars
    lm_map = {g.leading_monomial(G.order): g for g in G.polys}
    zero, one = field_.zero(), field_.one()

    # Noise coefficients of a column may multiply columns that are not
    # built yet; their contribution is bounded through the valuation floor
    # of the multiplication-matrix entries.
    noise_floor = min(0, n * delta * G.min_coeff_val)

    columns = [[None] * delta for _ in range(n)]
    nf_cols: dict = {}
    products = sorted(
        {mono_mul(var_monomial(n, i), eps) for i in range(n) for eps in B},
        key=lambda u: sort_key(G.order, u),
    )
    for u in products:
        if u in index:
            col = [one if k == index[u] else zero for k in range(delta)]
        elif u in lm_map:
            g = lm_map[u]
            col = [-G.tail_coefficient(g, eps) for eps in B]
        else:
            # a quotient outside the staircase always exists here, and its
            # significant support only references columns already built
            cands = [
                i for i in range(n) if u[i] > 0 and mono_div(u, var_monomial(n, i)) not in index
            ]
            j = min(cands, key=lambda i: sort_key(G.order, var_monomial(n, i)))
            v = mono_div(u, var_monomial(n, j))
            col = _columns_matvec(columns[j], nf_cols[v], field_, noise_floor, counter)
        nf_cols[u] = col
        for i in range(n):
            if u[i] > 0:
                parent = mono_div(u, var_monomial(n, i))
                k = index.get(parent)
                if k is not None:
                    columns[i][k] = col
    return [BallMatrix.from_columns(field_, cols) for cols in columns]


def _columns_matvec(cols, V, field_, noise_floor, counter):
    """sum_k V[k] * cols[k] for column-major storage; entries of V with no
    significant digit whose column is still unknown contribute only a
    precision cap derived from the valuation floor."""
    delta = len(V)
    out = [field_.zero() for _ in range(delta)]
    cap = INF
    for k, vk in enumerate(V):
        if vk.val is None and vk.prec == INF:
            continue
        col = cols[k]
        if col is None:
            cap = min(cap, vk.prec + noise_floor)
            continue
        for r in range(delta):
            a = col[r]
            if a.val is None and a.prec == INF:
                continue
            out[r] = out[r] + a * vk
            if counter is not None:
                counter.add()
    if cap != INF:
        noise = field_.zero(cap)
        out = [x + noise for x in out]
    return out


# ---------------------------------------------------------------------------
# the general change of ordering
# ---------------------------------------------------------------------------


def fglm_change_order_run(G: GroebnerBasis, order2: str) -> FglmRun:
    """Run the stabilized change of ordering; never raises on precision
    shortage, recording the failure in the report instead."""
    import heapq

    ring = G.ring
    field_ = ring.field
    n = ring.nvars
    delta = G.quotient_dimension
    counter = OpCounter()
    counter.phase = "multiplication_matrices"
    T = multiplication_matrices(G, counter)

    counter.phase = "candidates"
    one_mono = unit_monomial(n)
    e0 = [field_.one()] + [field_.zero()] * (delta - 1)
    B2 = [one_mono]
    vectors = [e0]
    counter.phase = "snf"
    snf = snf_approximate(BallMatrix.from_columns(field_, [e0]), with_inverses=True, counter=counter)
    emitted: list = []
    out_polys: list = []

    heap = []
    seen = {one_mono}
    for i in range(n):
        m = var_monomial(n, i)
        heapq.heappush(heap, (sort_key(order2, m), 0, i, m))
        seen.add(m)

    guard = 4 * n * delta + 4 * n
    while heap:
        guard -= 1
        if guard < 0:
            raise RuntimeError("candidate loop exceeded its iteration budget")
        _, j, i, mono = heapq.heappop(heap)
        if any(mono_divides(lm, mono) for lm in emitted):
            continue
        counter.phase = "candidates"
        v = T[i].matvec(vectors[j], counter)
        s = len(B2)
        lam = snf.P.matvec(v, counter)
        if all(lam[r].is_zero() for r in range(s, delta)):
            counter.phase = "solve"
            try:
                refined = snf_precise(snf, counter)
                W = solve_refined(refined, v, counter)
            except (RankNotCertified, MembershipViolated) as exc:
                msg = f"not enough precision: {exc}"
                report = _make_report("general", G, _cond_or_none(snf), None, counter, error=msg)
                return FglmRun(basis=None, report=report, error=msg, accepted=list(B2))
            terms = {mono: field_.one()}
            for l, w in enumerate(W):
                # output knowledge is capped by the input precision
                terms[B2[l]] = (-w).cap(G.prec)
            out_polys.append(OrderedPoly(ring, terms))
            emitted.append(mono)
        else:
            B2.append(mono)
            vectors.append(v)
            counter.phase = "snf"
            snf = snf_update(snf, v, counter)
            for l in range(n):
                m2 = mono_mul(mono, var_monomial(n, l))
                if m2 not in seen and not any(mono_divides(lm, m2) for lm in emitted):
                    seen.add(m2)
                    heapq.heappush(heap, (sort_key(order2, m2), s, l, m2))

    cond = _cond_or_none(snf)
    if len(B2) != delta:
        msg = (
            f"not enough precision: {len(B2)} independent monomials certified, "
            f"the quotient has dimension {delta}"
        )
        report = _make_report("general", G, cond, None, counter, error=msg)
        return FglmRun(basis=None, report=report, error=msg, accepted=list(B2))
    try:
        basis = GroebnerBasis(out_polys, order2, ring)
        if basis.staircase != B2:
            raise ValueError("accepted monomials do not match the output staircase")
    except (NotZeroDimensional, ValueError) as exc:
        msg = f"not enough precision: inconsistent output basis ({exc})"
        report = _make_report("general", G, cond, None, counter, error=msg)
        return FglmRun(basis=None, report=report, error=msg, accepted=list(B2))
    report = _make_report("general", G, cond, basis, counter)
    return FglmRun(basis=basis, report=report, accepted=list(B2))


def _cond_or_none(f: SnfFactorization):
    try:
        return condition_number(f)
    except RankNotCertified:
        return None


def fglm_change_order(G: GroebnerBasis, order2: str) -> GroebnerBasis:
    """Reduced basis of the same ideal for ``order2``; raises
    InsufficientPrecision when the run cannot be certified."""
    run = fglm_change_order_run(G, order2)
    if run.basis is None:
        raise InsufficientPrecision(run.error)
    return run.basis


# ---------------------------------------------------------------------------
# shape position fast path
# ---------------------------------------------------------------------------


def is_semi_stable(leading_monomials) -> bool:
    """Swapping one factor of the last variable for any earlier variable
    keeps every leading monomial inside the ideal (checked on the minimal
    generators, which is equivalent)."""
    lms = list(leading_monomials)
    if not lms:
        return False
    n = len(lms[0])
    last = n - 1
    for m in lms:
        if m[last] == 0:
            continue
        for k in range(n - 1):
            swapped = tuple(
                e + 1 if idx == k else (e - 1 if idx == last else e) for idx, e in enumerate(m)
            )
            if not any(mono_divides(g, swapped) for g in lms):
                return False
    return True


def read_shape_inputs(G: GroebnerBasis):
    """The multiplication matrix of the last variable and the normal forms
    of the first n-1 variables, assembled purely by copying coefficients
    out of a semi-stable grevlex basis (zero field operations)."""
    if G.order != GREVLEX:
        raise ValueError("shape inputs are read from a grevlex basis")
    lms = G.leading_monomials()
    if not is_semi_stable(lms):
        raise NotSemiStable("leading monomials are not semi-stable for the last variable")
    ring = G.ring
    field_ = ring.field
    n = ring.nvars
    B = G.staircase
    index = {u: k for k, u in enumerate(B)}
    delta = len(B)
    lm_map = {g.leading_monomial(G.order): g for g in G.polys}
    zero, one = field_.zero(), field_.one()

    def column_for(u):
        if u in index:
            return [one if k == index[u] else zero for k in range(delta)]
        if u in lm_map:
            g = lm_map[u]
            return [-G.tail_coefficient(g, eps) for eps in B]
        raise NotSemiStable(f"normal form of {u} is not readable from the basis")

    xn = var_monomial(n, n - 1)
    tn_cols = [column_for(mono_mul(xn, eps)) for eps in B]
    Tn = BallMatrix.from_columns(field_, tn_cols)
    ys = [column_for(var_monomial(n, i)) for i in range(n - 1)]
    return Tn, ys


def fglm_shape_from_grevlex_run(G: GroebnerBasis) -> FglmRun:
    """Shape-position change of ordering from grevlex to lex."""
    ring = G.ring
    field_ = ring.field
    n = ring.nvars
    delta = G.quotient_dimension
    counter = OpCounter()
    counter.phase = "read_inputs"
    Tn, ys = read_shape_inputs(G)

    counter.phase = "power_columns"
    z = [[field_.one()] + [field_.zero()] * (delta - 1)]
    for _ in range(delta):
        z.append(Tn.matvec(z[-1], counter))
    M = BallMatrix.from_columns(field_, z[:delta])

    counter.phase = "snf"
    f = snf_approximate(M, with_inverses=False, counter=counter)
    if not f.full_rank_certified:
        msg = (
            "not enough precision: the power columns of the last variable "
            "do not certify full rank"
        )
        report = _make_report("shape", G, None, None, counter, error=msg)
        return FglmRun(basis=None, report=report, error=msg)
    refined = snf_precise(f, counter)
    cond = condition_number(f)

    counter.phase = "solve"
    xn = var_monomial(n, n - 1)
    out_polys = []
    try:
        for i in range(n - 1):
            U = solve_refined(refined, ys[i], counter)
            terms = {var_monomial(n, i): field_.one()}
            for k, c in enumerate(U):
                terms[tuple(0 if t < n - 1 else k for t in range(n))] = (-c).cap(G.prec)
            out_polys.append(OrderedPoly(ring, terms))
        U = solve_refined(refined, z[delta], counter)
        terms = {tuple(0 if t < n - 1 else delta for t in range(n)): field_.one()}
        for k, c in enumerate(U):
            terms[tuple(0 if t < n - 1 else k for t in range(n))] = (-c).cap(G.prec)
        out_polys.append(OrderedPoly(ring, terms))
    except MembershipViolated as exc:
        msg = f"not enough precision: {exc}"
        report = _make_report("shape", G, cond, None, counter, error=msg)
        return FglmRun(basis=None, report=report, error=msg)
    basis = GroebnerBasis(out_polys, LEX, ring)
    report = _make_report("shape", G, cond, basis, counter)
    return FglmRun(basis=basis, report=report)


def fglm_shape_from_grevlex(G: GroebnerBasis) -> GroebnerBasis:
    run = fglm_shape_from_grevlex_run(G)
    if run.basis is None:
        raise InsufficientPrecision(run.error)
    return run.basis


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------


def compute_change_condition(G: GroebnerBasis, B2) -> int:
    """Condition number of the change of ordering: the matrix of normal
    forms (under G's order) of the target staircase, factored once."""
    ring = G.ring
    cols = []
    for mono in B2:
        nf = normal_form(G, ring.monomial(mono))
        col = [nf.coefficient(eps) for eps in G.staircase]
        cols.append(col)
    M = BallMatrix.from_columns(ring.field, cols)
    return condition_number(snf_approximate(M))
