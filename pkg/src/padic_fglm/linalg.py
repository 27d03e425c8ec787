"""Dense linear algebra over p-adic balls: Smith-normal-form (SNF)
factorizations with transform tracking, certified solving, and the
incremental column-append update.

Conventions.  A factorization stores transforms acting on the matrix:
``P * M * Q == delta`` with P row operations (val(det P) = 0) and Q
unimodular column operations (det Q = +-1).  The diagonal of ``delta``
carries the invariant factors p^a_1, ..., a_1 <= a_2 <= ...; trailing
entries may be indistinguishable from zero (rank not certified at the
working precision).  Because the transforms act on M, solving M X = Y
reads X = Q * diag(p^-a_i) * (P Y) with no extra inversion.

Elementary operations are normalized on the row side only, so Q stays
det +-1.  ``op_count`` tallies one unit per elementary row or column
elimination (axpy) across the full vector, the accounting under which
the append-update cost bound is stated; swaps and pivot normalizations
are bookkeeping.  Scalar work is tallied separately through an OpCounter
when one is supplied.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, InsufficientPrecision, MembershipViolated, RankNotCertified
from .padics import INF, Ball, PadicField


class OpCounter:
    """Field-operation tally, bucketed by a caller-set phase label."""

    __slots__ = ("tallies", "phase")

    def __init__(self):
        self.tallies = {}
        self.phase = "main"

    def add(self, k=1):
        t = self.tallies
        t[self.phase] = t.get(self.phase, 0) + k

    @property
    def total(self) -> int:
        return sum(self.tallies.values())

    def snapshot(self) -> dict:
        return dict(self.tallies)


class BallMatrix:
    """Immutable dense matrix of balls (row-major)."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: PadicField, entries):
        self.ring = ring
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged rows")

    @classmethod
    def identity(cls, ring: PadicField, n: int) -> "BallMatrix":
        one, zero = ring.one(), ring.zero()
        return cls(ring, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, ring: PadicField, columns) -> "BallMatrix":
        cols = [list(c) for c in columns]
        rows = len(cols[0])
        return cls(ring, [[cols[j][i] for j in range(len(cols))] for i in range(rows)])

    def column(self, j: int) -> list:
        return [self.entries[i][j] for i in range(self.rows)]

    def matvec(self, v, counter: OpCounter | None = None) -> list:
        if len(v) != self.cols:
            raise DimensionMismatch(f"matvec: {self.cols} columns vs vector of {len(v)}")
        out = []
        for row in self.entries:
            acc = self.ring.zero()
            for a, x in zip(row, v):
                if (a.val is None and a.prec == INF) or (x.val is None and x.prec == INF):
                    continue  # structural zero term
                acc = acc + a * x
                if counter is not None:
                    counter.add()
            out.append(acc)
        return out

    def matmul(self, other: "BallMatrix", counter: OpCounter | None = None) -> "BallMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch("matmul shapes")
        cols = [self.matvec(other.column(j), counter) for j in range(other.cols)]
        return BallMatrix.from_columns(self.ring, cols)

    def __repr__(self):
        return f"BallMatrix({self.rows}x{self.cols} over Q_{self.ring.p})"


@dataclass
class SnfFactorization:
    """Transforms and diagonal realizing P*M*Q == delta.

    ``diag_valuations`` lists the invariant-factor valuations; an entry is
    None when it has no significant digit at the working precision and the
    float infinity when structurally zero.  ``refined`` distinguishes the
    approximate factorization from the exactified one.
    """

    P: BallMatrix
    Q: BallMatrix
    delta: BallMatrix
    Pinv: BallMatrix | None
    Qinv: BallMatrix | None
    diag_valuations: tuple
    refined: bool
    op_count: int

    @property
    def full_rank_certified(self) -> bool:
        return all(isinstance(a, int) for a in self.diag_valuations)


def condition_number(f: SnfFactorization) -> int:
    """Largest invariant-factor valuation; requires certified full rank."""
    if not f.full_rank_certified:
        raise RankNotCertified("an invariant factor has no significant digit")
    return max(f.diag_valuations) if f.diag_valuations else 0


class _Elimination:
    """Mutable elimination state: working matrix plus tracked transforms.

    Each elementary operation is mirrored on the transforms (and their
    inverses when tracked) and counted once in ``vec_ops``.  Scalar work
    skips terms whose effect on both value and precision is nil, so noise
    entries do not inflate the field-op tally.
    """

    def __init__(self, ring, work, P, Pinv, Q, Qinv, counter):
        self.ring = ring
        self.M = work  # list of lists, mutated in place
        self.P = P
        self.Pinv = Pinv
        self.Q = Q
        self.Qinv = Qinv
        self.counter = counter
        self.vec_ops = 0
        self.rows = len(work)
        self.cols = len(work[0]) if work else 0

    # one fused multiply-add on balls counts as one field operation
    def _axpy_into(self, target, source, f):
        counter = self.counter
        fv = f.val_floor
        for k in range(len(target)):
            s = source[k]
            if s.val is None:
                if s.prec == INF or target[k].prec <= s.prec + fv:
                    continue  # no effect on value or precision
            target[k] = target[k] - f * s
            if counter is not None:
                counter.add()

    def _scale_into(self, target, c):
        counter = self.counter
        for k in range(len(target)):
            s = target[k]
            if s.val is None and (s.prec == INF or c.val_floor >= 0):
                continue
            target[k] = s * c
            if counter is not None:
                counter.add()

    def swap_rows(self, i, j):
        if i == j:
            return
        self.M[i], self.M[j] = self.M[j], self.M[i]
        self.P.entries[i], self.P.entries[j] = self.P.entries[j], self.P.entries[i]
        if self.Pinv is not None:
            for row in self.Pinv.entries:
                row[i], row[j] = row[j], row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.M:
            row[i], row[j] = row[j], row[i]
        for row in self.Q.entries:
            row[i], row[j] = row[j], row[i]
        if self.Qinv is not None:
            e = self.Qinv.entries
            e[i], e[j] = e[j], e[i]

    def scale_row(self, i, c):
        """Row i *= c for a unit c (absorbed into P; det valuation unchanged)."""
        self._scale_into(self.M[i], c)
        self._scale_into(self.P.entries[i], c)
        if self.Pinv is not None:
            cinv = c.inverse()
            for row in self.Pinv.entries:
                row[i] = row[i] * cinv

    def axpy_row(self, i, j, f):
        """Row i -= f * row j."""
        self._axpy_into(self.M[i], self.M[j], f)
        self._axpy_into(self.P.entries[i], self.P.entries[j], f)
        if self.Pinv is not None:
            # Pinv <- Pinv * E^-1: column j += f * column i
            for row in self.Pinv.entries:
                s = row[i]
                if s.val is None and (s.prec == INF or row[j].prec <= s.prec + f.val_floor):
                    continue
                row[j] = row[j] + f * s
        self.vec_ops += 1

    def axpy_col(self, j, k, f):
        """Column j -= f * column k."""
        fv = f.val_floor
        for row in self.M:
            s = row[k]
            if s.val is None and (s.prec == INF or row[j].prec <= s.prec + fv):
                continue
            row[j] = row[j] - f * s
            if self.counter is not None:
                self.counter.add()
        for row in self.Q.entries:
            s = row[k]
            if s.val is None and (s.prec == INF or row[j].prec <= s.prec + fv):
                continue
            row[j] = row[j] - f * s
        if self.Qinv is not None:
            # Qinv <- E^-1 * Qinv: row k += f * row j
            self._axpy_into_add(self.Qinv.entries[k], self.Qinv.entries[j], f)
        self.vec_ops += 1

    def _axpy_into_add(self, target, source, f):
        fv = f.val_floor
        for k in range(len(target)):
            s = source[k]
            if s.val is None and (s.prec == INF or target[k].prec <= s.prec + fv):
                continue
            target[k] = target[k] + f * s

    def reduce_to_diagonal(self, start=0):
        """Min-valuation pivoting sweep from diagonal position ``start``."""
        rows, cols = self.rows, self.cols
        t = start
        limit = min(rows, cols)
        while t < limit:
            pivot = None
            best = None
            for i in range(t, rows):
                row = self.M[i]
                for j in range(t, cols):
                    e = row[j]
                    if e.val is None:
                        continue
                    if best is None or e.val < best:
                        best, pivot = e.val, (i, j)
            if pivot is None:
                break
            i, j = pivot
            self.swap_rows(t, i)
            self.swap_cols(t, j)
            piv = self.M[t][t]
            a = piv.val
            if piv.unit != 1:
                self.scale_row(t, piv.shift(-a).inverse())
            for i in range(rows):
                if i == t:
                    continue
                e = self.M[i][t]
                if e.val is not None:
                    self.axpy_row(i, t, e.shift(-a))
            for j in range(cols):
                if j == t:
                    continue
                e = self.M[t][j]
                if e.val is not None:
                    self.axpy_col(j, t, e.shift(-a))
            t += 1

    def diag_valuations(self):
        out = []
        for k in range(min(self.rows, self.cols)):
            e = self.M[k][k]
            if e.val is not None:
                out.append(e.val)
            elif e.prec == INF:
                out.append(INF)
            else:
                out.append(None)
        return tuple(out)


def _copy_entries(mat: BallMatrix):
    return [list(row) for row in mat.entries]


def snf_approximate(
    M: BallMatrix, with_inverses: bool = False, counter: OpCounter | None = None
) -> SnfFactorization:
    """Approximate SNF by min-valuation pivoting; entries of the diagonal
    become exactly-valued p^a pivots, off-diagonal entries keep only their
    precision.  Rank deficiency shows up as non-significant trailing
    diagonal entries, never as an error."""
    ring = M.ring
    work = _copy_entries(M)
    P = BallMatrix.identity(ring, M.rows)
    Q = BallMatrix.identity(ring, M.cols)
    Pinv = BallMatrix.identity(ring, M.rows) if with_inverses else None
    Qinv = BallMatrix.identity(ring, M.cols) if with_inverses else None
    elim = _Elimination(ring, work, P, Pinv, Q, Qinv, counter)
    elim.reduce_to_diagonal()
    return SnfFactorization(
        P=P,
        Q=Q,
        delta=BallMatrix(ring, work),
        Pinv=Pinv,
        Qinv=Qinv,
        diag_valuations=elim.diag_valuations(),
        refined=False,
        op_count=elim.vec_ops,
    )


def snf_precise(f: SnfFactorization, counter: OpCounter | None = None) -> SnfFactorization:
    """Refine an approximate factorization of a full-rank matrix into the
    exact SNF: the diagonal becomes exactly p^a_i, off-diagonals exactly
    zero, and the transforms absorb the precision cost of that claim."""
    if not f.full_rank_certified:
        raise RankNotCertified("cannot refine: rank not certified")
    ring = f.P.ring
    work = _copy_entries(f.delta)
    P = BallMatrix(ring, _copy_entries(f.P))
    Q = BallMatrix(ring, _copy_entries(f.Q))
    Pinv = BallMatrix(ring, _copy_entries(f.Pinv)) if f.Pinv is not None else None
    Qinv = BallMatrix(ring, _copy_entries(f.Qinv)) if f.Qinv is not None else None
    elim = _Elimination(ring, work, P, Pinv, Q, Qinv, counter)
    rows, cols = elim.rows, elim.cols
    t = min(rows, cols)
    by_rows = rows >= cols
    for i in range(t):
        piv = work[i][i]
        a = piv.val
        if piv.unit != 1:
            elim.scale_row(i, piv.shift(-a).inverse())
        if by_rows:
            for r in range(rows):
                if r != i and not (work[r][i].val is None and work[r][i].prec == INF):
                    elim.axpy_row(r, i, work[r][i].shift(-a))
        else:
            for c in range(cols):
                if c != i and not (work[i][c].val is None and work[i][c].prec == INF):
                    elim.axpy_col(c, i, work[i][c].shift(-a))
    exact_zero = ring.zero()
    diag = [[exact_zero for _ in range(cols)] for _ in range(rows)]
    for i, a in enumerate(f.diag_valuations):
        diag[i][i] = ring.uniformizer_power(a)
    return SnfFactorization(
        P=P,
        Q=Q,
        delta=BallMatrix(ring, diag),
        Pinv=Pinv,
        Qinv=Qinv,
        diag_valuations=f.diag_valuations,
        refined=True,
        op_count=f.op_count + elim.vec_ops,
    )


def snf_update(f: SnfFactorization, v, counter: OpCounter | None = None) -> SnfFactorization:
    """Approximate SNF of [M | v] from an approximate SNF of M.

    The column transforms are trivially augmented, the new column is moved
    through P, and the diagonal-plus-one-column matrix is re-swept; the
    number of elementary operations added is at most (cols + 1) * rows.
    """
    ring = f.P.ring
    if len(v) != f.P.rows:
        raise DimensionMismatch("appended column has the wrong length")
    w = f.P.matvec(v, counter)
    work = [row + [w[i]] for i, row in enumerate(_copy_entries(f.delta))]
    P = BallMatrix(ring, _copy_entries(f.P))
    Pinv = BallMatrix(ring, _copy_entries(f.Pinv)) if f.Pinv is not None else None
    zero, one = ring.zero(), ring.one()
    q = _copy_entries(f.Q)
    for row in q:
        row.append(zero)
    q.append([zero] * f.Q.cols + [one])
    Q = BallMatrix(ring, q)
    Qinv = None
    if f.Qinv is not None:
        qi = _copy_entries(f.Qinv)
        for row in qi:
            row.append(zero)
        qi.append([zero] * f.Qinv.cols + [one])
        Qinv = BallMatrix(ring, qi)
    elim = _Elimination(ring, work, P, Pinv, Q, Qinv, counter)
    elim.reduce_to_diagonal()
    return SnfFactorization(
        P=P,
        Q=Q,
        delta=BallMatrix(ring, work),
        Pinv=Pinv,
        Qinv=Qinv,
        diag_valuations=elim.diag_valuations(),
        refined=False,
        op_count=f.op_count + elim.vec_ops,
    )


def solve_refined(f: SnfFactorization, Y, counter: OpCounter | None = None) -> list:
    """Solve M X = Y through a refined factorization of M (rows >= cols).
    Coordinates of P*Y beyond the diagonal must be indistinguishable from
    zero, otherwise Y provably sits outside the image."""
    if not f.refined:
        raise ValueError("solve needs a refined factorization")
    z = f.P.matvec(Y, counter)
    m = f.Q.cols
    for i in range(m, len(z)):
        if not z[i].is_zero():
            raise MembershipViolated(
                f"coordinate {i + 1} of the transformed right-hand side is significant"
            )
    xt = [z[i].shift(-f.diag_valuations[i]) for i in range(m)]
    return f.Q.matvec(xt, counter)


def solve_square(M: BallMatrix, Y, counter: OpCounter | None = None) -> list:
    """Solve M X = Y for square invertible M with certified precision
    at least l - 2 cond(M)."""
    if M.rows != M.cols:
        raise DimensionMismatch("solve_square needs a square matrix")
    if len(Y) != M.rows:
        raise DimensionMismatch("right-hand side length mismatch")
    f = snf_approximate(M, with_inverses=False, counter=counter)
    if not f.full_rank_certified:
        raise InsufficientPrecision("matrix rank not certified at this precision")
    return solve_refined(snf_precise(f, counter), Y, counter)


def solve_in_image(M: BallMatrix, Y, counter: OpCounter | None = None) -> list:
    """Solve M X = Y for a full-rank tall matrix under the assumption
    Y in Im(M); raises MembershipViolated when a discarded coordinate
    keeps a significant digit."""
    if M.rows < M.cols:
        raise DimensionMismatch("solve_in_image expects rows >= cols")
    if len(Y) != M.rows:
        raise DimensionMismatch("right-hand side length mismatch")
    f = snf_approximate(M, with_inverses=False, counter=counter)
    if not f.full_rank_certified:
        raise InsufficientPrecision("matrix rank not certified at this precision")
    return solve_refined(snf_precise(f, counter), Y, counter)


def ball_det(M: BallMatrix) -> Ball:
    """Determinant by plain elimination; used for unimodularity checks."""
    if M.rows != M.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    ring = M.ring
    work = _copy_entries(M)
    n = M.rows
    det = ring.one()
    for t in range(n):
        pivot = None
        best = None
        for i in range(t, n):
            e = work[i][t]
            if e.val is None:
                continue
            if best is None or e.val < best:
                best, pivot = e.val, i
        if pivot is None:
            floor = min(work[i][t].prec for i in range(t, n))
            return ring.zero(floor if det.val is None else floor + det.val)
        if pivot != t:
            work[t], work[pivot] = work[pivot], work[t]
            det = -det
        piv = work[t][t]
        det = det * piv
        inv = piv.inverse()
        for i in range(t + 1, n):
            e = work[i][t]
            if e.val is None:
                continue
            fctr = e * inv
            for j in range(t, n):
                work[i][j] = work[i][j] - fctr * work[t][j]
    return det
