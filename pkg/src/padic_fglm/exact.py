"""Exact rational ground truth: Buchberger's algorithm, classical change
of ordering by linear algebra, and embedding of exact bases at finite
p-adic precision.

Coefficients use gmpy2 rationals when available (big-integer gcds
dominate the running time on large random systems) and fall back to
fractions.Fraction otherwise.
"""

from __future__ import annotations

from .errors import DegreeBlowup, NotZeroDimensional
from .orders import (
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    sort_key,
    staircase,
    total_degree,
    unit_monomial,
)
from .padics import INF
from .polynomials import GroebnerBasis, OrderedPoly, PolyRing

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ

_ZERO = QQ(0)
_ONE = QQ(1)


class ExactPoly:
    """Multivariate polynomial with exact rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for u, c in terms.items():
                c = QQ(c)
                if c:
                    self.terms[u] = c

    @classmethod
    def constant(cls, nvars: int, c) -> "ExactPoly":
        return cls(nvars, {unit_monomial(nvars): QQ(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def leading_monomial(self, order: str):
        return max(self.terms, key=lambda u: sort_key(order, u))

    def total_degree(self) -> int:
        return max((total_degree(u) for u in self.terms), default=0)

    def __add__(self, other: "ExactPoly") -> "ExactPoly":
        terms = dict(self.terms)
        for u, c in other.terms.items():
            cur = terms.get(u)
            s = c if cur is None else cur + c
            if s:
                terms[u] = s
            else:
                terms.pop(u, None)
        out = ExactPoly(self.nvars)
        out.terms = terms
        return out

    def __neg__(self):
        out = ExactPoly(self.nvars)
        out.terms = {u: -c for u, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c) -> "ExactPoly":
        c = QQ(c)
        out = ExactPoly(self.nvars)
        if c:
            out.terms = {u: x * c for u, x in self.terms.items()}
        return out

    def term_multiple(self, mono, c) -> "ExactPoly":
        c = QQ(c)
        out = ExactPoly(self.nvars)
        if c:
            out.terms = {mono_mul(u, mono): x * c for u, x in self.terms.items()}
        return out

    def __mul__(self, other: "ExactPoly") -> "ExactPoly":
        out = ExactPoly(self.nvars)
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                key = mono_mul(u, v)
                cur = out.terms.get(key, _ZERO)
                s = cur + c * d
                if s:
                    out.terms[key] = s
                else:
                    out.terms.pop(key, None)
        return out

    def monic(self, order: str) -> "ExactPoly":
        lc = self.terms[self.leading_monomial(order)]
        return self if lc == _ONE else self.scaled(_ONE / lc)

    def __eq__(self, other):
        return isinstance(other, ExactPoly) and other.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"ExactPoly({self.terms!r})"


def exact_reduce(f: ExactPoly, basis, order: str, lms=None) -> ExactPoly:
    """Remainder of f under division by ``basis`` (any leading coefficients)."""
    if lms is None:
        lms = [g.leading_monomial(order) for g in basis]
    work = dict(f.terms)
    remainder = {}
    while work:
        u = max(work, key=lambda m: sort_key(order, m))
        c = work.pop(u)
        hit = None
        for g, lm in zip(basis, lms):
            if mono_divides(lm, u):
                hit = (g, lm)
                break
        if hit is None:
            remainder[u] = c
            continue
        g, lm = hit
        shift = mono_div(u, lm)
        scale = c / g.terms[lm]
        for m, x in g.terms.items():
            if m == lm:
                continue
            key = mono_mul(m, shift)
            cur = work.get(key, _ZERO)
            s = cur - x * scale
            if s:
                work[key] = s
            else:
                work.pop(key, None)
    out = ExactPoly(f.nvars)
    out.terms = remainder
    return out


def _s_poly(f: ExactPoly, g: ExactPoly, order: str) -> ExactPoly:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = mono_lcm(lf, lg)
    a = f.term_multiple(mono_div(lcm, lf), _ONE / f.terms[lf])
    b = g.term_multiple(mono_div(lcm, lg), _ONE / g.terms[lg])
    return a - b


def exact_buchberger(
    F, order: str, max_degree: int | None = None, require_zero_dim: bool = True
):
    """Reduced Groebner basis over the rationals by Buchberger's algorithm
    with the coprime and chain pair criteria.  Intermediate total degrees
    beyond ``max_degree`` (default three times the Macaulay-style bound of
    the input degrees) abort with DegreeBlowup."""
    gens = [f for f in F if not f.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    nvars = gens[0].nvars
    if max_degree is None:
        max_degree = 3 * (sum(max(f.total_degree() - 1, 0) for f in gens) + 1)

    G = [f.monic(order) for f in gens]
    lms = [g.leading_monomial(order) for g in G]
    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}

    def coprime(u, v):
        return all(a == 0 or b == 0 for a, b in zip(u, v))

    while pairs:
        i, j = min(
            pairs,
            key=lambda ij: sort_key(order, mono_lcm(lms[ij[0]], lms[ij[1]])),
        )
        pairs.discard((i, j))
        lcm = mono_lcm(lms[i], lms[j])
        if coprime(lms[i], lms[j]):
            continue
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if (
                mono_divides(lms[k], lcm)
                and (min(i, k), max(i, k)) not in pairs
                and (min(j, k), max(j, k)) not in pairs
            ):
                skip = True
                break
        if skip:
            continue
        r = exact_reduce(_s_poly(G[i], G[j], order), G, order, lms)
        if r.is_zero():
            continue
        if r.total_degree() > max_degree:
            raise DegreeBlowup(f"intermediate degree beyond {max_degree}")
        r = r.monic(order)
        k = len(G)
        G.append(r)
        lms.append(r.leading_monomial(order))
        pairs.update((i2, k) for i2 in range(k))

    # minimalize, then reduce the tails
    by_lm = sorted(range(len(G)), key=lambda i: sort_key(order, lms[i]))
    minimal = []
    kept_lms = []
    for i in by_lm:
        if not any(mono_divides(lm, lms[i]) for lm in kept_lms):
            minimal.append(G[i])
            kept_lms.append(lms[i])
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        r = exact_reduce(g, others, order) if others else g
        reduced.append(r.monic(order))
    reduced.sort(key=lambda g: sort_key(order, g.leading_monomial(order)))

    if require_zero_dim:
        lmset = [g.leading_monomial(order) for g in reduced]
        try:
            staircase(lmset, order)
        except NotZeroDimensional:
            raise
    return reduced


def exact_fglm(G, order1: str, order2: str):
    """Classical change of ordering over the rationals: Gaussian
    elimination on normal-form vectors, no precision involved."""
    nvars = G[0].nvars
    lms1 = [g.leading_monomial(order1) for g in G]
    B1 = staircase(lms1, order1)
    index = {u: k for k, u in enumerate(B1)}
    delta = len(B1)

    def nf_vector(poly: ExactPoly):
        r = exact_reduce(poly, G, order1, lms1)
        vec = [_ZERO] * delta
        for u, c in r.terms.items():
            vec[index[u]] = c
        return vec, r

    one = unit_monomial(nvars)
    B2 = [one]
    nf_polys = [ExactPoly.constant(nvars, 1)]
    columns = [[_ONE] + [_ZERO] * (delta - 1)]
    out = []
    emitted_lms = []

    import heapq

    heap = []
    seen = {one}
    for i in range(nvars):
        m = tuple(1 if k == i else 0 for k in range(nvars))
        heapq.heappush(heap, (sort_key(order2, m), 0, i, m))
        seen.add(m)

    while heap:
        _, j, i, mono = heapq.heappop(heap)
        if any(mono_divides(lm, mono) for lm in emitted_lms):
            continue
        xi = tuple(1 if k == i else 0 for k in range(nvars))
        cand_poly = exact_reduce(nf_polys[j].term_multiple(xi, _ONE), G, order1, lms1)
        vec = [_ZERO] * delta
        for u, c in cand_poly.terms.items():
            vec[index[u]] = c
        combo = _solve_combination(columns, vec)
        if combo is not None:
            terms = {mono: _ONE}
            for l, cl in enumerate(combo):
                if cl:
                    cur = terms.get(B2[l], _ZERO)
                    terms[B2[l]] = cur - cl
            out.append(ExactPoly(nvars, terms))
            emitted_lms.append(mono)
        else:
            s = len(B2)
            B2.append(mono)
            nf_polys.append(cand_poly)
            columns.append(vec)
            for l in range(nvars):
                m2 = mono_mul(mono, tuple(1 if k == l else 0 for k in range(nvars)))
                if m2 not in seen:
                    seen.add(m2)
                    heapq.heappush(heap, (sort_key(order2, m2), s, l, m2))
    out.sort(key=lambda g: sort_key(order2, g.leading_monomial(order2)))
    return out


def _solve_combination(columns, target):
    """Coefficients c with sum c_l * columns[l] == target, or None."""
    if not columns:
        return None
    delta = len(columns[0])
    s = len(columns)
    aug = [[columns[l][r] for l in range(s)] + [target[r]] for r in range(delta)]
    piv_cols = []
    r = 0
    for c in range(s):
        sel = next((i for i in range(r, delta) if aug[i][c]), None)
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = _ONE / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(delta):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    sol = [_ZERO] * s
    for row_i, c in enumerate(piv_cols):
        sol[c] = aug[row_i][s]
    for i in range(r, delta):
        if aug[i][s]:
            return None  # inconsistent: target independent of the columns
    return sol


def embed_poly(f: ExactPoly, ring: PolyRing, prec) -> OrderedPoly:
    """Truncate an exact polynomial to balls at the given precision."""
    terms = {
        u: ring.field.from_rational(c.numerator, c.denominator, prec)
        for u, c in f.terms.items()
    }
    return OrderedPoly(ring, terms)


def embed_basis(polys, ring: PolyRing, order: str, prec) -> GroebnerBasis:
    """Truncate an exact reduced basis: tails at precision ``prec``,
    leading coefficients exactly one."""
    out = []
    for g in polys:
        lm = g.leading_monomial(order)
        terms = {}
        for u, c in g.terms.items():
            if u == lm:
                terms[u] = ring.field.one()
            else:
                terms[u] = ring.field.from_rational(c.numerator, c.denominator, prec)
        out.append(OrderedPoly(ring, terms))
    return GroebnerBasis(out, order, ring)


def lift_ordered_poly(f: OrderedPoly) -> ExactPoly:
    """Canonical rational lift of every coefficient."""
    out = {}
    for u, c in f.terms.items():
        lifted = c.lift()
        out[u] = QQ(lifted.numerator, lifted.denominator) if hasattr(lifted, "denominator") else QQ(lifted)
    return ExactPoly(f.ring.nvars, out)
