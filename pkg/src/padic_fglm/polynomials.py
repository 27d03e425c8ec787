"""Multivariate polynomials over ball coefficients, reduced Groebner
bases of zero-dimensional ideals, and normal-form reduction.

Coefficients that lose every significant digit during arithmetic are
pruned from the term map; the polynomial remembers the smallest precision
at which a pruned coefficient was known to vanish (``zero_prec``) so that
downstream precision claims stay honest.
"""

from __future__ import annotations

from . import orders
from .errors import DimensionMismatch
from .orders import Monomial, mono_div, mono_divides, mono_lcm, mono_mul, sort_key
from .padics import INF, Ball, PadicField


class PolyRing:
    """A polynomial ring over Q_p with named variables X1 > X2 > ... > Xn."""

    __slots__ = ("field", "variables")

    def __init__(self, field: PadicField, variables):
        self.field = field
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.variables == self.variables
        )

    def __hash__(self):
        return hash((self.field, self.variables))

    def __repr__(self):
        return f"PolyRing(Q_{self.field.p}[{', '.join(self.variables)}])"

    def poly(self, terms, zero_prec=INF) -> "OrderedPoly":
        return OrderedPoly(self, terms, zero_prec)

    def monomial(self, mono: Monomial) -> "OrderedPoly":
        return OrderedPoly(self, {tuple(mono): self.field.one()})

    def zero_poly(self) -> "OrderedPoly":
        return OrderedPoly(self, {})


class OrderedPoly:
    """A polynomial as a map monomial -> ball, zero coefficients pruned."""

    __slots__ = ("ring", "terms", "zero_prec")

    def __init__(self, ring: PolyRing, terms, zero_prec=INF):
        self.ring = ring
        clean = {}
        floor = zero_prec
        for mono, c in terms.items():
            if len(mono) != ring.nvars:
                raise DimensionMismatch("monomial arity does not match the ring")
            if c.is_zero():
                if c.prec != INF:
                    floor = min(floor, c.prec)
                continue
            clean[mono] = c
        self.terms = clean
        self.zero_prec = floor

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, mono: Monomial) -> Ball:
        c = self.terms.get(mono)
        if c is not None:
            return c
        return self.ring.field.zero(self.zero_prec)

    def leading(self, order: str):
        """(monomial, coefficient) of the largest term under the order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        lm = max(self.terms, key=lambda u: sort_key(order, u))
        return lm, self.terms[lm]

    def leading_monomial(self, order: str) -> Monomial:
        return self.leading(order)[0]

    def total_degree(self) -> int:
        return max((sum(u) for u in self.terms), default=0)

    def __add__(self, other: "OrderedPoly") -> "OrderedPoly":
        if self.ring != other.ring:
            raise ValueError("mixed rings")
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            cur = terms.get(mono)
            terms[mono] = c if cur is None else cur + c
        return OrderedPoly(self.ring, terms, min(self.zero_prec, other.zero_prec))

    def __neg__(self):
        return OrderedPoly(self.ring, {u: -c for u, c in self.terms.items()}, self.zero_prec)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c: Ball) -> "OrderedPoly":
        return OrderedPoly(self.ring, {u: x * c for u, x in self.terms.items()}, self.zero_prec)

    def term_multiple(self, mono: Monomial, c: Ball) -> "OrderedPoly":
        """c * x^mono * self."""
        return OrderedPoly(
            self.ring, {mono_mul(u, mono): x * c for u, x in self.terms.items()}, self.zero_prec
        )

    def evaluate(self, point) -> Ball:
        """Value at a point given as one ball per variable."""
        if len(point) != self.ring.nvars:
            raise DimensionMismatch("point arity")
        acc = self.ring.field.zero(self.zero_prec) if self.zero_prec != INF else self.ring.field.zero()
        for u, c in self.terms.items():
            term = c
            for e, x in zip(u, point):
                for _ in range(e):
                    term = term * x
            acc = acc + term
        return acc

    def min_precision(self):
        """Smallest coefficient precision, pruned coefficients included."""
        precs = [c.prec for c in self.terms.values() if c.prec != INF]
        if self.zero_prec != INF:
            precs.append(self.zero_prec)
        return min(precs) if precs else INF

    def __repr__(self):
        names = self.ring.variables
        bits = []
        for u in sorted(self.terms, reverse=True):
            factors = [f"{n}^{e}" if e > 1 else n for n, e in zip(names, u) if e]
            head = "*".join(factors) or "1"
            bits.append(f"({self.terms[u]})*{head}")
        return " + ".join(bits) if bits else "0"


def _reduce(f: OrderedPoly, basis, order: str, lms=None) -> OrderedPoly:
    """Remainder of multivariate division of f by ``basis`` (leading
    coefficients must all be exactly one).  The reducible leading term is
    cancelled structurally, so only genuine coset cancellations feed the
    pruning floor."""
    if lms is None:
        lms = [g.leading_monomial(order) for g in basis]
    work = dict(f.terms)
    floor = f.zero_prec
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
        for m, x in g.terms.items():
            if m == lm:
                continue
            key = mono_mul(m, shift)
            cur = work.get(key)
            newc = -(x * c) if cur is None else cur - x * c
            if newc.is_zero():
                work.pop(key, None)
                if newc.prec != INF:
                    floor = min(floor, newc.prec)
            else:
                work[key] = newc
    return OrderedPoly(f.ring, remainder, floor)


class GroebnerBasis:
    """A reduced Groebner basis of a zero-dimensional ideal together with
    its staircase.  Leading coefficients are canonicalized to the exact
    constant one; ``prec`` is the smallest finite coefficient precision and
    ``min_coeff_val`` the smallest tail-coefficient valuation."""

    __slots__ = ("ring", "order", "polys", "staircase", "prec", "min_coeff_val")

    def __init__(self, polys, order: str, ring: PolyRing | None = None):
        polys = list(polys)
        if not polys:
            raise ValueError("empty basis")
        self.ring = ring if ring is not None else polys[0].ring
        self.order = order
        fixed = []
        field = self.ring.field
        for g in polys:
            lm, lc = g.leading(order)
            if not (lc - field.one()).is_zero():
                raise ValueError(f"leading coefficient {lc} does not reduce to 1")
            terms = dict(g.terms)
            terms[lm] = field.one()
            fixed.append(OrderedPoly(self.ring, terms, g.zero_prec))
        fixed.sort(key=lambda g: sort_key(order, g.leading_monomial(order)))
        self.polys = fixed
        self.staircase = orders.staircase([g.leading_monomial(order) for g in fixed], order)
        precs = []
        vals = []
        for g in fixed:
            lm = g.leading_monomial(order)
            if g.zero_prec != INF:
                precs.append(g.zero_prec)
            for u, c in g.terms.items():
                if u == lm:
                    continue
                if c.prec != INF:
                    precs.append(c.prec)
                if c.val is not None:
                    vals.append(c.val)
        self.prec = min(precs) if precs else INF
        self.min_coeff_val = min(vals) if vals else 0

    @property
    def quotient_dimension(self) -> int:
        return len(self.staircase)

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.polys]

    def tail_coefficient(self, g: OrderedPoly, mono: Monomial) -> Ball:
        """Coefficient of ``mono`` in g.  Monomials absent from the stored
        polynomial are structural zeros (the basis is read as the exact
        truncated object), except below g's pruning floor."""
        c = g.terms.get(mono)
        if c is not None:
            return c
        return self.ring.field.zero(g.zero_prec)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __repr__(self):
        return (
            f"GroebnerBasis({len(self.polys)} polys, order={self.order}, "
            f"dim A/I={self.quotient_dimension})"
        )


def normal_form(G: GroebnerBasis, f: OrderedPoly) -> OrderedPoly:
    """Remainder of f modulo G; supported on the staircase."""
    return _reduce(f, G.polys, G.order)


def is_reduced_groebner(polys, order: str) -> bool:
    """Leading coefficients reduce to one, no tail monomial is divisible by
    another leading monomial, leading monomials are pairwise non-divisible,
    and every S-polynomial reduces to something indistinguishable from
    zero."""
    polys = [g for g in polys if not g.is_zero()]
    if not polys:
        return False
    field = polys[0].ring.field
    lms = []
    for g in polys:
        lm, lc = g.leading(order)
        if not (lc - field.one()).is_zero():
            return False
        lms.append(lm)
    if len(set(lms)) != len(lms):
        return False
    for i, g in enumerate(polys):
        for u in g.terms:
            for j, lm in enumerate(lms):
                if i == j and u == lms[i]:
                    continue
                if mono_divides(lm, u):
                    return False
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            lcm = mono_lcm(lms[i], lms[j])
            s = polys[i].term_multiple(mono_div(lcm, lms[i]), field.one()) - polys[j].term_multiple(
                mono_div(lcm, lms[j]), field.one()
            )
            if not _reduce(s, polys, order, lms).is_zero():
                return False
    return True
