"""Newton lifting of the simple residue roots of a shape-position basis.

Given a lex basis (x_1 - h_1(x_n), ..., x_{n-1} - h_{n-1}(x_n), h_n(x_n))
with integral h_n, every simple root of h_n modulo p lifts to a root in
Z_p; the remaining coordinates are then plain evaluations of the h_i.
Residue roots of higher multiplicity are reported, not lifted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotShapePosition
from .orders import LEX, var_monomial
from .padics import INF
from .polynomials import GroebnerBasis, OrderedPoly


@dataclass
class LiftedRoots:
    """Solution points (one ball per variable) plus the residue roots that
    were skipped as singular, repeated by multiplicity."""

    points: list = field(default_factory=list)
    singular: list = field(default_factory=list)


def shape_components(G: GroebnerBasis):
    """Split a shape-position lex basis into (h_1..h_{n-1}, h_n), where
    x_i - h_i(x_n) are the basis elements and h_n is univariate monic."""
    if G.order != LEX:
        raise NotShapePosition("expected a lex basis")
    n = G.nvars
    last = n - 1
    hs: list = [None] * (n - 1)
    hn = None
    for g in G.polys:
        lm = g.leading_monomial(G.order)
        support_last_only = all(
            all(e == 0 for k, e in enumerate(u) if k != last) for u in g.terms
        )
        if support_last_only:
            if hn is not None:
                raise NotShapePosition("two univariate elements in the last variable")
            hn = g
            continue
        head = [i for i, e in enumerate(lm) if e]
        if len(head) != 1 or lm[head[0]] != 1 or head[0] == last:
            raise NotShapePosition(f"element with leading monomial {lm} is not linear in one variable")
        i = head[0]
        tail_ok = all(
            u == lm or all(e == 0 for k, e in enumerate(u) if k != last) for u in g.terms
        )
        if not tail_ok or hs[i] is not None:
            raise NotShapePosition("tails must be univariate in the last variable")
        terms = {u: -c for u, c in g.terms.items() if u != lm}
        hs[i] = OrderedPoly(G.ring, terms, g.zero_prec)
    if hn is None or any(h is None for h in hs):
        raise NotShapePosition("missing components of the univariate presentation")
    if hn.leading_monomial(G.order)[last] != G.quotient_dimension:
        raise NotShapePosition("degree of the univariate element does not match the quotient dimension")
    return hs, hn


def _univariate_coeffs(h: OrderedPoly, last: int):
    deg = max(u[last] for u in h.terms)
    coeffs = [0] * (deg + 1)
    precs = []
    for u, c in h.terms.items():
        if c.val is not None and c.val < 0:
            return None, None
        coeffs[u[last]] = c.lift()
        if c.prec != INF:
            precs.append(c.prec)
    if h.zero_prec != INF:
        precs.append(h.zero_prec)
    return coeffs, (min(precs) if precs else INF)


def _poly_eval_mod(coeffs, x, mod):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % mod
    return acc


def hensel_lift_roots(G: GroebnerBasis, target_prec: int) -> LiftedRoots:
    """Lift every simple residue root of the univariate component and
    evaluate the coordinate functions there.  Non-integral components
    yield no liftable roots."""
    hs, hn = shape_components(G)
    ring = G.ring
    p = ring.field.p
    n = ring.nvars
    last = n - 1
    coeffs, avail = _univariate_coeffs(hn, last)
    out = LiftedRoots()
    if coeffs is None:
        return out
    dcoeffs = [k * c for k, c in enumerate(coeffs)][1:]

    residue_poly = [c % p for c in coeffs]
    roots = []
    for r in range(p):
        if _poly_eval_mod(residue_poly, r, p) == 0:
            roots.append(r)
    prec = target_prec if avail == INF else min(target_prec, avail)
    prec = max(int(prec), 1)
    for r0 in roots:
        if _poly_eval_mod(dcoeffs, r0, p) % p == 0:
            mult = _residue_multiplicity(residue_poly, r0, p)
            out.singular.extend([r0] * mult)
            continue
        r = r0
        k = 1
        while k < prec:
            k = min(2 * k, prec)
            mod = p**k
            fr = _poly_eval_mod(coeffs, r, mod)
            dfr = _poly_eval_mod(dcoeffs, r, mod)
            r = (r - fr * pow(dfr, -1, mod)) % mod
        root = ring.field.ball(r, prec)
        point = [None] * n
        point[last] = root
        for i in range(n - 1):
            point[i] = hs[i].evaluate(_pad_point(root, ring, last))
        out.points.append(point)
    return out


def _pad_point(root, ring, last):
    """A full evaluation point for polynomials univariate in the last
    variable (the other coordinates are never touched)."""
    dummy = ring.field.zero()
    pt = [dummy] * ring.nvars
    pt[last] = root
    return pt


def _residue_multiplicity(residue_poly, r, p) -> int:
    """Multiplicity of r as a root of a polynomial over F_p, by repeated
    synthetic division."""
    coeffs = [c % p for c in residue_poly]
    mult = 0
    while len(coeffs) > 1 and _poly_eval_mod(coeffs, r, p) == 0:
        horner = []
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * r + c) % p
            horner.append(acc)
        coeffs = list(reversed(horner[:-1]))  # quotient by (x - r)
        mult += 1
    return mult
