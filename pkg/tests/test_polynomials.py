"""Polynomials over balls: normal forms, reducedness, basis structure."""

import pytest

from padic_fglm import GroebnerBasis, INF, OrderedPoly, PolyRing, is_reduced_groebner, normal_form
from padic_fglm.orders import GREVLEX, LEX


def poly(ring, spec, prec=30):
    terms = {m: ring.field.ball(c, prec) if prec else ring.field.exact(c) for m, c in spec.items()}
    return OrderedPoly(ring, terms)


def test_zero_coefficients_are_pruned(ring_xy):
    f = OrderedPoly(ring_xy, {(1, 0): ring_xy.field.zero(8), (0, 1): ring_xy.field.one()})
    assert (1, 0) not in f.terms
    assert f.zero_prec == 8


def test_leading_depends_on_order(ring_xy):
    f = poly(ring_xy, {(1, 0): 1, (0, 3): 1})
    assert f.leading_monomial(LEX) == (1, 0)
    assert f.leading_monomial(GREVLEX) == (0, 3)


def test_normal_form_examples(ring_xy):
    Q5 = ring_xy.field
    g1 = OrderedPoly(ring_xy, {(2, 0): Q5.one(), (0, 1): -Q5.ball(1, 30)})
    g2 = OrderedPoly(ring_xy, {(0, 2): Q5.one(), (0, 0): -Q5.ball(1, 30)})
    G = GroebnerBasis([g1, g2], GREVLEX)
    nf = normal_form(G, ring_xy.monomial((2, 0)))
    assert list(nf.terms) == [(0, 1)]
    member = normal_form(G, g1)
    assert member.is_zero()
    one = normal_form(G, ring_xy.monomial((0, 0)))
    assert list(one.terms) == [(0, 0)]


def test_normal_form_idempotent(points_basis, ring_xy):
    f = poly(ring_xy, {(0, 4): 3, (1, 1): 7, (0, 0): 2})
    nf1 = normal_form(points_basis, f)
    nf2 = normal_form(points_basis, nf1)
    assert set(nf1.terms) == set(nf2.terms)
    for m, c in nf1.terms.items():
        assert (c - nf2.terms[m]).is_zero()
    assert all(m in {(0, 0), (0, 1), (0, 2)} for m in nf1.terms)


def test_normal_form_matches_exact_oracle(ring_xy, points_basis):
    from padic_fglm import ExactPoly, exact_buchberger
    from padic_fglm.exact import exact_reduce, lift_ordered_poly

    f = poly(ring_xy, {(2, 1): 5, (1, 0): 1})
    nf = normal_form(points_basis, f)
    exact_G = [lift_ordered_poly(g) for g in points_basis.polys]
    exact_nf = exact_reduce(lift_ordered_poly(f), exact_G, GREVLEX)
    assert set(nf.terms) == set(exact_nf.terms)
    for m, c in exact_nf.terms.items():
        w = ring_xy.field.from_rational(c.numerator, c.denominator, nf.terms[m].prec)
        assert w == nf.terms[m]


def test_is_reduced_checks(ring_xy):
    Q5 = ring_xy.field
    g1 = poly(ring_xy, {(2, 0): 1, (0, 1): -1})
    g2 = poly(ring_xy, {(0, 2): 1, (1, 0): -1})
    assert is_reduced_groebner([g1, g2], GREVLEX)
    # equal leading monomials
    h = poly(ring_xy, {(2, 0): 1, (0, 1): -2})
    assert not is_reduced_groebner([g1, h], GREVLEX)
    # leading coefficient not 1
    bad = OrderedPoly(ring_xy, {(1, 0): Q5.ball(2, 20), (0, 0): -Q5.ball(1, 20)})
    assert not is_reduced_groebner([bad], GREVLEX)
    # tail divisible by another leading monomial
    t1 = poly(ring_xy, {(2, 0): 1, (0, 1): 1})
    t2 = poly(ring_xy, {(0, 1): 1})
    assert not is_reduced_groebner([t1, t2], GREVLEX)


def test_snf_pair_criterion_detects_non_basis(ring_xy):
    # {x^2 - y, x*y - 1}: the S-pair does not reduce to zero
    g1 = poly(ring_xy, {(2, 0): 1, (0, 1): -1})
    g2 = poly(ring_xy, {(1, 1): 1, (0, 0): -1})
    assert not is_reduced_groebner([g1, g2], GREVLEX)


def test_basis_canonicalizes_leading_one(ring_xy):
    Q5 = ring_xy.field
    g = OrderedPoly(ring_xy, {(1, 0): Q5.ball(1, 30), (0, 0): Q5.ball(4, 30)})
    h = OrderedPoly(ring_xy, {(0, 1): Q5.ball(1, 30), (0, 0): Q5.ball(9, 30)})
    G = GroebnerBasis([g, h], GREVLEX)
    for gg in G.polys:
        lm, lc = gg.leading(GREVLEX)
        assert lc.prec == INF and lc.lift() == 1
    assert G.prec == 30
    with pytest.raises(ValueError):
        GroebnerBasis([OrderedPoly(ring_xy, {(1, 0): Q5.ball(2, 30)})], GREVLEX)


def test_basis_beta_and_staircase(ring_xy):
    Q5 = ring_xy.field
    g1 = OrderedPoly(ring_xy, {(2, 0): Q5.one(), (0, 1): -Q5.make(1, -1, 20)})
    g2 = OrderedPoly(ring_xy, {(0, 2): Q5.one(), (1, 0): -Q5.ball(5, 20)})
    G = GroebnerBasis([g1, g2], GREVLEX)
    assert G.min_coeff_val == -1
    assert G.quotient_dimension == 4
    assert G.staircase == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_evaluate(ring_xy):
    Q5 = ring_xy.field
    f = poly(ring_xy, {(1, 1): 2, (0, 0): 3})
    val = f.evaluate([Q5.ball(2, 10), Q5.ball(1, 10)])
    assert val.lift() == 7
