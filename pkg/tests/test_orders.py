"""Monomial orderings and staircases."""

import random

import pytest

from padic_fglm import DEGLEX, GREVLEX, LEX, compare_monomials, staircase
from padic_fglm.errors import DimensionMismatch, NotZeroDimensional
from padic_fglm.orders import mono_mul, sort_key


def test_lex_examples():
    assert compare_monomials(LEX, (1, 0), (0, 3)) == 1   # x > y^3
    assert compare_monomials(LEX, (0, 3), (1, 0)) == -1
    assert compare_monomials(LEX, (2, 1), (2, 1)) == 0


def test_grevlex_example():
    # x*z vs y^2 in three variables: equal degree, xz has the larger last exponent
    assert compare_monomials(GREVLEX, (1, 0, 1), (0, 2, 0)) == -1
    assert compare_monomials(GREVLEX, (1, 0), (0, 1)) == 1  # x > y


def test_deglex_degree_first():
    assert compare_monomials(DEGLEX, (0, 3), (1, 0)) == 1
    assert compare_monomials(DEGLEX, (1, 1), (0, 2)) == 1


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        compare_monomials(LEX, (1, 0), (1, 0, 0))


@pytest.mark.parametrize("order", [LEX, GREVLEX, DEGLEX])
def test_order_axioms(order):
    rng = random.Random(hash(order) % 1000)
    monos = [tuple(rng.randrange(4) for _ in range(3)) for _ in range(40)]
    one = (0, 0, 0)
    for u in monos:
        assert compare_monomials(order, u, u) == 0
        if u != one:
            assert compare_monomials(order, one, u) == -1  # 1 is minimal
        for v in monos:
            c_uv = compare_monomials(order, u, v)
            assert c_uv == -compare_monomials(order, v, u)
            for w in monos:
                # multiplicative: u < v implies uw < vw
                if c_uv == -1:
                    assert compare_monomials(order, mono_mul(u, w), mono_mul(v, w)) == -1
    keys = sorted(monos, key=lambda u: sort_key(order, u))
    for a, b in zip(keys, keys[1:]):
        assert compare_monomials(order, a, b) <= 0  # transitivity via sortedness


def test_staircase_examples():
    assert staircase([(2, 0), (1, 1), (0, 2)], GREVLEX) == [(0, 0), (0, 1), (1, 0)]
    sc = staircase([(2, 0), (0, 2)], GREVLEX)
    assert sc == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert staircase([(1,)], LEX) == [(0,)]


def test_staircase_division_closed():
    rng = random.Random(5)
    for _ in range(30):
        lms = {tuple(rng.randrange(1, 5) if rng.random() < 0.5 else 0 for _ in range(3)) for _ in range(4)}
        lms = {m for m in lms if any(m)}
        lms |= {(4, 0, 0), (0, 4, 0), (0, 0, 4)}
        sc = set(staircase(sorted(lms), GREVLEX))
        for u in sc:
            for i in range(3):
                if u[i] > 0:
                    below = tuple(e - 1 if k == i else e for k, e in enumerate(u))
                    assert below in sc


def test_staircase_rejects_positive_dimension():
    with pytest.raises(NotZeroDimensional):
        staircase([(1, 1)], GREVLEX)


def test_unit_ideal_is_empty():
    assert staircase([(0, 0)], GREVLEX) == []
