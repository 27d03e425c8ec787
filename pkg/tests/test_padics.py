"""Ball arithmetic: spec'd rules, canonical form, precision soundness."""

import random

import pytest

from padic_fglm import INF, PadicField
from padic_fglm.errors import InvalidPrime


def test_prime_is_checked():
    with pytest.raises(InvalidPrime):
        PadicField(6)
    PadicField(65519)  # the large test prime is prime


def test_addition_rules(Q2):
    Q3 = PadicField(3)
    assert str(Q2.ball(1, 5) + Q2.ball(1, 5)) == "2 + O(2^5)"
    s = Q2.ball(2, 3) + Q2.ball(-2, 6)
    assert s.is_zero() and s.prec == 3
    t = Q3.ball(5, 4) + Q3.ball(4, 4)
    assert t.valuation() == 2 and t.prec == 4


def test_multiplication_rules(Q2):
    r = Q2.ball(2, 5) * Q2.ball(3, 5)
    assert r.lift() == 6 and r.prec == 5
    p = PadicField(7)
    q = p.ball(7, 3) * p.ball(7, 3)
    assert q.valuation() == 2 and q.prec == 4
    x = Q2.ball(13, 9)
    assert (Q2.one() * x) == x  # exact one leaves precision alone


def test_zero_looking_multiplication(Q2):
    z = Q2.zero(5)
    y = Q2.ball(4, 8)  # valuation 2
    r = z * y
    assert r.is_zero() and r.prec == 5 + 2
    zz = z * Q2.zero(7)
    assert zz.prec == 12


def test_inverse(Q2):
    assert str(Q2.ball(2, 5).inverse()) == "1/2 + O(2^3)"
    p = PadicField(5)
    i = p.ball(5, 4).inverse()
    assert i.valuation() == -1 and i.prec == 2
    one = p.one()
    assert one.inverse() == one
    with pytest.raises(ZeroDivisionError):
        Q2.zero(4).inverse()
    with pytest.raises(ValueError):
        Q2.exact(3).inverse()  # not representable exactly


def test_valuation_and_zero_tests(Q2):
    assert Q2.ball(12, 10).valuation() == 2
    z = Q2.ball(0, 7)
    assert z.valuation() is None and z.val_floor == 7
    assert Q2.ball(8, 3).is_zero()       # 8 = 0 mod 2^3
    assert not Q2.ball(2, 3).is_zero()   # valuation 1 < 3
    big = PadicField(5).ball(5**3 * 7, 50)
    assert big.valuation() == 3


def test_canonical_equality(Q2):
    a = Q2.ball(3, 5)
    b = Q2.ball(3 + 2**5, 5)
    assert a == b
    assert Q2.ball(3, 5) != Q2.ball(3, 6)
    assert Q2.zero(4) != Q2.zero()


def test_negative_valuation_roundtrip(Q2):
    x = Q2.from_rational(3, 8, 5)
    assert x.valuation() == -3
    assert (x * Q2.exact(8)).lift() == 3
    y = Q2.from_rational(1, 3, 6)  # 3 is a unit in Q_2
    assert (y * Q2.exact(3) - Q2.one()).is_zero()


def _random_expression(rng, field, prec, values):
    """Evaluate a random add/mul/inv expression tree over exact integers
    at the given working precision; returns (ball, exact Fraction)."""
    from fractions import Fraction

    balls = [field.ball(v, prec) for v in values]
    fracs = [Fraction(v) for v in values]
    for _ in range(12):
        op = rng.randrange(3)
        i, j = rng.randrange(len(balls)), rng.randrange(len(balls))
        if op == 0:
            balls.append(balls[i] + balls[j])
            fracs.append(fracs[i] + fracs[j])
        elif op == 1:
            balls.append(balls[i] * balls[j])
            fracs.append(fracs[i] * fracs[j])
        else:
            if balls[i].is_zero():
                continue
            balls.append(balls[i].inverse())
            fracs.append(1 / fracs[i])
    return balls[-1], fracs[-1]


@pytest.mark.parametrize("p", [2, 5])
def test_precision_soundness_differential(p):
    """The low-precision result is the reduction of the high-precision one,
    over random expression trees."""
    field = PadicField(p)
    rng = random.Random(p * 101)
    for trial in range(150):
        values = [rng.randrange(-40, 40) or 1 for _ in range(3)]
        state = rng.getstate()
        lo, _ = _random_expression(rng, field, 12, values)
        rng.setstate(state)
        hi, frac = _random_expression(rng, field, 40, values)
        assert hi.cap(lo.prec) == lo
        if not lo.is_zero() and lo.prec != INF:
            want = field.from_rational(frac.numerator, frac.denominator, lo.prec)
            assert want == lo


@pytest.mark.parametrize("p", [2, 5])
def test_ring_axioms_modulo_precision(p):
    field = PadicField(p)
    rng = random.Random(p)
    for _ in range(300):
        a = field.ball(rng.randrange(-200, 200), rng.randrange(3, 12))
        b = field.ball(rng.randrange(-200, 200), rng.randrange(3, 12))
        c = field.ball(rng.randrange(-200, 200), rng.randrange(3, 12))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a and a * b == b * a
        # distributed forms may differ in precision but share the coset
        assert (a * (b + c) - (a * b + a * c)).is_zero()


def test_mul_inverse_is_one(Q2):
    rng = random.Random(9)
    for _ in range(200):
        v = rng.randrange(-500, 500)
        if v == 0:
            continue
        a = Q2.ball(v, rng.randrange(4, 20))
        if a.is_zero():
            continue
        r = a * a.inverse()
        assert (r - Q2.one()).is_zero()


def test_exact_values_do_not_cap(Q2):
    x = Q2.ball(5, 9)
    assert (x + Q2.zero()).prec == 9
    assert (x * Q2.one()).prec == 9
    assert (Q2.exact(4) * x).prec == 9 + 2  # exact 4 has valuation 2


def test_cap_and_shift(Q2):
    x = Q2.ball(12, 10)
    assert x.cap(3).is_zero() is False and x.cap(3).prec == 3
    assert x.cap(2).is_zero()  # val 2 >= prec 2
    s = x.shift(-2)
    assert s.valuation() == 0 and s.prec == 8
