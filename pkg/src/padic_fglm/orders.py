"""Monomials as exponent tuples, monomial orderings, and staircases.

Variable significance is fixed X1 > X2 > ... > Xn; the last variable is
the one the shape-position machinery singles out.
"""

from __future__ import annotations

from itertools import product

from .errors import DimensionMismatch, NotZeroDimensional

Monomial = tuple

LEX = "lex"
GREVLEX = "grevlex"
DEGLEX = "deglex"
ORDER_TAGS = (LEX, GREVLEX, DEGLEX)


def sort_key(order: str, u: Monomial):
    """A tuple that sorts monomials increasingly for the given order."""
    if order == LEX:
        return u
    if order == DEGLEX:
        return (sum(u), u)
    if order == GREVLEX:
        return (sum(u), tuple(-e for e in reversed(u)))
    raise ValueError(f"unknown monomial order {order!r}")


def compare_monomials(order: str, u: Monomial, v: Monomial) -> int:
    """-1, 0 or 1 as u <, =, > v under the order."""
    if len(u) != len(v):
        raise DimensionMismatch(f"monomials in {len(u)} and {len(v)} variables")
    ku, kv = sort_key(order, u), sort_key(order, v)
    return (ku > kv) - (ku < kv)


def mono_mul(u: Monomial, v: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(u, v))


def mono_divides(u: Monomial, v: Monomial) -> bool:
    return all(a <= b for a, b in zip(u, v))


def mono_div(u: Monomial, v: Monomial) -> Monomial:
    """u / v, assuming v divides u."""
    return tuple(a - b for a, b in zip(u, v))


def mono_lcm(u: Monomial, v: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(u, v))


def total_degree(u: Monomial) -> int:
    return sum(u)


def unit_monomial(nvars: int) -> Monomial:
    return (0,) * nvars


def var_monomial(nvars: int, i: int) -> Monomial:
    return tuple(1 if k == i else 0 for k in range(nvars))


def is_zero_dimensional(lms, nvars: int) -> bool:
    """True iff every variable has a pure power among the leading monomials."""
    for i in range(nvars):
        if not any(m[i] > 0 and all(e == 0 for k, e in enumerate(m) if k != i) for m in lms):
            return False
    return True


def staircase(lms, order: str) -> list:
    """All monomials outside the ideal generated by ``lms``, sorted
    increasingly for ``order``.  Raises NotZeroDimensional when that set
    is infinite."""
    lms = list(lms)
    if not lms:
        raise NotZeroDimensional("no leading monomials given")
    nvars = len(lms[0])
    if any(total_degree(m) == 0 for m in lms):
        return []

    bounds = []
    for i in range(nvars):
        pures = [
            m[i]
            for m in lms
            if m[i] > 0 and all(e == 0 for k, e in enumerate(m) if k != i)
        ]
        if not pures:
            raise NotZeroDimensional(f"no pure power of variable {i + 1} in the ideal")
        bounds.append(min(pures))
    out = [
        u
        for u in product(*(range(b) for b in bounds))
        if not any(mono_divides(m, u) for m in lms)
    ]
    out.sort(key=lambda u: sort_key(order, u))
    return out
