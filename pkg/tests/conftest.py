"""Shared fixtures: fields, reference bases, and seeded corpora."""

from __future__ import annotations

import random

import pytest

from padic_fglm import (
    ExactPoly,
    GroebnerBasis,
    OrderedPoly,
    PadicField,
    PolyRing,
    embed_basis,
    exact_buchberger,
    is_semi_stable,
)
from padic_fglm.errors import DegreeBlowup, NotZeroDimensional
from padic_fglm.orders import GREVLEX


@pytest.fixture(scope="session")
def Q2():
    return PadicField(2)


@pytest.fixture(scope="session")
def Q5():
    return PadicField(5)


@pytest.fixture
def ring_xy(Q5):
    return PolyRing(Q5, ("x", "y"))


@pytest.fixture
def swap_basis(ring_xy):
    """{x^2 - y, y^2 - x} as a grevlex basis at precision 30."""
    Q5 = ring_xy.field
    g1 = OrderedPoly(ring_xy, {(2, 0): Q5.one(), (0, 1): -Q5.ball(1, 30)})
    g2 = OrderedPoly(ring_xy, {(0, 2): Q5.one(), (1, 0): -Q5.ball(1, 30)})
    return GroebnerBasis([g1, g2], GREVLEX)


@pytest.fixture
def points_basis(ring_xy):
    """Vanishing ideal of (1,2), (2,3), (3,4): grevlex basis at prec 30."""
    Q5 = ring_xy.field

    def b(v):
        return Q5.ball(v, 30)

    g1 = OrderedPoly(ring_xy, {(1, 0): Q5.one(), (0, 1): -b(1), (0, 0): b(1)})
    g2 = OrderedPoly(ring_xy, {(0, 3): Q5.one(), (0, 2): -b(9), (0, 1): b(26), (0, 0): -b(24)})
    return GroebnerBasis([g1, g2], GREVLEX)


# ---------------------------------------------------------------------------
# seeded corpora (session-scoped: shared by the unit and acceptance tests)
# ---------------------------------------------------------------------------


def random_exact_system(rng, nvars, degrees, coeff_bound, affine=True):
    from padic_fglm.experiments import monomials_up_to

    out = []
    for d in degrees:
        terms = {}
        for mono in monomials_up_to(nvars, d, affine):
            c = rng.randrange(coeff_bound)
            if c:
                terms[mono] = c
        out.append(ExactPoly(nvars, terms))
    return out


def make_zero_dim_fixture(seed, p, N, degrees, affine=True, coeff_bound=None):
    """(exact grevlex basis, embedded basis) for a random zero-dimensional
    system; hops seeds until generation succeeds."""
    nvars = len(degrees)
    bound = coeff_bound if coeff_bound is not None else p**N
    for attempt in range(50):
        rng = random.Random((seed + 7919 * attempt) % 2**63)
        sys_ = random_exact_system(rng, nvars, degrees, bound, affine)
        try:
            gb = exact_buchberger(sys_, GREVLEX)
        except (NotZeroDimensional, DegreeBlowup, ValueError):
            continue
        ring = PolyRing(PadicField(p), tuple("xyz"[:nvars]))
        basis = embed_basis(gb, ring, GREVLEX, N)
        if basis.quotient_dimension >= 1:
            return gb, basis
    raise RuntimeError(f"no zero-dimensional system found for seed {seed}")


def make_shape_fixture(seed, p, N, nvars, delta):
    """A shape-position, semi-stable ideal: random coordinate functions of
    the last variable plus a squarefree univariate with distinct residue
    roots.  Returns (exact grevlex basis, embedded basis, exact lex gens)."""
    assert delta < p
    for attempt in range(60):
        rng = random.Random((seed + 104729 * attempt) % 2**63)
        last = nvars - 1
        gens = []
        for i in range(nvars - 1):
            terms = {}
            terms[tuple(1 if k == i else 0 for k in range(nvars))] = 1
            for e in range(delta):
                c = rng.randrange(-p**2, p**2)
                if c:
                    mono = tuple(0 if k != last else e for k in range(nvars))
                    terms[mono] = terms.get(mono, 0) + c
            gens.append(ExactPoly(nvars, terms))
        roots = rng.sample(range(p), delta)
        hn = ExactPoly(nvars, {tuple(0 for _ in range(nvars)): 1})
        for r in roots:
            lin = ExactPoly(
                nvars,
                {
                    tuple(0 if k != last else 1 for k in range(nvars)): 1,
                    tuple(0 for _ in range(nvars)): -r + p * rng.randrange(-3, 4),
                },
            )
            hn = hn * lin
        try:
            gb = exact_buchberger(gens + [hn], GREVLEX)
        except (NotZeroDimensional, DegreeBlowup):
            continue
        lms = [g.leading_monomial(GREVLEX) for g in gb]
        from padic_fglm.orders import staircase as _staircase

        if len(_staircase(lms, GREVLEX)) != delta:
            continue
        if not is_semi_stable(lms):
            continue
        ring = PolyRing(PadicField(p), tuple(f"x{i+1}" for i in range(nvars)))
        return gb, embed_basis(gb, ring, GREVLEX, N), gens + [hn]
    raise RuntimeError(f"no semi-stable shape fixture for seed {seed}")


@pytest.fixture(scope="session")
def shape_fixtures():
    """Twenty seeded shape-position semi-stable ideals over Q_13."""
    out = []
    grid = [(2, 3), (2, 4), (3, 4), (3, 5), (3, 8), (2, 6), (3, 6), (2, 8), (3, 3), (2, 5)]
    for k in range(20):
        nvars, delta = grid[k % len(grid)]
        out.append(make_shape_fixture(seed=1000 + k, p=13, N=60, nvars=nvars, delta=delta))
    return out
