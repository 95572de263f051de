import random
from fractions import Fraction

import pytest

from trialg import ring as rg
from trialg.msc import BasisChange, Matrix, Msc


def rand_elem(ring, rng):
    if ring.kind == "Q":
        return rg.from_fraction(ring, Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
    if ring.kind == "GF":
        return rg.RingElem(ring, rng.randrange(ring.p))
    terms = {}
    nvars = len(ring.vars)
    for _ in range(rng.randint(0, 4)):
        mono = tuple(rng.randint(0, 2) for _ in range(nvars))
        coeff = Fraction(rng.randint(-5, 5))
        if coeff:
            terms[mono] = terms.get(mono, Fraction(0)) + coeff
    return rg.RingElem(ring, {m: c for m, c in terms.items() if c})


def rand_matrix(ring, nrows, ncols, rng):
    return Matrix(ring, [[rand_elem(ring, rng) for _ in range(ncols)] for _ in range(nrows)])


def rand_msc(ring, dim, arity, rng):
    return Msc(dim, arity, rand_matrix(ring, dim, dim ** arity, rng))


def rand_vector(ring, dim, rng):
    return tuple(rand_elem(ring, rng) for _ in range(dim))


def rand_basis_change(ring, dim, rng):
    while True:
        mat = rand_matrix(ring, dim, dim, rng)
        try:
            return BasisChange(mat)
        except ValueError:
            continue


@pytest.fixture
def rng():
    return random.Random(20240811)


@pytest.fixture
def gf5():
    return rg.prime_field(5)


@pytest.fixture
def gf3():
    return rg.prime_field(3)
