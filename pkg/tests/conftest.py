from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from circlesig.graded import CohClass, GradedRing
from circlesig.ratfunc import PolyG, RatFuncG

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def rings(draw, max_gens=2, max_top=6):
    n = draw(st.integers(1, max_gens))
    degrees = tuple(draw(st.sampled_from([2, 2, 4])) for _ in range(n))
    top = 2 * draw(st.integers(0, max_top // 2))
    return GradedRing(tuple(f"y{i}" for i in range(n)), degrees, top)


@st.composite
def classes(draw, ring, nilpotent=False, coeffs=small_fracs):
    terms = {}
    for exps in ring.monomials():
        if nilpotent and not any(exps):
            continue
        if draw(st.booleans()):
            terms[exps] = draw(coeffs)
    return CohClass(ring, terms)


@st.composite
def polys(draw, max_degree=3):
    return PolyG(draw(st.lists(small_fracs, min_size=1, max_size=max_degree + 1)))


@st.composite
def ratfuncs(draw):
    num = draw(polys())
    den = draw(polys())
    if den.is_zero():
        den = PolyG([1])
    return RatFuncG(num, den)


@pytest.fixture
def h_ring2():
    return GradedRing.of([("h", 2)], 2)


@pytest.fixture
def h_ring4():
    return GradedRing.of([("h", 2)], 4)


def frac(s):
    return Fraction(s)
