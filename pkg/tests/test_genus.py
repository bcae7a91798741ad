import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from circlesig.fixedpoint import FixedComponent, NormalSummand
from circlesig.genus import (
    component_signature,
    genus_factor_coefficients,
    pair,
    signature_factor,
    tangent_product,
)
from circlesig.graded import CohClass, GradedRing


def bernoulli(n):
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return B


def coth_half_coeffs(order):
    # x (1+e^-x)/(1-e^-x) = x coth(x/2) = sum_k 2 B_{2k} x^{2k} / (2k)!
    B = bernoulli(order)
    fact = [1]
    for i in range(1, order + 1):
        fact.append(fact[-1] * i)
    return [2 * B[j] / fact[j] if j % 2 == 0 else Fraction(0) for j in range(order + 1)]


def test_factor_series_matches_bernoulli_oracle():
    coeffs = genus_factor_coefficients(10)
    assert coeffs == coth_half_coeffs(10)
    assert coeffs[:5] == [2, 0, Fraction(1, 6), 0, Fraction(-1, 360)]


def test_signature_factor_examples(h_ring2, h_ring4):
    assert signature_factor(h_ring2.zero()) == 2
    assert signature_factor(2 * h_ring2.gen("h")) == 2
    h = h_ring4.gen("h")
    assert signature_factor(h) == 2 + Fraction(1, 6) * h * h


def test_signature_factor_rejects_inhomogeneous(h_ring4):
    h = h_ring4.gen("h")
    with pytest.raises(ValueError):
        signature_factor(h + h * h)


def _splitting_ring(m):
    return GradedRing(tuple(f"x{i}" for i in range(m)), (2,) * m, 2 * m)


def _elementary_squares(ring):
    xs = [ring.gen(i) for i in range(ring.ngens)]
    sq = [x * x for x in xs]
    out = [ring.const(1)]
    for k in range(1, len(xs) + 1):
        acc = ring.zero()
        for combo in itertools.combinations(sq, k):
            term = ring.const(1)
            for c in combo:
                term = term * c
            acc = acc + term
        out.append(acc)
    return out


def test_top_degree_is_l_genus_without_rescaling():
    # The verbatim factor already yields the L-polynomials; no 2^m division.
    R2 = _splitting_ring(2)
    p = _elementary_squares(R2)
    assert tangent_product([R2.gen(0), R2.gen(1)], R2).part(4) == p[1] * Fraction(1, 3)

    R4 = _splitting_ring(4)
    p = _elementary_squares(R4)
    L2 = (7 * p[2] - p[1] * p[1]) * Fraction(1, 45)
    assert tangent_product([R4.gen(i) for i in range(4)], R4).part(8) == L2


@given(st.permutations(range(3)), st.lists(st.sampled_from([1, -1]), min_size=3, max_size=3))
def test_product_invariant_under_permutation_and_sign_flips(perm, signs):
    R = GradedRing.of([("a", 2), ("b", 2)], 4)
    a, b = R.gen("a"), R.gen("b")
    roots = [a, 2 * a - b, b + Fraction(1, 2) * a]
    moved = [signs[i] * roots[perm[i]] for i in range(3)]
    assert tangent_product(roots, R) == tangent_product(moved, R)


@given(st.integers(-3, 3), st.integers(-3, 3))
def test_signature_factor_is_even(c1, c2):
    R = GradedRing.of([("a", 2), ("b", 2)], 6)
    x = c1 * R.gen("a") + c2 * R.gen("b")
    assert signature_factor(x) == signature_factor(-x)


def test_component_signature_examples():
    assert component_signature(FixedComponent.point("p", [1, 1])) == 1

    R = GradedRing.of([("h", 2)], 2)
    h = R.gen("h")
    cp1 = FixedComponent("cp1", 2, [("h", 2)], {(1,): 1}, [2 * h], [NormalSummand(1, h)])
    assert component_signature(cp1) == 0

    R = _splitting_ring(2)
    cp2 = FixedComponent(
        "cp2",
        4,
        [("x0", 2), ("x1", 2)],
        {(2, 0): Fraction(3, 2), (0, 2): Fraction(3, 2), (1, 1): 3},
        [R.gen(0), R.gen(1)],
        [],
    )
    assert component_signature(cp2) == 1


def test_component_signature_uses_positive_weight_orientation():
    assert component_signature(FixedComponent.point("p", [-1, 1])) == -1
    assert component_signature(FixedComponent.point("p", [-1, -1])) == 1
    assert component_signature(FixedComponent.point("p", [-1, 1], orientation=-1)) == 1


def test_odd_complex_dimension_components_have_zero_signature():
    for top, roots in [(2, ["a"]), (6, ["a", "b", "c"])]:
        R = GradedRing(tuple(roots), (2,) * len(roots), top)
        xs = [R.gen(i) for i in range(len(roots))]
        fundamental = {e: Fraction(1) for e in R.monomials(top)}
        F = FixedComponent("f", top, [(r, 2) for r in roots], fundamental, xs, [])
        assert component_signature(F) == 0


def test_pair_reads_only_the_functional(h_ring4):
    h = h_ring4.gen("h")
    assert pair(5 + 3 * h + 7 * h * h, {(2,): Fraction(2)}) == 14
    assert pair(CohClass(h_ring4, {}), {(2,): Fraction(2)}) == 0
