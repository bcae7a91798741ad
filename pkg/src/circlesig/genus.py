"""The signature genus: factor ``x (1 + e^{-x}) / (1 - e^{-x})`` per tangent root.

Note ``x (1 + e^{-x}) / (1 - e^{-x}) = 2 * (x/2) / tanh(x/2)``.  On the top
degree of an m-dimensional (complex) component the factors of 2 and the
halved arguments cancel exactly, so the product of these factors paired with
the fundamental class is already the L-genus ``<prod x_i / tanh x_i, [F]>``.
No rescaling by ``2**m`` is applied anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import prod
from typing import TYPE_CHECKING, Mapping, Sequence

from .graded import CohClass, GradedRing, _nilpotent_series, exp_class, series_inverse

if TYPE_CHECKING:
    from .fixedpoint import FixedComponent


def _one_minus_exp_over_x(x: CohClass) -> CohClass:
    # (1 - e^{-x}) / x = sum_j (-1)^j x^j / (j+1)!
    fact = [Fraction(1)]

    def coeff(j):
        while len(fact) <= j + 1:
            fact.append(fact[-1] * len(fact))
        return Fraction((-1) ** j) / fact[j + 1]

    return _nilpotent_series(x, coeff)


def signature_factor(x: CohClass) -> CohClass:
    """Evaluate ``x (1 + e^{-x}) / (1 - e^{-x})`` on a degree-2 class.

    The quotient ``(1 - e^{-x}) / x`` is a unit with constant term 1, so the
    factor is ``(1 + e^{-x}) * ((1 - e^{-x}) / x)^{-1}`` with no division by
    a nilpotent.
    """
    if not x.is_homogeneous(2):
        raise ValueError(f"tangent root must be homogeneous of degree 2: {x!r}")
    return (1 + exp_class(-x)) * series_inverse(_one_minus_exp_over_x(x))


def genus_factor_coefficients(order: int) -> list[Fraction]:
    """Coefficients ``a_0..a_order`` of the one-variable series in ``x``."""
    ring = GradedRing.of([("x", 2)], 2 * order)
    f = signature_factor(ring.gen(0))
    return [Fraction(f.terms.get((j,), 0)) for j in range(order + 1)]


def tangent_product(roots: Sequence[CohClass], ring: GradedRing) -> CohClass:
    out = ring.const(1)
    for x in roots:
        out = out * signature_factor(x)
    return out


def pair(cls: CohClass, fundamental: Mapping[tuple[int, ...], Fraction]):
    """``<cls, [F]>``: contract coefficients against the fundamental functional."""
    acc = Fraction(0)
    for exps, value in fundamental.items():
        c = cls.terms.get(exps)
        if c is not None:
            acc = acc + c * value
    return acc


def orientation_sign(F: "FixedComponent") -> int:
    """+1/-1 relating the given orientation of F to the positive-weight one."""
    return prod(1 if s.weight > 0 else -1 for s in F.normal)


def component_signature(F: "FixedComponent") -> Fraction:
    """Signature of F, oriented so that every normal weight is positive.

    Flipping a summand's complex structure negates its weight and the induced
    orientation of F; normalizing to positive weights is the orientation
    under which ``sign(M) = sum_F sign(F)`` holds.
    """
    value = pair(tangent_product(F.tangent_roots, F.ring), F.fundamental)
    return Fraction(value) * orientation_sign(F)
