"""Signature operator twisted by the bundles R_i, via fixed-point localization.

The generating series ``sum_i q^i sign(g, M, R_i)`` localizes as

    sum_F < prod_i [x_i coth-factor * u(x_i)] * prod_j [normal factor_j * v_j], [F] >

with ``u`` and ``v`` the q-products below.  Products over ``r >= 1`` are cut at
``r = Q`` (exact modulo ``q^{Q+1}``).  Only the ``symbolic`` and ``xi`` modes
make sense here: ``g^{-k}`` appears in numerators, so ``g -> 0`` is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .fixedpoint import (
    FixedComponent,
    ManifoldData,
    PrimeCertificate,
    PrimeRefusal,
    fixed_dimension,
    prime_check,
)
from .genus import pair, signature_factor
from .graded import CohClass, QSeries, exp_class
from .localization import EvalMode, normal_factor
from .ratfunc import RatFuncG

DEFAULT_Q = 3


class ModeUnsupportedError(ValueError):
    pass


def _theta_quotient(a: CohClass, b: CohClass, Q: int) -> QSeries:
    """``prod_{r=1..Q} (1+q^r a)(1+q^r b) / ((1-q^r a)(1-q^r b))``."""
    one = a.ring.const(1)
    out = QSeries.const(one, Q)
    for r in range(1, Q + 1):
        num = QSeries.binomial(one, r, a, Q) * QSeries.binomial(one, r, b, Q)
        den = QSeries.binomial(one, r, -a, Q) * QSeries.binomial(one, r, -b, Q)
        out = out * num * den.inverse()
    return out


def u_factor(x: CohClass, Q: int) -> QSeries:
    if not x.is_homogeneous(2):
        raise ValueError("u_factor needs a degree-2 class")
    return _theta_quotient(exp_class(-x), exp_class(x), Q)


def v_factor(k: int, c: CohClass, Q: int, mode: Union[EvalMode, str] = "symbolic") -> QSeries:
    kind = mode.kind if isinstance(mode, EvalMode) else mode
    if not c.is_homogeneous(2):
        raise ValueError("v_factor needs a degree-2 class")
    if kind == "symbolic":
        a = exp_class(-c) * RatFuncG.g_power(k)
        b = exp_class(c) * RatFuncG.g_power(-k)
    elif kind == "xi":
        a, b = -exp_class(-c), -exp_class(c)
    else:
        raise ModeUnsupportedError(f"mode {kind!r} unsupported for the twisted series")
    return _theta_quotient(a, b, Q)


def component_series(F: FixedComponent, Q: int, kind: str) -> QSeries:
    """Unpaired integrand of one component as a q-series of classes."""
    ring = F.ring
    out = QSeries.const(ring.const(1), Q)
    for x in F.tangent_roots:
        out = out * u_factor(x, Q) * signature_factor(x)
    for s in F.normal:
        out = out * v_factor(s.weight, s.c1, Q, kind) * normal_factor(s.weight, s.c1, kind)
    return out


def _coerce(value, kind):
    if kind == "symbolic":
        return value if isinstance(value, RatFuncG) else RatFuncG.const(value)
    return value.constant_value() if isinstance(value, RatFuncG) else Fraction(value)


@dataclass
class TwistedSeriesReport:
    order: int
    mode: str
    contributions: dict[str, list]
    coefficients: list
    constant: list[bool]
    values: list[Fraction | None]
    indices: list[Fraction | None] = field(default_factory=list)

    @property
    def rigid(self) -> bool:
        return all(self.constant)


def twisted_signature_series(
    data: ManifoldData, Q: int = DEFAULT_Q, mode: Union[EvalMode, str] = "symbolic"
) -> TwistedSeriesReport:
    kind = mode.kind if isinstance(mode, EvalMode) else mode
    if kind == "zero":
        raise ModeUnsupportedError("the g -> 0 limit is not supported for the twisted series")
    mode = EvalMode.resolve(mode, data)
    zero = RatFuncG.const(0) if kind == "symbolic" else Fraction(0)
    contributions = {}
    totals = [zero] * (Q + 1)
    for F in data.components:
        series = component_series(F, Q, kind)
        paired = [_coerce(pair(c, F.fundamental), kind) for c in series.coeffs]
        contributions[F.name] = paired
        totals = [t + p for t, p in zip(totals, paired)]
    if kind == "symbolic":
        constant = [t.is_constant() for t in totals]
        values = [t.constant_value() if c else None for t, c in zip(totals, constant)]
        indices = [_at_one(t) for t in totals]
    else:
        constant = [True] * (Q + 1)
        values = list(totals)
        indices = [None] * (Q + 1)
    return TwistedSeriesReport(Q, kind, contributions, totals, constant, values, indices)


def _at_one(r: RatFuncG) -> Fraction | None:
    """Non-equivariant index ``sign(M, R_i)``: the character evaluated at g = 1."""
    den = r.den.evaluate(Fraction(1))
    return None if den == 0 else Fraction(r.num.evaluate(Fraction(1))) / den


# -- independent Chern-character oracle for the bundle series -----------------


def _elementary(chars: Sequence[CohClass], top: int, one: CohClass) -> list[CohClass]:
    e = [one] + [one * 0] * top
    for y in chars:
        for k in range(top, 0, -1):
            e[k] = e[k] + e[k - 1] * y
    return e


def _complete(chars: Sequence[CohClass], top: int, one: CohClass) -> list[CohClass]:
    h = [one] + [one * 0] * top
    for y in chars:
        for k in range(1, top + 1):
            h[k] = h[k] + h[k - 1] * y
    return h


def line_characters(roots: Sequence[CohClass], normal: Sequence[tuple[int, CohClass]] = ()):
    """Equivariant Chern characters of the lines making up ``T_C`` restricted to F."""
    chars = []
    for x in roots:
        chars += [exp_class(x), exp_class(-x)]
    for k, c in normal:
        chars += [exp_class(-c) * RatFuncG.g_power(k), exp_class(c) * RatFuncG.g_power(-k)]
    return chars


def r_bundle_oracle(
    roots: Sequence[CohClass], Q: int, normal: Sequence[tuple[int, CohClass]] = ()
) -> QSeries:
    """``ch`` of ``sum q^i R_i`` built from exterior and symmetric powers.

    ``ch Lambda^k`` and ``ch S^k`` are the elementary and complete symmetric
    functions of the line characters; no series inversion is involved.
    """
    chars = line_characters(roots, normal)
    ring = (roots[0] if roots else normal[0][1]).ring
    one = ring.const(1)
    e = _elementary(chars, Q, one)
    h = _complete(chars, Q, one)
    out = QSeries.const(one, Q)
    for r in range(1, Q + 1):
        lam = [one * 0] * (Q + 1)
        sym = [one * 0] * (Q + 1)
        for k in range(Q // r + 1):
            lam[k * r] = e[k]
            sym[k * r] = h[k]
        out = out * QSeries(lam, Q) * QSeries(sym, Q)
    return out


# -- vanishing of the twisted signatures -----------------------------------


@dataclass
class Theorem16Verdict:
    order: int
    spin: bool
    prime: Union[PrimeCertificate, PrimeRefusal]
    fixed_dim: int | None
    fixed_dim_ok: bool
    symbolic: TwistedSeriesReport
    xi: TwistedSeriesReport | None = None
    holds: bool | None = None
    component_zero: dict[str, bool] = field(default_factory=dict)

    @property
    def applicable(self) -> bool:
        return self.spin and bool(self.prime) and self.fixed_dim_ok

    @property
    def failed_hypotheses(self) -> list[str]:
        out = []
        if not self.spin:
            out.append("manifold not asserted spin")
        if not self.prime:
            out.append(f"action not prime (witness {self.prime.witness})")
        if not self.fixed_dim_ok:
            out.append(f"fixed-set dimension {self.fixed_dim} is not < n")
        return out

    @property
    def passed(self) -> bool:
        return not self.applicable or bool(self.holds)


def theorem_1_6_check(data: ManifoldData, Q: int = DEFAULT_Q) -> Theorem16Verdict:
    fdim = fixed_dimension(data)
    verdict = Theorem16Verdict(
        order=Q,
        spin=bool(data.spin),
        prime=prime_check(data),
        fixed_dim=fdim,
        fixed_dim_ok=fdim is None or fdim < data.n,
        symbolic=twisted_signature_series(data, Q, "symbolic"),
    )
    if verdict.prime:
        verdict.xi = twisted_signature_series(data, Q, EvalMode("xi", verdict.prime))
    if verdict.applicable:
        # The Euler class multiplies each component's whole q-series, so every
        # coefficient of every xi contribution must die by degree.
        verdict.component_zero = {
            name: all(c == 0 for c in coeffs) for name, coeffs in verdict.xi.contributions.items()
        }
        verdict.holds = (
            all(c == 0 for c in verdict.symbolic.coefficients)
            and all(c == 0 for c in verdict.xi.coefficients)
            and all(verdict.component_zero.values())
        )
    return verdict
