"""Fixed-point localization of the equivariant signature.

Each fixed component F contributes

    < prod_i x_i (1+e^{-x_i})/(1-e^{-x_i}) * prod_j (1+g^{k_j} e^{-c_j})/(1-g^{k_j} e^{-c_j}), [F] >

and the sum over components is the equivariant signature ``sign(g, M)``.
Three evaluation modes are offered:

* ``symbolic``: ``g`` is an indeterminate; the total lives in Q(g) and must be
  constant for data coming from an actual action.
* ``zero``: the limit ``g -> 0``.  A normal factor tends to ``+1`` for a
  positive weight and to ``-1`` for a negative one.
* ``xi``: ``g`` is a root of unity with ``g**k == -1`` for every weight, so each
  normal factor becomes ``(1 - e^{-c})/(1 + e^{-c})`` before expansion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .fixedpoint import (
    FixedComponent,
    ManifoldData,
    PrimeCertificate,
    PrimeRefusal,
    fixed_dimension,
    prime_check,
)
from .genus import pair, tangent_product
from .graded import CohClass, NonUnitError, exp_class, series_inverse
from .ratfunc import RatFuncG


class SingularFactorError(ArithmeticError):
    """A localization denominator had a non-invertible constant part."""


class NotPrimeError(ValueError):
    """The ``xi`` mode was requested for an action that is not prime."""


class NotRigidError(ArithmeticError):
    """The symbolic total depends on g: the data is not realizable or is inconsistent."""

    def __init__(self, total: RatFuncG):
        super().__init__(f"not rigid: equivariant signature is {total}")
        self.total = total


@dataclass(frozen=True)
class EvalMode:
    kind: str
    certificate: PrimeCertificate | None = None

    KINDS = ("symbolic", "zero", "xi")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown evaluation mode {self.kind!r}")
        if self.kind == "xi" and not (
            isinstance(self.certificate, PrimeCertificate) and self.certificate.verified
        ):
            raise NotPrimeError("xi mode needs a verified prime certificate")

    @classmethod
    def resolve(cls, mode: Union["EvalMode", str], data: ManifoldData) -> "EvalMode":
        if isinstance(mode, EvalMode):
            return mode
        if mode == "xi":
            cert = prime_check(data)
            if isinstance(cert, PrimeRefusal):
                raise NotPrimeError(f"action is not prime (witness weights {cert.witness})")
            return cls("xi", cert)
        return cls(mode)


SYMBOLIC = EvalMode("symbolic")
AT_ZERO = EvalMode("zero")


def normal_factor(k: int, c1: CohClass, kind: str) -> CohClass:
    """One factor ``(1 + g^k e^{-c1}) / (1 - g^k e^{-c1})`` in the given mode."""
    ring = c1.ring
    if kind == "zero":
        return ring.const(1 if k > 0 else -1)
    e = exp_class(-c1)
    if kind == "xi":
        num, den = 1 - e, 1 + e
    else:
        gk = RatFuncG.g_power(k)
        num, den = 1 + e * gk, 1 - e * gk
    try:
        return num * series_inverse(den)
    except NonUnitError as exc:
        raise SingularFactorError(f"singular factor for weight {k}: {exc}") from exc


def normal_product(F: FixedComponent, kind: str) -> CohClass:
    out = F.ring.const(1)
    for s in F.normal:
        out = out * normal_factor(s.weight, s.c1, kind)
    return out


def _as_mode_value(value, kind: str):
    if kind == "symbolic":
        return value if isinstance(value, RatFuncG) else RatFuncG.const(value)
    if isinstance(value, RatFuncG):
        return value.constant_value()
    return Fraction(value)


def component_contribution(F: FixedComponent, mode: Union[EvalMode, str] = SYMBOLIC):
    kind = mode.kind if isinstance(mode, EvalMode) else mode
    if kind not in EvalMode.KINDS:
        raise ValueError(f"unknown evaluation mode {kind!r}")
    integrand = tangent_product(F.tangent_roots, F.ring) * normal_product(F, kind)
    return _as_mode_value(pair(integrand, F.fundamental), kind)


@dataclass
class LocalizationReport:
    mode: str
    contributions: dict[str, object]
    total: object
    constant: bool
    value: Fraction | None = None
    certificate: PrimeCertificate | None = field(default=None, repr=False)


def equivariant_signature(
    data: ManifoldData, mode: Union[EvalMode, str] = SYMBOLIC
) -> LocalizationReport:
    mode = EvalMode.resolve(mode, data)
    contributions = {F.name: component_contribution(F, mode) for F in data.components}
    zero = RatFuncG.const(0) if mode.kind == "symbolic" else Fraction(0)
    total = sum(contributions.values(), zero)
    if mode.kind == "symbolic":
        constant = total.is_constant()
        value = total.constant_value() if constant else None
    else:
        constant, value = True, total
    return LocalizationReport(mode.kind, contributions, total, constant, value, mode.certificate)


def assert_rigid(report: LocalizationReport) -> Fraction:
    """Return the constant value of a symbolic total, or raise NotRigidError."""
    if report.mode != "symbolic":
        raise ValueError("rigidity is a statement about the symbolic total")
    if not report.total.is_constant():
        raise NotRigidError(report.total)
    return report.total.constant_value()


# -- Euler class extraction --------------------------------------------------


@dataclass
class EulerFactorization:
    component: str
    codim_degree: int
    top: int
    substituted: CohClass
    euler_class: CohClass
    unit: CohClass
    degree_ok: bool
    factorization_ok: bool

    @property
    def forced_zero(self) -> bool:
        """The Euler class lives above the top degree of F."""
        return self.codim_degree > self.top

    @property
    def vanishes(self) -> bool:
        return not self.substituted

    @property
    def ok(self) -> bool:
        return self.degree_ok and self.factorization_ok and (self.vanishes or not self.forced_zero)


def _half_series(c: CohClass) -> CohClass:
    # (1 - e^{-c}) / c = 1 - c/2 + c^2/6 - ...
    from .genus import _one_minus_exp_over_x

    return _one_minus_exp_over_x(c)


def euler_factorization_check(F: FixedComponent) -> EulerFactorization:
    """Check that the xi-substituted normal product is ``e(nu F) * unit``."""
    ring = F.ring
    substituted = normal_product(F, "xi")
    euler = ring.const(1)
    unit = ring.const(1)
    for s in F.normal:
        euler = euler * s.c1
        unit = unit * _half_series(s.c1) * series_inverse(1 + exp_class(-s.c1))
    codim = 2 * len(F.normal)
    low = substituted.min_degree()
    return EulerFactorization(
        component=F.name,
        codim_degree=codim,
        top=F.dim,
        substituted=substituted,
        euler_class=euler,
        unit=unit,
        degree_ok=low is None or low >= codim,
        factorization_ok=substituted == euler * unit,
    )


# -- vanishing of the signature for prime actions -----------------------------


@dataclass
class Theorem14Verdict:
    dim: int
    dim_divisible_by_4: bool
    prime: Union[PrimeCertificate, PrimeRefusal]
    fixed_dim: int | None
    fixed_dim_ok: bool
    symbolic_total: RatFuncG
    signature: Fraction | None
    xi_total: Fraction | None = None
    euler: list[EulerFactorization] = field(default_factory=list)
    holds: bool | None = None

    @property
    def applicable(self) -> bool:
        return self.dim_divisible_by_4 and bool(self.prime) and self.fixed_dim_ok

    @property
    def failed_hypotheses(self) -> list[str]:
        out = []
        if not self.dim_divisible_by_4:
            out.append("dimension not divisible by 4")
        if not self.prime:
            out.append(f"action not prime (witness {self.prime.witness})")
        if not self.fixed_dim_ok:
            out.append(f"fixed-set dimension {self.fixed_dim} is not < {self.dim // 2}")
        return out

    @property
    def passed(self) -> bool:
        """False only when the hypotheses hold and vanishing was not observed."""
        return not self.applicable or bool(self.holds)


def theorem_1_4_check(data: ManifoldData) -> Theorem14Verdict:
    sym = equivariant_signature(data, SYMBOLIC)
    fdim = fixed_dimension(data)
    verdict = Theorem14Verdict(
        dim=data.dim,
        dim_divisible_by_4=data.dim % 4 == 0,
        prime=prime_check(data),
        fixed_dim=fdim,
        fixed_dim_ok=fdim is None or fdim < data.n,
        symbolic_total=sym.total,
        signature=sym.value,
    )
    if verdict.prime:
        verdict.xi_total = equivariant_signature(data, EvalMode("xi", verdict.prime)).total
    if verdict.applicable:
        verdict.euler = [euler_factorization_check(F) for F in data.components]
        verdict.holds = (
            sym.constant
            and sym.value == 0
            and verdict.xi_total == 0
            and all(e.ok and e.forced_zero and e.vanishes for e in verdict.euler)
        )
    return verdict
