"""Hand-checkable circle actions with known invariants.

Conventions: a point whose tangent space is C^r with the circle acting by
``lambda^{k_1}, ..., lambda^{k_r}`` in complex coordinates is recorded with
those weights and ``<1> = +1`` when the complex orientation agrees with the
manifold's.  Where a chart orientation is reversed the point carries ``-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .fixedpoint import (
    Expected,
    FixedComponent,
    ManifoldData,
    NormalSummand,
    PrimeCertificate,
    prime_check,
    validate,
)
from .genus import component_signature
from .graded import GradedRing
from .localization import EvalMode, equivariant_signature, theorem_1_4_check
from .twisted import DEFAULT_Q, theorem_1_6_check, twisted_signature_series

point = FixedComponent.point

ZEROS = (Fraction(0),) * (DEFAULT_Q + 1)
# sign(CP^2, R_i) for i = 0..3: the g = 1 value of both equivariant CP^2
# characters and the trivial-action (no localization) evaluation agree.
CP2_R_INDICES = tuple(Fraction(v) for v in (1, 32, 256, 1408))


class UnknownEntryError(KeyError):
    pass


def _cp1_rotation() -> ManifoldData:
    return ManifoldData(
        "cp1_rotation",
        2,
        True,
        [point("north", [1]), point("south", [-1])],
        Expected(
            signature=Fraction(0),
            rigid=True,
            prime_t=Fraction(1, 2),
            theorem_1_4=False,
            theorem_1_6=True,
            twisted_order=DEFAULT_Q,
            twisted_rigid=True,
            twisted_values=ZEROS,
            twisted_indices=ZEROS,
            notes={
                "signature": "(1+g)/(1-g) + (1+1/g)/(1-1/g) = 0; sign(S^2) = 0",
                "theorem_1_4": "dimension 2 is not divisible by 4",
            },
        ),
    )


def _cp2_linear() -> ManifoldData:
    return ManifoldData(
        "cp2_linear",
        4,
        False,
        [point("p0", [1, 2]), point("p1", [-1, 1]), point("p2", [-2, -1])],
        Expected(
            signature=Fraction(1),
            rigid=True,
            prime_witness=(1, 2),
            theorem_1_4=False,
            theorem_1_6=False,
            twisted_order=DEFAULT_Q,
            twisted_rigid=False,
            twisted_values=(Fraction(1), None, None, None),
            twisted_indices=CP2_R_INDICES,
            notes={
                "signature": "2 a_1 a_2 - a_1^2 = 1 with a_k = (1+g^k)/(1-g^k); sign(CP^2) = 1",
                "prime": "weights 1 and 2 have different 2-adic valuation",
                "twisted": "CP^2 is not spin: q^1.. coefficients are Laurent polynomials in g",
            },
        ),
    )


def _cp2_with_fixed_cp1() -> ManifoldData:
    ring = GradedRing.of([("h", 2)], 2)
    h = ring.gen("h")
    cp1 = FixedComponent(
        "cp1",
        2,
        [("h", 2)],
        {(1,): Fraction(1)},
        [2 * h],
        [NormalSummand(1, h)],
    )
    return ManifoldData(
        "cp2_with_fixed_cp1",
        4,
        False,
        [cp1, point("p", [-1, -1])],
        Expected(
            signature=Fraction(1),
            rigid=True,
            prime_t=Fraction(1, 2),
            theorem_1_4=False,
            theorem_1_6=False,
            twisted_order=DEFAULT_Q,
            twisted_rigid=False,
            twisted_values=(Fraction(1), None, None, None),
            twisted_indices=CP2_R_INDICES,
            notes={
                "signature": "-4g/(1-g)^2 + (1+g)^2/(1-g)^2 = 1",
                "theorem_1_4": "semi-free but the fixed CP^1 has dimension 2 = n: hypothesis is sharp",
            },
        ),
    )


def _s2xs2_diagonal() -> ManifoldData:
    return ManifoldData(
        "s2xs2_diagonal",
        4,
        True,
        [
            point("nn", [1, 1]),
            point("ns", [1, -1]),
            point("sn", [-1, 1]),
            point("ss", [-1, -1]),
        ],
        Expected(
            signature=Fraction(0),
            rigid=True,
            prime_t=Fraction(1, 2),
            theorem_1_4=True,
            theorem_1_6=True,
            twisted_order=DEFAULT_Q,
            twisted_rigid=True,
            twisted_values=ZEROS,
            twisted_indices=ZEROS,
            notes={"signature": "a^2 - 2a^2 + a^2 = 0 with a = (1+g)/(1-g)"},
        ),
    )


def _free_action() -> ManifoldData:
    return ManifoldData(
        "free_action",
        4,
        True,
        [],
        Expected(
            signature=Fraction(0),
            rigid=True,
            prime_t=Fraction(1, 2),
            theorem_1_4=True,
            theorem_1_6=True,
            twisted_order=DEFAULT_Q,
            twisted_rigid=True,
            twisted_values=ZEROS,
            twisted_indices=ZEROS,
            notes={"signature": "empty localization sum", "prime": "vacuous"},
        ),
    )


def _cp2_trivial() -> ManifoldData:
    # Splitting generators x1, x2 with p1 = x1^2 + x2^2 -> 3 and e = x1 x2 -> 3.
    ring = GradedRing.of([("x1", 2), ("x2", 2)], 4)
    comp = FixedComponent(
        "cp2",
        4,
        [("x1", 2), ("x2", 2)],
        {(2, 0): Fraction(3, 2), (0, 2): Fraction(3, 2), (1, 1): Fraction(3)},
        [ring.gen("x1"), ring.gen("x2")],
        [],
    )
    return ManifoldData(
        "cp2_trivial",
        4,
        False,
        [comp],
        Expected(
            signature=Fraction(1),
            rigid=True,
            prime_t=Fraction(1, 2),
            theorem_1_4=False,
            theorem_1_6=False,
            twisted_order=DEFAULT_Q,
            twisted_rigid=True,
            twisted_values=CP2_R_INDICES,
            twisted_indices=CP2_R_INDICES,
            notes={
                "signature": "L-genus p1/3 = 1",
                "twisted": "<(4 + p1/3)(4 + p1), [CP^2]> = 16 = sign(CP^2, T); R_1 = 2T gives 32",
            },
        ),
    )


def _s4_rotation() -> ManifoldData:
    return ManifoldData(
        "s4_rotation",
        4,
        True,
        [point("north", [1, 1]), point("south", [1, 1], orientation=-1)],
        Expected(
            signature=Fraction(0),
            rigid=True,
            prime_t=Fraction(1, 2),
            theorem_1_4=True,
            theorem_1_6=True,
            twisted_order=DEFAULT_Q,
            twisted_rigid=True,
            twisted_values=ZEROS,
            twisted_indices=ZEROS,
            notes={"signature": "the south chart reverses orientation: a^2 - a^2 = 0"},
        ),
    )


def _hp2_torus() -> ManifoldData:
    # Circle lambda -> diag(1, lambda, lambda^2) in Sp(3); tangent weights at
    # the i-th fixed point are a_j -+ a_i for j != i with a = (0, 1, 2).
    a = (0, 1, 2)
    pts = []
    for i in range(3):
        weights = []
        for j in range(3):
            if j != i:
                weights += [a[j] - a[i], a[j] + a[i]]
        pts.append(point(f"p{i}", weights))
    return ManifoldData(
        "hp2_torus",
        8,
        True,
        pts,
        Expected(
            signature=Fraction(1),
            rigid=True,
            prime_witness=(1, 2),
            theorem_1_4=False,
            theorem_1_6=False,
            twisted_order=DEFAULT_Q,
            twisted_rigid=True,
            twisted_values=(Fraction(1), Fraction(0), Fraction(0), Fraction(0)),
            twisted_indices=(Fraction(1), Fraction(0), Fraction(0), Fraction(0)),
            notes={
                "signature": "sign(HP^2) = 1",
                "twisted": "spin: every coefficient rigid",
                "prime": "no prime action of this type exists, consistent with sign = 1",
            },
        ),
    )


_BUILDERS = {
    "cp1_rotation": _cp1_rotation,
    "cp2_linear": _cp2_linear,
    "cp2_with_fixed_cp1": _cp2_with_fixed_cp1,
    "s2xs2_diagonal": _s2xs2_diagonal,
    "free_action": _free_action,
    "cp2_trivial": _cp2_trivial,
    "s4_rotation": _s4_rotation,
    "hp2_torus": _hp2_torus,
}

REQUIRED = ("cp1_rotation", "cp2_linear", "cp2_with_fixed_cp1", "s2xs2_diagonal", "free_action")


def catalog_entries() -> list[ManifoldData]:
    return [build() for build in _BUILDERS.values()]


def catalog_entry(name: str) -> ManifoldData:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise UnknownEntryError(f"unknown entry {name!r}") from None


# -- regression runner ---------------------------------------------------------


@dataclass
class CheckResult:
    entry: str
    check: str
    ok: bool
    detail: str = ""


@dataclass
class CatalogReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def mismatches(self) -> list[CheckResult]:
        return [r for r in self.results if not r.ok]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def entries(self) -> list[str]:
        return list(dict.fromkeys(r.entry for r in self.results))


def check_entry(data: ManifoldData, Q: int = DEFAULT_Q) -> list[CheckResult]:
    """Recompute everything for one description and compare with ``data.expected``."""
    exp = data.expected or Expected()
    out: list[CheckResult] = []

    def record(check, ok, detail=""):
        out.append(CheckResult(data.name, check, bool(ok), detail))

    violations = validate(data)
    record("validate", not violations, "; ".join(map(str, violations)))
    if violations:
        return out

    sym = equivariant_signature(data, "symbolic")
    record("rigid", exp.rigid is None or sym.constant == exp.rigid, f"total = {sym.total}")
    if exp.signature is not None:
        record("signature", sym.value == exp.signature, f"{sym.value} vs {exp.signature}")

    zero = equivariant_signature(data, "zero")
    local = sum((component_signature(F) for F in data.components), Fraction(0))
    record("g=0 total = sum sign(F)", zero.total == local, f"{zero.total} vs {local}")
    if sym.constant:
        record("g=0 total = symbolic", zero.total == sym.value, f"{zero.total} vs {sym.value}")

    cert = prime_check(data)
    if exp.prime_t is not None:
        ok = isinstance(cert, PrimeCertificate) and cert.t == exp.prime_t
        record("prime", ok, repr(cert))
    if exp.prime_witness is not None:
        ok = not cert and tuple(cert.witness) == tuple(exp.prime_witness)
        record("prime", ok, repr(cert))
    if cert:
        xi = equivariant_signature(data, EvalMode("xi", cert))
        if sym.constant:
            record("xi total = symbolic", xi.total == sym.value, f"{xi.total} vs {sym.value}")

    t14 = theorem_1_4_check(data)
    record("signature vanishing verdict", t14.passed, "; ".join(t14.failed_hypotheses))
    if exp.theorem_1_4 is not None:
        record("signature vanishing applicability", t14.applicable == exp.theorem_1_4)

    order = exp.twisted_order or Q
    tw = twisted_signature_series(data, order, "symbolic")
    record("twisted q^0 = untwisted", tw.coefficients[0] == sym.total)
    if exp.twisted_rigid is not None:
        record("twisted rigidity", tw.rigid == exp.twisted_rigid, str(tw.constant))
    if exp.twisted_values is not None:
        record("twisted values", tuple(tw.values) == tuple(exp.twisted_values), str(tw.values))
    if exp.twisted_indices is not None:
        record("twisted indices", tuple(tw.indices) == tuple(exp.twisted_indices), str(tw.indices))

    t16 = theorem_1_6_check(data, order)
    record("twisted vanishing verdict", t16.passed, "; ".join(t16.failed_hypotheses))
    if exp.theorem_1_6 is not None:
        record("twisted vanishing applicability", t16.applicable == exp.theorem_1_6)
    return out


def run_catalog(name: Optional[str] = None) -> CatalogReport:
    entries = [catalog_entry(name)] if name is not None else catalog_entries()
    report = CatalogReport()
    for data in entries:
        report.results.extend(check_entry(data))
    return report
