"""Fixed-point data of a circle action, validation, and the prime-action test."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .graded import CohClass, GradedRing, StructuralError

Exponents = tuple[int, ...]


@dataclass(frozen=True)
class NormalSummand:
    """A normal line bundle: circle weight and first Chern class."""

    weight: int
    c1: CohClass


@dataclass(frozen=True)
class FixedComponent:
    name: str
    dim: int
    generators: tuple[tuple[str, int], ...]
    fundamental: Mapping[Exponents, Fraction]
    tangent_roots: tuple[CohClass, ...]
    normal: tuple[NormalSummand, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple((str(n), int(d)) for n, d in self.generators))
        object.__setattr__(
            self,
            "fundamental",
            {tuple(e): Fraction(v) for e, v in self.fundamental.items() if v != 0},
        )
        object.__setattr__(self, "tangent_roots", tuple(self.tangent_roots))
        object.__setattr__(self, "normal", tuple(self.normal))

    @property
    def ring(self) -> GradedRing:
        return GradedRing.of(self.generators, self.dim)

    @property
    def m(self) -> int:
        return self.dim // 2

    @property
    def weights(self) -> list[int]:
        return [s.weight for s in self.normal]

    @classmethod
    def point(cls, name: str, weights: Sequence[int], orientation: int = 1) -> "FixedComponent":
        """Isolated fixed point; every normal Chern class is zero."""
        ring = GradedRing.of([], 0)
        return cls(
            name=name,
            dim=0,
            generators=(),
            fundamental={(): Fraction(orientation)},
            tangent_roots=(),
            normal=tuple(NormalSummand(k, ring.zero()) for k in weights),
        )


@dataclass(frozen=True)
class Expected:
    """Known values attached to a description; ``None`` means not asserted."""

    signature: Fraction | None = None
    rigid: bool | None = None
    prime_t: Fraction | None = None
    prime_witness: tuple[int, ...] | None = None
    theorem_1_4: bool | None = None
    theorem_1_6: bool | None = None
    twisted_order: int | None = None
    twisted_rigid: bool | None = None
    twisted_values: tuple[Fraction | None, ...] | None = None
    twisted_indices: tuple[Fraction, ...] | None = None
    notes: Mapping[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class ManifoldData:
    name: str
    dim: int
    spin: bool
    components: tuple[FixedComponent, ...]
    expected: Expected | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def n(self) -> int:
        return self.dim // 2

    def component(self, key: Union[int, str]) -> FixedComponent:
        if isinstance(key, int):
            return self.components[key]
        for c in self.components:
            if c.name == key:
                return c
        raise KeyError(f"no component named {key!r}")


@dataclass(frozen=True)
class Violation:
    component: str | None
    field: str
    rule: str

    def __str__(self):
        where = f"{self.component}." if self.component is not None else ""
        return f"{where}{self.field}: {self.rule}"


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def validate(data: ManifoldData) -> list[Violation]:
    """Return every broken invariant; an empty list means the data is well formed."""
    out: list[Violation] = []
    if not _is_int(data.dim) or data.dim <= 0 or data.dim % 2:
        out.append(Violation(None, "dim", "manifold dimension must be a positive even integer"))
        return out
    names = [c.name for c in data.components]
    for name, count in Counter(names).items():
        if count > 1:
            out.append(Violation(name, "name", "component names must be unique"))
    for idx, comp in enumerate(data.components):
        out.extend(_validate_component(comp, data.dim, idx))
    return out


def _validate_component(comp: FixedComponent, ambient: int, idx: int) -> list[Violation]:
    label = comp.name or f"components[{idx}]"
    out = []

    def bad(fieldname, rule):
        out.append(Violation(label, fieldname, rule))

    if not _is_int(comp.dim) or comp.dim < 0 or comp.dim % 2:
        bad("dim", "component dimension must be an even nonnegative integer")
        return out
    if comp.dim > ambient:
        bad("dim", "component dimension exceeds manifold dimension")
    if comp.dim + 2 * len(comp.normal) != ambient:
        bad("normal", "codimension mismatch: dim + 2*|normal| must equal manifold dim")
    gen_names = [n for n, _ in comp.generators]
    if len(set(gen_names)) != len(gen_names):
        bad("generators", "generator names must be unique")
    if any(d <= 0 or d % 2 for _, d in comp.generators):
        bad("generators", "generator degrees must be positive and even")
        return out
    try:
        ring = comp.ring
    except StructuralError as exc:
        bad("generators", str(exc))
        return out

    if len(comp.tangent_roots) != comp.m:
        bad("tangent_roots", f"expected {comp.m} tangent roots, got {len(comp.tangent_roots)}")
    for i, x in enumerate(comp.tangent_roots):
        if not isinstance(x, CohClass) or x.ring != ring:
            bad(f"tangent_roots[{i}]", "root must live in the component's ring")
        elif not x.is_homogeneous(2):
            bad(f"tangent_roots[{i}]", "root must be homogeneous of degree 2")

    for j, s in enumerate(comp.normal):
        if not _is_int(s.weight):
            bad(f"normal[{j}].weight", "weight must be an integer")
        elif s.weight == 0:
            bad(f"normal[{j}].weight", "weight must be nonzero")
        if not isinstance(s.c1, CohClass) or s.c1.ring != ring:
            bad(f"normal[{j}].c1", "c1 must live in the component's ring")
        elif not s.c1.is_homogeneous(2):
            bad(f"normal[{j}].c1", "c1 must be homogeneous of degree 2")

    for exps, value in comp.fundamental.items():
        if len(exps) != ring.ngens or any((not _is_int(e)) or e < 0 for e in exps):
            bad("fundamental", f"exponent vector {list(exps)} does not match generators")
        elif ring.degree(exps) != comp.dim:
            bad("fundamental", f"exponent vector {list(exps)} is not of top degree {comp.dim}")
    if comp.dim == 0 and comp.fundamental.get((), None) not in (1, -1):
        bad("fundamental", "a point's fundamental class must be +1 or -1")
    return out


def weight_multiset(data: ManifoldData) -> list[int]:
    """All normal weights of all components, signs kept, in component order."""
    return [k for comp in data.components for k in comp.weights]


def fixed_dimension(data: ManifoldData) -> int | None:
    """Dimension of the highest-dimensional fixed component (None if empty)."""
    return max((c.dim for c in data.components), default=None)


# -- prime actions ---------------------------------------------------------


@dataclass(frozen=True)
class PrimeCertificate:
    """``xi = exp(2 pi i t)`` satisfies ``xi**k == -1`` for every weight."""

    t: Fraction
    order: int
    verified: bool
    vacuous: bool = False

    def __bool__(self):
        return True


@dataclass(frozen=True)
class PrimeRefusal:
    """No ``xi`` works; ``witness`` is a set of weights with no common solution."""

    witness: tuple[int, ...]

    def __bool__(self):
        return False


def _is_half_integer_multiple(k: int, t: Fraction) -> bool:
    return (k * t - Fraction(1, 2)).denominator == 1


def _first_solution(abs_weights: Sequence[int]) -> Fraction | None:
    L = math.lcm(*abs_weights)
    for r in range(2 * L):
        t = Fraction(r, 2 * L)
        if all(_is_half_integer_multiple(k, t) for k in abs_weights):
            return t
    return None


def prime_check(data: Union[ManifoldData, Iterable[int]]) -> Union[PrimeCertificate, PrimeRefusal]:
    """Decide whether some ``xi`` in S^1 has ``xi**k == -1`` for all weights.

    Any such ``xi`` has finite even order, so ``t`` ranges over ``r/(2L)``
    with ``L`` the lcm of ``|k|``; the first ``r`` that works is returned.
    """
    weights = weight_multiset(data) if isinstance(data, ManifoldData) else list(data)
    if any(k == 0 for k in weights):
        raise ValueError("weights must be nonzero")
    distinct = sorted({abs(k) for k in weights})
    if not distinct:
        return PrimeCertificate(Fraction(1, 2), 2, verified=True, vacuous=True)
    t = _first_solution(distinct)
    if t is not None:
        verified = all(_is_half_integer_multiple(k, t) for k in weights)
        return PrimeCertificate(t, t.denominator, verified=verified)
    for a, b in itertools.combinations(distinct, 2):
        if _first_solution([a, b]) is None:
            return PrimeRefusal((a, b))
    return PrimeRefusal(tuple(distinct))


# -- orientation conventions -----------------------------------------------


def orientation_flip(data: ManifoldData, component: Union[int, str], index: int) -> ManifoldData:
    """Replace ``(k, c1)`` by ``(-k, -c1)`` on one summand and negate ``[F]``."""
    comps = list(data.components)
    pos = component if isinstance(component, int) else [c.name for c in comps].index(component)
    comp = comps[pos]
    if not 0 <= index < len(comp.normal):
        raise IndexError(f"component {comp.name!r} has no normal summand {index}")
    normal = list(comp.normal)
    s = normal[index]
    normal[index] = NormalSummand(-s.weight, -s.c1)
    comps[pos] = replace(
        comp,
        normal=tuple(normal),
        fundamental={e: -v for e, v in comp.fundamental.items()},
    )
    return replace(data, components=tuple(comps))
