"""Truncated graded polynomial rings and q-series over them.

A :class:`CohClass` is an element of the free commutative polynomial ring on
even-degree generators, modulo every monomial of degree above the ring's top
degree.  Coefficients are either ``Fraction`` or :class:`~circlesig.ratfunc.RatFuncG`;
the two may be mixed freely since ``Fraction`` promotes into ``RatFuncG``.

Positive-degree elements are nilpotent, so ``exp`` and inverses of units are
finite sums.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .ratfunc import RatFuncG, as_rational

Exponents = tuple[int, ...]


class StructuralError(ValueError):
    """Operands live in different rings (generators or truncation differ)."""


class NonUnitError(ArithmeticError):
    """Attempted to invert an element whose constant part is not invertible."""


@dataclass(frozen=True)
class GradedRing:
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    top: int

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise StructuralError("one degree per generator required")
        if any(d <= 0 or d % 2 for d in self.degrees):
            raise StructuralError("generator degrees must be positive and even")
        if self.top < 0 or self.top % 2:
            raise StructuralError("truncation must be an even nonnegative integer")

    @classmethod
    def of(cls, generators: Iterable[tuple[str, int]], top: int) -> "GradedRing":
        gens = list(generators)
        return cls(tuple(n for n, _ in gens), tuple(d for _, d in gens), top)

    @property
    def ngens(self) -> int:
        return len(self.names)

    def degree(self, exps: Exponents) -> int:
        return sum(e * d for e, d in zip(exps, self.degrees))

    def zero_exps(self) -> Exponents:
        return (0,) * self.ngens

    def monomials(self, degree: int | None = None) -> list[Exponents]:
        """All exponent vectors of total degree ``degree`` (or ``<= top``)."""
        bounds = [range(self.top // d + 1) for d in self.degrees]
        out = []
        for exps in itertools.product(*bounds):
            deg = self.degree(exps)
            if deg <= self.top and (degree is None or deg == degree):
                out.append(tuple(exps))
        return out

    def const(self, c=1) -> "CohClass":
        return CohClass(self, {self.zero_exps(): c})

    def zero(self) -> "CohClass":
        return CohClass(self, {})

    def gen(self, name_or_index, coeff=1) -> "CohClass":
        i = name_or_index if isinstance(name_or_index, int) else self.names.index(name_or_index)
        exps = tuple(int(j == i) for j in range(self.ngens))
        return CohClass(self, {exps: coeff})

    def linear(self, coeffs: Mapping[str, object]) -> "CohClass":
        """Linear combination of generators, e.g. ``{"h": 2}`` -> ``2h``."""
        out = self.zero()
        for name, c in coeffs.items():
            out = out + self.gen(name, c)
        return out


class CohClass:
    """Truncated polynomial in a :class:`GradedRing`. Immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedRing, terms: Mapping[Exponents, object]):
        clean = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != ring.ngens:
                raise StructuralError(f"exponent vector {exps} has wrong length")
            if any(e < 0 for e in exps):
                raise StructuralError(f"negative exponent in {exps}")
            if ring.degree(exps) > ring.top or not c:
                continue
            clean[exps] = as_rational(c) if isinstance(c, int) else c
        self.ring = ring
        self.terms: dict[Exponents, object] = clean

    def _check(self, other: "CohClass") -> None:
        if not isinstance(other, CohClass):
            raise StructuralError(f"cannot combine CohClass with {type(other).__name__}")
        if other.ring != self.ring:
            raise StructuralError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _lift(self, other) -> "CohClass":
        if isinstance(other, CohClass):
            self._check(other)
            return other
        return self.ring.const(other)

    def __eq__(self, other):
        if isinstance(other, CohClass):
            return self.ring == other.ring and _terms_equal(self.terms, other.terms)
        if isinstance(other, (int, Fraction, RatFuncG)):
            return _terms_equal(self.terms, self.ring.const(other).terms)
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            out[exps] = out[exps] + c if exps in out else c
        return CohClass(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return CohClass(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, CohClass):
            if isinstance(other, (int, Fraction, RatFuncG)):
                return CohClass(self.ring, {e: c * other for e, c in self.terms.items()})
            return NotImplemented
        self._check(other)
        ring = self.ring
        out: dict[Exponents, object] = {}
        for ea, ca in self.terms.items():
            da = ring.degree(ea)
            for eb, cb in other.terms.items():
                if da + ring.degree(eb) > ring.top:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out[e] + ca * cb if e in out else ca * cb
        return CohClass(ring, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        out = self.ring.const(1)
        for _ in range(n):
            out = out * self
        return out

    def constant_part(self):
        return self.terms.get(self.ring.zero_exps(), Fraction(0))

    def part(self, degree: int) -> "CohClass":
        return CohClass(
            self.ring,
            {e: c for e, c in self.terms.items() if self.ring.degree(e) == degree},
        )

    def min_degree(self):
        """Smallest degree carrying a nonzero term (``None`` for zero)."""
        return min((self.ring.degree(e) for e in self.terms), default=None)

    def is_homogeneous(self, degree: int) -> bool:
        return all(self.ring.degree(e) == degree for e in self.terms)

    def map_coeffs(self, fn: Callable) -> "CohClass":
        return CohClass(self.ring, {e: fn(c) for e, c in self.terms.items()})

    def truncate(self, top: int) -> "CohClass":
        """Reinterpret in the same generators with a lower truncation."""
        if top > self.ring.top:
            raise StructuralError("truncate can only lower the top degree")
        return CohClass(GradedRing(self.ring.names, self.ring.degrees, top), self.terms)

    def extend(self, top: int) -> "CohClass":
        """Same terms viewed in a ring with a higher truncation."""
        if top < self.ring.top:
            raise StructuralError("extend can only raise the top degree")
        return CohClass(GradedRing(self.ring.names, self.ring.degrees, top), self.terms)

    def __repr__(self):
        if not self.terms:
            return "CohClass(0)"
        parts = []
        for exps, c in sorted(self.terms.items()):
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(self.ring.names, exps) if e
            )
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return "CohClass(" + " + ".join(parts) + ")"


def _terms_equal(a: Mapping, b: Mapping) -> bool:
    if a.keys() != b.keys():
        return False
    return all(a[k] == b[k] for k in a)


def ring_add(a: CohClass, b: CohClass) -> CohClass:
    a._check(b)
    return a + b


def ring_mul(a: CohClass, b: CohClass) -> CohClass:
    a._check(b)
    return a * b


def _nilpotent_series(nil: CohClass, coeffs: Callable[[int], object]) -> CohClass:
    """Sum ``coeffs(j) * nil**j`` for j >= 0 until the powers vanish."""
    out = nil.ring.const(coeffs(0))
    power = nil.ring.const(1)
    j = 0
    while True:
        j += 1
        power = power * nil
        if not power:
            return out
        out = out + power * coeffs(j)


def exp_class(c: CohClass) -> CohClass:
    """``exp(c)`` for ``c`` with zero constant part."""
    if c.constant_part():
        raise ValueError("exp_class needs a class with zero degree-0 part")
    fact = [Fraction(1)]

    def coeff(j):
        while len(fact) <= j:
            fact.append(fact[-1] / len(fact))
        return fact[j]

    return _nilpotent_series(c, coeff)


def series_inverse(c: CohClass) -> CohClass:
    """Exact inverse of a unit: ``a0^{-1} * sum_j (-(c - a0)/a0)^j``."""
    a0 = c.constant_part()
    if not a0:
        raise NonUnitError("constant part is zero; class is not a unit")
    try:
        inv0 = 1 / a0
    except ZeroDivisionError as exc:
        raise NonUnitError(str(exc)) from exc
    nil = (c - a0) * (-inv0)
    return _nilpotent_series(nil, lambda j: Fraction(1)) * inv0


class QSeries:
    """Power series in ``q`` modulo ``q**(order+1)``; coefficients in any ring."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0 or not coeffs:
            raise ValueError("QSeries needs order >= 0 and a constant coefficient")
        zero = coeffs[0] * 0
        coeffs = (coeffs + [zero] * (order + 1))[: order + 1]
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def const(cls, c, order: int) -> "QSeries":
        return cls([c], order)

    @classmethod
    def binomial(cls, one, r: int, c, order: int) -> "QSeries":
        """``one + c * q**r`` (truncated)."""
        coeffs = [one] + [one * 0] * order
        if r <= order:
            coeffs[r] = coeffs[r] + c
        return cls(coeffs, order)

    def _check(self, other: "QSeries"):
        if other.order != self.order:
            raise StructuralError("q-series orders differ")

    def __getitem__(self, i):
        return self.coeffs[i]

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self.order == other.order and all(
                a == b for a, b in zip(self.coeffs, other.coeffs)
            )
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        return QSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __neg__(self):
        return QSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return QSeries([a * other for a in self.coeffs], self.order)
        self._check(other)
        n = self.order
        out = []
        for k in range(n + 1):
            acc = self.coeffs[0] * other.coeffs[k]
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return QSeries(out, n)

    def inverse(self) -> "QSeries":
        a0 = self.coeffs[0]
        inv0 = series_inverse(a0) if isinstance(a0, CohClass) else 1 / a0
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = self.coeffs[1] * out[k - 1]
            for i in range(2, k + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-(acc * inv0))
        return QSeries(out, self.order)

    def map(self, fn: Callable) -> "QSeries":
        return QSeries([fn(c) for c in self.coeffs], self.order)

    def __repr__(self):
        return f"QSeries(order={self.order}, {list(self.coeffs)!r})"
