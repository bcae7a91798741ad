"""Exact polynomials and rational functions in one formal variable ``g``.

Coefficients are :class:`fractions.Fraction`.  A :class:`RatFuncG` is kept in
canonical form at all times: numerator and denominator coprime, denominator
monic.  Two values are equal iff their canonical forms coincide, so constancy
of a rational function is a structural test.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Union

Rational = Fraction

NEG_INF = float("-inf")

Scalar = Union[int, Fraction]


def as_rational(value) -> Fraction:
    """Coerce an int or Fraction to Fraction; refuse anything inexact."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` strictly (no floats, no whitespace games)."""
    if not isinstance(text, str):
        raise TypeError(f"rational must be a string, got {type(text).__name__}")
    num, sep, den = text.partition("/")
    if not _is_int_literal(num) or (sep and not _is_int_literal(den, signed=False)):
        raise ValueError(f"malformed rational {text!r}")
    if sep and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if sep else 1)


def _is_int_literal(s: str, signed: bool = True) -> bool:
    if signed and s[:1] == "-":
        s = s[1:]
    return s.isascii() and s.isdigit()


class PolyG:
    """Dense univariate polynomial with Fraction coefficients, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1) -> "PolyG":
        if exponent < 0:
            raise ValueError("PolyG exponents are nonnegative")
        return cls([0] * exponent + [coeff])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def terms(self) -> dict[int, Fraction]:
        return {i: c for i, c in enumerate(self.coeffs) if c}

    def __eq__(self, other):
        if isinstance(other, PolyG):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "PolyG") -> "PolyG":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyG([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self) -> "PolyG":
        return PolyG([-c for c in self.coeffs])

    def __sub__(self, other: "PolyG") -> "PolyG":
        return self + (-other)

    def __mul__(self, other: "PolyG") -> "PolyG":
        if not self.coeffs or not other.coeffs:
            return PolyG()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyG(out)

    def scale(self, c: Scalar) -> "PolyG":
        return PolyG([c * x for x in self.coeffs])

    def divmod(self, other: "PolyG") -> tuple["PolyG", "PolyG"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for k in range(len(rem) - dd - 1, -1, -1):
            c = rem[k + dd] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return PolyG(quot), PolyG(rem[:dd])

    def monic(self) -> "PolyG":
        return self.scale(1 / self.lead()) if self.coeffs else self

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + (float(c) if isinstance(x, (float, complex)) else c)
        return acc

    def __repr__(self):
        return f"PolyG({format_poly(self)})"


def poly_gcd(a: PolyG, b: PolyG) -> PolyG:
    """Monic gcd over Q (Euclid, with content cleared to slow coefficient growth)."""
    while not b.is_zero():
        a, b = b, _primitive(a.divmod(b)[1])
    return a.monic()


def _primitive(p: PolyG) -> PolyG:
    if p.is_zero():
        return p
    den = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    g = math.gcd(*ints)
    return PolyG([Fraction(i, g) for i in ints])


def format_poly(p: PolyG, var: str = "g") -> str:
    """Ascending powers, e.g. ``1 - 2*g + g^2``."""
    if p.is_zero():
        return "0"
    out = []
    for k, c in p.terms().items():
        mag = abs(c)
        if k == 0:
            body = format_rational(mag)
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if mag == 1 else f"{format_rational(mag)}*{power}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)


class RatFuncG:
    """Element of Q(g) in reduced, monic-denominator form. Immutable."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _canonical: bool = False):
        num = num if isinstance(num, PolyG) else PolyG([num])
        den = PolyG([1]) if den is None else (den if isinstance(den, PolyG) else PolyG([den]))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c: Scalar) -> "RatFuncG":
        return cls(PolyG([c]), PolyG([1]), _canonical=True)

    @classmethod
    def g_power(cls, k: int) -> "RatFuncG":
        """``g**k`` for any integer ``k``; negative powers become ``1/g^|k|``."""
        if k >= 0:
            return cls(PolyG.monomial(k), PolyG([1]), _canonical=True)
        return cls(PolyG([1]), PolyG.monomial(-k), _canonical=True)

    def canonicalize(self) -> "RatFuncG":
        return RatFuncG(self.num, self.den)

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, RatFuncG):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    def _coerce(self, other) -> "RatFuncG":
        if isinstance(other, RatFuncG):
            return other
        return RatFuncG.const(as_rational(other))

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return RatFuncG(self.num + o.num, self.den)
        return RatFuncG(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFuncG(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return RatFuncG(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFuncG":
        if not self:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFuncG(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFuncG.const(1)
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self, x):
        """Evaluate at a float/complex (oracle use) or exact Fraction."""
        if isinstance(x, (float, complex)):
            return self.num.evaluate(x) / self.den.evaluate(x)
        return Fraction(self.num.evaluate(x)) / self.den.evaluate(x)

    def __str__(self):
        if self.den == PolyG([1]):
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    def __repr__(self):
        return f"RatFuncG({self})"


def _canonicalize(num: PolyG, den: PolyG) -> tuple[PolyG, PolyG]:
    if num.is_zero():
        return num, PolyG([1])
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, r1 = num.divmod(g)
        den, r2 = den.divmod(g)
        assert r1.is_zero() and r2.is_zero()
    lead = den.lead()
    return num.scale(1 / lead), den.scale(1 / lead)


def ratfunc_canonicalize(r: RatFuncG) -> RatFuncG:
    return r.canonicalize()


G = RatFuncG.g_power(1)
