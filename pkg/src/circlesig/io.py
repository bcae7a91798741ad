"""Manifold description files (JSON) and machine-readable reports.

A description looks like::

    {
      "name": "cp2_with_fixed_cp1", "dim": 4, "spin": false,
      "components": [
        {"name": "cp1", "dim": 2,
         "generators": [{"name": "h", "degree": 2}],
         "fundamental": [{"exponents": [1], "value": "1"}],
         "tangent_roots": [[{"generator": "h", "coefficient": "2"}]],
         "normal": [{"weight": 1, "c1": [{"generator": "h", "coefficient": "1"}]}]},
        ...
      ],
      "expected": {...}          # optional
    }

Rationals are strings ``"p"`` or ``"p/q"``.  Parsing never coerces: a float
where a rational string is expected, a string where an integer is expected,
an unknown key, all are errors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .fixedpoint import (
    Expected,
    FixedComponent,
    ManifoldData,
    NormalSummand,
    PrimeCertificate,
    PrimeRefusal,
    validate,
)
from .graded import CohClass, GradedRing
from .ratfunc import RatFuncG, format_rational, parse_rational

REPORT_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ParseIssue:
    position: str
    message: str

    def __str__(self):
        return f"{self.position}: {self.message}"


class ManifoldParseError(ValueError):
    def __init__(self, issues: list[ParseIssue]):
        self.issues = issues
        super().__init__("\n".join(map(str, issues)))


class _Reader:
    """Walks the decoded JSON, collecting every problem instead of stopping."""

    def __init__(self):
        self.issues: list[ParseIssue] = []

    def err(self, path: str, msg: str):
        self.issues.append(ParseIssue(path or "$", msg))

    def obj(self, value, path, required, optional=()):
        if not isinstance(value, dict):
            self.err(path, "expected an object")
            return None
        for key in required:
            if key not in value:
                self.err(path, f"missing field {key!r}")
        for key in value:
            if key not in required and key not in optional:
                self.err(f"{path}.{key}", "unknown field")
        return value

    def int_(self, value, path):
        if isinstance(value, bool) or not isinstance(value, int):
            self.err(path, f"expected an integer, got {json.dumps(value)}")
            return None
        return value

    def bool_(self, value, path):
        if not isinstance(value, bool):
            self.err(path, f"expected true or false, got {json.dumps(value)}")
            return None
        return value

    def str_(self, value, path):
        if not isinstance(value, str):
            self.err(path, f"expected a string, got {json.dumps(value)}")
            return None
        return value

    def list_(self, value, path):
        if not isinstance(value, list):
            self.err(path, "expected an array")
            return []
        return value

    def rational(self, value, path):
        if not isinstance(value, str):
            self.err(path, f"expected a rational string like \"p/q\", got {json.dumps(value)}")
            return None
        try:
            return parse_rational(value)
        except ValueError as exc:
            self.err(path, str(exc))
            return None


def parse_manifold(text: str) -> ManifoldData:
    """Parse and validate a description; raise ManifoldParseError listing every problem."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifoldParseError(
            [ParseIssue(f"line {exc.lineno} column {exc.colno}", f"syntax error: {exc.msg}")]
        ) from None
    rd = _Reader()
    data = _read_manifold(rd, doc)
    if rd.issues:
        raise ManifoldParseError(rd.issues)
    violations = validate(data)
    if violations:
        raise ManifoldParseError([ParseIssue(v.component or "$", f"{v.field}: {v.rule}") for v in violations])
    return data


def load_manifold(path) -> ManifoldData:
    with open(path, encoding="utf-8") as fh:
        return parse_manifold(fh.read())


def _read_manifold(rd: _Reader, doc) -> ManifoldData | None:
    top = rd.obj(doc, "$", ("name", "dim", "spin", "components"), ("expected",))
    if top is None:
        return None
    name = rd.str_(top.get("name"), "$.name")
    dim = rd.int_(top.get("dim"), "$.dim")
    spin = rd.bool_(top.get("spin"), "$.spin")
    comps = []
    for i, c in enumerate(rd.list_(top.get("components"), "$.components")):
        comp = _read_component(rd, c, f"$.components[{i}]")
        if comp is not None:
            comps.append(comp)
    expected = None
    if "expected" in top:
        expected = _read_expected(rd, top["expected"], "$.expected")
    if rd.issues:
        return None
    return ManifoldData(name, dim, spin, comps, expected)


def _read_linear(rd: _Reader, value, path, ring: GradedRing | None) -> CohClass | None:
    terms = rd.list_(value, path)
    coeffs: dict[str, Fraction] = {}
    for i, t in enumerate(terms):
        p = f"{path}[{i}]"
        t = rd.obj(t, p, ("generator", "coefficient"))
        if t is None:
            continue
        gen = rd.str_(t.get("generator"), f"{p}.generator")
        c = rd.rational(t.get("coefficient"), f"{p}.coefficient")
        if gen is None or c is None:
            continue
        if ring is not None and gen not in ring.names:
            rd.err(f"{p}.generator", f"unknown generator {gen!r}")
        elif ring is not None and ring.degrees[ring.names.index(gen)] != 2:
            rd.err(f"{p}.generator", f"generator {gen!r} has degree != 2; linear forms need degree 2")
        elif gen in coeffs:
            rd.err(f"{p}.generator", f"generator {gen!r} repeated")
        else:
            coeffs[gen] = c
    if ring is None:
        return None
    return ring.linear(coeffs)


def _read_component(rd: _Reader, c, path) -> FixedComponent | None:
    c = rd.obj(c, path, ("name", "dim", "generators", "fundamental", "tangent_roots", "normal"))
    if c is None:
        return None
    before = len(rd.issues)
    name = rd.str_(c.get("name"), f"{path}.name")
    dim = rd.int_(c.get("dim"), f"{path}.dim")
    gens = []
    for i, g in enumerate(rd.list_(c.get("generators"), f"{path}.generators")):
        p = f"{path}.generators[{i}]"
        g = rd.obj(g, p, ("name", "degree"))
        if g is None:
            continue
        gname = rd.str_(g.get("name"), f"{p}.name")
        deg = rd.int_(g.get("degree"), f"{p}.degree")
        if deg is not None and (deg <= 0 or deg % 2):
            rd.err(f"{p}.degree", "generator degree must be positive and even")
        gens.append((gname, deg))

    ring = None
    if len(rd.issues) == before and dim is not None:
        if dim < 0 or dim % 2:
            rd.err(f"{path}.dim", "component dimension must be even and nonnegative")
        elif len({n for n, _ in gens}) != len(gens):
            rd.err(f"{path}.generators", "generator names must be unique")
        else:
            ring = GradedRing.of(gens, dim)

    fundamental = {}
    for i, f in enumerate(rd.list_(c.get("fundamental"), f"{path}.fundamental")):
        p = f"{path}.fundamental[{i}]"
        f = rd.obj(f, p, ("exponents", "value"))
        if f is None:
            continue
        exps = [rd.int_(e, f"{p}.exponents[{j}]") for j, e in enumerate(rd.list_(f.get("exponents"), f"{p}.exponents"))]
        value = rd.rational(f.get("value"), f"{p}.value")
        if None in exps or value is None:
            continue
        if any(e < 0 for e in exps):
            rd.err(f"{p}.exponents", "exponents must be nonnegative")
        elif tuple(exps) in fundamental:
            rd.err(f"{p}.exponents", "exponent vector repeated")
        else:
            fundamental[tuple(exps)] = value

    roots = [
        _read_linear(rd, r, f"{path}.tangent_roots[{i}]", ring)
        for i, r in enumerate(rd.list_(c.get("tangent_roots"), f"{path}.tangent_roots"))
    ]
    normal = []
    for j, s in enumerate(rd.list_(c.get("normal"), f"{path}.normal")):
        p = f"{path}.normal[{j}]"
        s = rd.obj(s, p, ("weight", "c1"))
        if s is None:
            continue
        weight = rd.int_(s.get("weight"), f"{p}.weight")
        c1 = _read_linear(rd, s.get("c1"), f"{p}.c1", ring)
        normal.append(NormalSummand(weight, c1))
    if len(rd.issues) != before:
        return None
    return FixedComponent(name, dim, gens, fundamental, roots, normal)


def _read_expected(rd: _Reader, e, path) -> Expected | None:
    keys = (
        "signature", "rigid", "prime", "theorem_1_4", "theorem_1_6", "twisted", "notes",
    )
    e = rd.obj(e, path, (), keys)
    if e is None:
        return None
    kw: dict[str, Any] = {}
    if "signature" in e:
        kw["signature"] = rd.rational(e["signature"], f"{path}.signature")
    for key in ("rigid", "theorem_1_4", "theorem_1_6"):
        if key in e:
            kw[key] = rd.bool_(e[key], f"{path}.{key}")
    if "prime" in e:
        p = rd.obj(e["prime"], f"{path}.prime", (), ("t", "witness"))
        if p is not None:
            if "t" in p:
                kw["prime_t"] = rd.rational(p["t"], f"{path}.prime.t")
            if "witness" in p:
                kw["prime_witness"] = tuple(
                    rd.int_(w, f"{path}.prime.witness[{i}]")
                    for i, w in enumerate(rd.list_(p["witness"], f"{path}.prime.witness"))
                )
    if "twisted" in e:
        p = rd.obj(e["twisted"], f"{path}.twisted", ("q_order",), ("rigid", "values", "indices"))
        if p is not None:
            kw["twisted_order"] = rd.int_(p.get("q_order"), f"{path}.twisted.q_order")
            if "rigid" in p:
                kw["twisted_rigid"] = rd.bool_(p["rigid"], f"{path}.twisted.rigid")
            for key, field_ in (("values", "twisted_values"), ("indices", "twisted_indices")):
                if key in p:
                    kw[field_] = tuple(
                        None if v is None else rd.rational(v, f"{path}.twisted.{key}[{i}]")
                        for i, v in enumerate(rd.list_(p[key], f"{path}.twisted.{key}"))
                    )
    if "notes" in e:
        notes = rd.obj(e["notes"], f"{path}.notes", (), tuple(e["notes"]) if isinstance(e["notes"], dict) else ())
        if notes is not None:
            kw["notes"] = {k: rd.str_(v, f"{path}.notes.{k}") for k, v in notes.items()}
    return Expected(**kw)


# -- serialization ---------------------------------------------------------------


def _linear_to_json(cls: CohClass) -> list[dict]:
    out = []
    for i, name in enumerate(cls.ring.names):
        exps = tuple(int(j == i) for j in range(cls.ring.ngens))
        c = cls.terms.get(exps)
        if c:
            out.append({"generator": name, "coefficient": format_rational(c)})
    return out


def component_to_json(F: FixedComponent) -> dict:
    return {
        "name": F.name,
        "dim": F.dim,
        "generators": [{"name": n, "degree": d} for n, d in F.generators],
        "fundamental": [
            {"exponents": list(e), "value": format_rational(v)}
            for e, v in sorted(F.fundamental.items())
        ],
        "tangent_roots": [_linear_to_json(x) for x in F.tangent_roots],
        "normal": [{"weight": s.weight, "c1": _linear_to_json(s.c1)} for s in F.normal],
    }


def _opt_rational(v):
    return None if v is None else format_rational(v)


def expected_to_json(e: Expected) -> dict:
    out: dict[str, Any] = {}
    if e.signature is not None:
        out["signature"] = format_rational(e.signature)
    if e.rigid is not None:
        out["rigid"] = e.rigid
    prime = {}
    if e.prime_t is not None:
        prime["t"] = format_rational(e.prime_t)
    if e.prime_witness is not None:
        prime["witness"] = list(e.prime_witness)
    if prime:
        out["prime"] = prime
    for key in ("theorem_1_4", "theorem_1_6"):
        if getattr(e, key) is not None:
            out[key] = getattr(e, key)
    if e.twisted_order is not None:
        tw: dict[str, Any] = {"q_order": e.twisted_order}
        if e.twisted_rigid is not None:
            tw["rigid"] = e.twisted_rigid
        if e.twisted_values is not None:
            tw["values"] = [_opt_rational(v) for v in e.twisted_values]
        if e.twisted_indices is not None:
            tw["indices"] = [_opt_rational(v) for v in e.twisted_indices]
        out["twisted"] = tw
    if e.notes:
        out["notes"] = dict(e.notes)
    return out


def manifold_to_json(data: ManifoldData) -> dict:
    out = {
        "name": data.name,
        "dim": data.dim,
        "spin": data.spin,
        "components": [component_to_json(F) for F in data.components],
    }
    if data.expected is not None:
        out["expected"] = expected_to_json(data.expected)
    return out


def serialize_manifold(data: ManifoldData) -> str:
    return json.dumps(manifold_to_json(data), indent=2) + "\n"


# -- report payloads -------------------------------------------------------------


def scalar_to_json(value) -> str | None:
    """Rationals as ``"p/q"``, rational functions as ``"(num)/(den)"`` in g."""
    if value is None:
        return None
    if isinstance(value, RatFuncG):
        return str(value)
    return format_rational(value)


def prime_to_json(result) -> dict:
    if isinstance(result, PrimeCertificate):
        return {
            "prime": True,
            "t": format_rational(result.t),
            "order": result.order,
            "verified": result.verified,
            "vacuous": result.vacuous,
        }
    assert isinstance(result, PrimeRefusal)
    return {"prime": False, "witness": list(result.witness)}
