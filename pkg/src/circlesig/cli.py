"""Command line: ``circlesig {validate,signature,prime,twisted,verify,catalog}``.

Exit status: 0 success, 1 a mathematical check failed, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog as cat
from .fixedpoint import ManifoldData, prime_check
from .io import (
    REPORT_SCHEMA_VERSION,
    ManifoldParseError,
    parse_manifold,
    prime_to_json,
    scalar_to_json,
    serialize_manifold,
)
from .localization import NotPrimeError, equivariant_signature, theorem_1_4_check
from .ratfunc import format_rational
from .twisted import DEFAULT_Q, theorem_1_6_check, twisted_signature_series

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str) -> ManifoldData:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_manifold(text)


def _emit(args, payload: dict, lines: list[str]):
    if args.format == "json":
        body = {"schema": "circlesig.report", "version": REPORT_SCHEMA_VERSION, "command": args.command}
        body.update(payload)
        print(json.dumps(body, indent=2))
    else:
        print("\n".join(lines))


def _fmt(value) -> str:
    s = scalar_to_json(value)
    return "null" if s is None else s


def cmd_validate(args) -> int:
    data = _load(args.file)
    _emit(args, {"name": data.name, "valid": True, "violations": []}, [f"{data.name}: valid"])
    return EXIT_OK


def cmd_signature(args) -> int:
    data = _load(args.file)
    try:
        rep = equivariant_signature(data, args.mode)
    except NotPrimeError as exc:
        raise UsageError(str(exc)) from None
    payload = {
        "name": data.name,
        "mode": rep.mode,
        "contributions": {k: scalar_to_json(v) for k, v in rep.contributions.items()},
        "total": scalar_to_json(rep.total),
        "rigid": rep.constant,
        "signature": scalar_to_json(rep.value),
    }
    lines = [f"manifold: {data.name}", f"mode: {rep.mode}"]
    lines += [f"  {k}: {_fmt(v)}" for k, v in rep.contributions.items()]
    lines += [f"total: {_fmt(rep.total)}", f"rigid: {str(rep.constant).lower()}"]
    if rep.value is not None:
        lines.append(f"signature: {_fmt(rep.value)}")
    else:
        lines.append("not rigid: data is not realizable or is inconsistent")
    _emit(args, payload, lines)
    return EXIT_OK if rep.constant else EXIT_CHECK


def cmd_prime(args) -> int:
    data = _load(args.file)
    res = prime_check(data)
    if res:
        text = f"prime: t = {format_rational(res.t)} (xi of order {res.order})"
        if res.vacuous:
            text += " [vacuous: no weights]"
    else:
        text = f"not prime: witness weights {tuple(res.witness)}"
    _emit(args, {"name": data.name, **prime_to_json(res)}, [f"manifold: {data.name}", text])
    return EXIT_OK


def cmd_twisted(args) -> int:
    data = _load(args.file)
    try:
        rep = twisted_signature_series(data, args.q_order, args.mode)
    except NotPrimeError as exc:
        raise UsageError(str(exc)) from None
    payload = {
        "name": data.name,
        "mode": rep.mode,
        "q_order": rep.order,
        "coefficients": [scalar_to_json(c) for c in rep.coefficients],
        "constant": rep.constant,
        "values": [scalar_to_json(v) for v in rep.values],
        "indices": [scalar_to_json(v) for v in rep.indices],
        "contributions": {k: [scalar_to_json(v) for v in vs] for k, vs in rep.contributions.items()},
    }
    lines = [f"manifold: {data.name}", f"mode: {rep.mode}", f"q-order: {rep.order}"]
    for i, c in enumerate(rep.coefficients):
        tag = "constant" if rep.constant[i] else "non-constant"
        extra = f"  [sign(M, R_{i}) = {_fmt(rep.indices[i])}]" if rep.mode == "symbolic" else ""
        lines.append(f"q^{i}: {_fmt(c)}  ({tag}){extra}")
    lines.append(f"rigid: {str(rep.rigid).lower()}")
    _emit(args, payload, lines)
    if data.spin and not rep.rigid:
        return EXIT_CHECK
    return EXIT_OK


def cmd_verify(args) -> int:
    data = _load(args.file)
    t14 = theorem_1_4_check(data)
    t16 = theorem_1_6_check(data, args.q_order)
    checks = cat.check_entry(data, args.q_order)
    ok = all(c.ok for c in checks) and t14.passed and t16.passed

    def theorem(v):
        state = "applicable" if v.applicable else "not applicable"
        if v.applicable:
            state += ", satisfied" if v.holds else ", VIOLATED"
        reasons = "; ".join(v.failed_hypotheses)
        return state + (f" ({reasons})" if reasons else "")

    payload = {
        "name": data.name,
        "ok": ok,
        "theorem_1_4": {
            "applicable": t14.applicable,
            "holds": t14.holds,
            "failed_hypotheses": t14.failed_hypotheses,
            "signature": scalar_to_json(t14.signature),
            "xi_total": scalar_to_json(t14.xi_total),
        },
        "theorem_1_6": {
            "applicable": t16.applicable,
            "holds": t16.holds,
            "failed_hypotheses": t16.failed_hypotheses,
            "q_order": t16.order,
            "coefficients": [scalar_to_json(c) for c in t16.symbolic.coefficients],
        },
        "checks": [{"check": c.check, "ok": c.ok, "detail": c.detail} for c in checks],
    }
    lines = [
        f"manifold: {data.name}",
        f"signature: {_fmt(t14.signature) if t14.signature is not None else 'not rigid'}",
        f"signature vanishing: {theorem(t14)}",
        f"twisted vanishing (q-order {t16.order}): {theorem(t16)}",
    ]
    lines += [f"  [{'PASS' if c.ok else 'FAIL'}] {c.check}" + (f" -- {c.detail}" if not c.ok else "") for c in checks]
    lines.append("all checks passed" if ok else "CHECKS FAILED")
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_catalog(args) -> int:
    action = args.action or "list"
    if action == "list":
        entries = cat.catalog_entries()
        _emit(
            args,
            {"entries": [{"name": d.name, "dim": d.dim, "spin": d.spin} for d in entries]},
            [f"{d.name}  (dim {d.dim}{', spin' if d.spin else ''})" for d in entries],
        )
        return EXIT_OK
    if action == "export":
        if not args.name:
            raise UsageError("catalog export needs a target directory")
        os.makedirs(args.name, exist_ok=True)
        paths = []
        for d in cat.catalog_entries():
            path = os.path.join(args.name, f"{d.name}.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(serialize_manifold(d))
            paths.append(path)
        _emit(args, {"files": paths}, paths)
        return EXIT_OK
    try:
        report = cat.run_catalog(args.name)
    except cat.UnknownEntryError as exc:
        raise UsageError(exc.args[0]) from None
    payload = {
        "ok": report.ok,
        "entries": report.entries(),
        "results": [
            {"entry": r.entry, "check": r.check, "ok": r.ok, "detail": r.detail} for r in report.results
        ],
    }
    lines = [
        f"[{'PASS' if r.ok else 'FAIL'}] {r.entry}: {r.check}" + (f" -- {r.detail}" if not r.ok else "")
        for r in report.results
    ]
    lines.append(f"{len(report.results) - len(report.mismatches)}/{len(report.results)} checks passed")
    _emit(args, payload, lines)
    return EXIT_OK if report.ok else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circlesig", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, with_file=True):
        p = sub.add_parser(name)
        if with_file:
            p.add_argument("file")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate)
    p = add("signature", cmd_signature)
    p.add_argument("--mode", choices=("symbolic", "zero", "xi"), default="symbolic")
    add("prime", cmd_prime)
    p = add("twisted", cmd_twisted)
    p.add_argument("--q-order", type=int, default=DEFAULT_Q)
    p.add_argument("--mode", choices=("symbolic", "xi"), default="symbolic")
    p = add("verify", cmd_verify)
    p.add_argument("--q-order", type=int, default=DEFAULT_Q)
    p = add("catalog", cmd_catalog, with_file=False)
    p.add_argument("action", nargs="?", choices=("list", "run", "export"))
    p.add_argument("name", nargs="?", help="entry name for run, directory for export")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "q_order", 0) < 0:
        print("error: --q-order must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except ManifoldParseError as exc:
        for issue in exc.issues:
            print(f"error: {issue}", file=sys.stderr)
        return EXIT_INPUT
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
