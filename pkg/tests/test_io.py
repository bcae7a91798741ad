import json
from fractions import Fraction

import pytest

from circlesig.catalog import catalog_entries, catalog_entry
from circlesig.cli import main
from circlesig.io import ManifoldParseError, manifold_to_json, parse_manifold, serialize_manifold


def _doc(name="cp2_linear"):
    return manifold_to_json(catalog_entry(name))


def _write(tmp_path, doc, name="m.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc), encoding="utf-8")
    return str(p)


def test_round_trip_on_catalog():
    for d in catalog_entries():
        text = serialize_manifold(d)
        back = parse_manifold(text)
        assert back == d
        assert back.expected == d.expected
        assert serialize_manifold(back) == text


def test_zero_weight_is_a_violation():
    doc = _doc()
    doc["components"][0]["normal"][0]["weight"] = 0
    with pytest.raises(ManifoldParseError) as exc:
        parse_manifold(json.dumps(doc))
    assert any("weight must be nonzero" in str(i) for i in exc.value.issues)


def test_zero_denominator_is_rejected_with_position():
    doc = _doc("cp2_with_fixed_cp1")
    doc["components"][0]["fundamental"][0]["value"] = "1/0"
    with pytest.raises(ManifoldParseError) as exc:
        parse_manifold(json.dumps(doc))
    assert exc.value.issues[0].position == "$.components[0].fundamental[0].value"


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(dim="4"),
        lambda d: d.update(spin=1),
        lambda d: d.update(extra=True),
        lambda d: d["components"][0].update(dim=1.0),
        lambda d: d["components"][0]["normal"][0].update(weight=True),
        lambda d: d.pop("components"),
    ],
)
def test_strict_types(mutate):
    doc = _doc()
    mutate(doc)
    with pytest.raises(ManifoldParseError):
        parse_manifold(json.dumps(doc))


def test_float_rational_rejected():
    doc = _doc("cp2_with_fixed_cp1")
    doc["components"][0]["tangent_roots"][0][0]["coefficient"] = 2.0
    with pytest.raises(ManifoldParseError):
        parse_manifold(json.dumps(doc))


def test_syntax_error_reports_line():
    with pytest.raises(ManifoldParseError) as exc:
        parse_manifold('{"name": ')
    assert exc.value.issues[0].position.startswith("line 1")


def test_codimension_mismatch_reported():
    doc = _doc()
    doc["components"][0]["normal"].pop()
    with pytest.raises(ManifoldParseError) as exc:
        parse_manifold(json.dumps(doc))
    assert any("codimension mismatch" in str(i) for i in exc.value.issues)


# -- CLI -----------------------------------------------------------------------------


def test_cli_signature_text(tmp_path, capsys):
    path = _write(tmp_path, _doc())
    assert main(["signature", path]) == 0
    out = capsys.readouterr().out
    assert "total: 1" in out and "rigid: true" in out and "signature: 1" in out


def test_cli_signature_json_matches_text(tmp_path, capsys):
    path = _write(tmp_path, _doc("cp2_with_fixed_cp1"))
    assert main(["signature", path, "--format", "json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["schema"] == "circlesig.report" and body["command"] == "signature"
    assert body["contributions"]["cp1"] == "(-4*g)/(1 - 2*g + g^2)"
    assert body["total"] == "1" and body["rigid"] is True
    main(["signature", path])
    text = capsys.readouterr().out
    for name, value in body["contributions"].items():
        assert f"  {name}: {value}" in text


def test_cli_signature_modes(tmp_path, capsys):
    path = _write(tmp_path, _doc("s2xs2_diagonal"))
    assert main(["signature", path, "--mode", "xi", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["total"] == "0"
    assert main(["signature", path, "--mode", "zero"]) == 0
    path = _write(tmp_path, _doc("cp2_linear"), "c.json")
    assert main(["signature", path, "--mode", "xi"]) == 2


def test_cli_non_rigid_exits_1(tmp_path, capsys):
    doc = {
        "name": "lone",
        "dim": 2,
        "spin": False,
        "components": [
            {"name": "p", "dim": 0, "generators": [], "fundamental": [{"exponents": [], "value": "1"}],
             "tangent_roots": [], "normal": [{"weight": 1, "c1": []}]}
        ],
    }
    assert main(["signature", _write(tmp_path, doc)]) == 1
    assert "not rigid" in capsys.readouterr().out


def test_cli_prime(tmp_path, capsys):
    assert main(["prime", _write(tmp_path, _doc())]) == 0
    assert "witness weights (1, 2)" in capsys.readouterr().out
    assert main(["prime", _write(tmp_path, _doc("s2xs2_diagonal"), "s.json"), "--format", "json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["prime"] is True and body["t"] == "1/2"


def test_cli_validate_and_bad_input(tmp_path, capsys):
    assert main(["validate", _write(tmp_path, _doc())]) == 0
    doc = _doc()
    doc["components"][0]["normal"][0]["weight"] = 0
    assert main(["validate", _write(tmp_path, doc, "bad.json")]) == 2
    assert "weight must be nonzero" in capsys.readouterr().err
    assert main(["validate", str(tmp_path / "missing.json")]) == 2
    assert main(["bogus"]) == 2


def test_cli_twisted(tmp_path, capsys):
    path = _write(tmp_path, _doc("s2xs2_diagonal"))
    assert main(["twisted", path, "--q-order", "2", "--format", "json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["coefficients"] == ["0", "0", "0"]
    assert main(["twisted", _write(tmp_path, _doc("cp2_linear"), "c.json"), "--q-order", "1"]) == 0
    out = capsys.readouterr().out
    assert "(non-constant)" in out and "sign(M, R_1) = 32" in out
    assert main(["twisted", path, "--q-order", "-1"]) == 2


def test_cli_verify(tmp_path, capsys):
    assert main(["verify", _write(tmp_path, _doc("s2xs2_diagonal"))]) == 0
    out = capsys.readouterr().out
    assert "signature vanishing: applicable, satisfied" in out and "all checks passed" in out
    doc = _doc()
    doc["expected"]["signature"] = "3"
    assert main(["verify", _write(tmp_path, doc, "w.json")]) == 1


def test_cli_catalog(tmp_path, capsys):
    assert main(["catalog", "run", "nonexistent"]) == 2
    assert main(["catalog", "list", "--format", "json"]) == 0
    names = [e["name"] for e in json.loads(capsys.readouterr().out)["entries"]]
    assert "cp2_linear" in names
    assert main(["catalog", "run", "cp1_rotation"]) == 0
    out_dir = tmp_path / "export"
    assert main(["catalog", "export", str(out_dir)]) == 0
    capsys.readouterr()
    for name in names:
        text = (out_dir / f"{name}.json").read_text(encoding="utf-8")
        assert parse_manifold(text) == catalog_entry(name)


def test_cli_exports_validate_through_cli(tmp_path, capsys):
    main(["catalog", "export", str(tmp_path)])
    capsys.readouterr()
    for p in sorted(tmp_path.glob("*.json")):
        assert main(["verify", str(p)]) == 0, p.name
        capsys.readouterr()


def test_report_values_are_exact_strings(tmp_path, capsys):
    path = _write(tmp_path, _doc("hp2_torus"))
    main(["twisted", path, "--format", "json"])
    body = json.loads(capsys.readouterr().out)
    assert body["values"] == ["1", "0", "0", "0"]
    assert [Fraction(v) for v in body["indices"]] == [1, 0, 0, 0]
