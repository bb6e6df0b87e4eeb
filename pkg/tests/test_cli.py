import json

import pytest

from hktoolkit.cli import main, parse_tuples
from hktoolkit.errors import ParseError


def run(capsys, *argv, environ=None):
    code = main(list(argv), environ or {})
    return code, capsys.readouterr().out


def run_json(capsys, *argv, environ=None):
    code, out = run(capsys, *argv, "--json", environ=environ)
    return code, json.loads(out), out


def test_diagram(capsys):
    code, doc, _ = run_json(capsys, "diagram", "--vertices", "(2,0),(0,3)")
    assert code == 0
    assert doc["schema"] == "hktoolkit/1" and doc["command"] == "diagram"
    assert doc["result"]["HS"][:5] == [1, 3, 5, 6, 6]
    assert len(doc["result"]["A"]["2"]) == 6


def test_resolve_cusp(capsys):
    code, doc, _ = run_json(capsys, "resolve", "--ideal", "x^2 - y^3", "--mu", "2")
    assert code == 0
    assert doc["result"]["blowups"] == 1
    code, out = run(capsys, "resolve", "--ideal", "x^2 - y^3", "--mu", "2")
    assert "blow-ups: 1" in out


def test_divide(capsys):
    code, doc, _ = run_json(capsys, "divide", "--divisor", "x^2 - y^3", "--g", "x^2")
    assert code == 0
    assert doc["result"]["h"] == ["1"] and doc["result"]["r"] == "y^3"
    assert doc["result"]["contracts"]["passed"]


def test_stdbasis_hilbert_jacobian(capsys):
    code, doc, _ = run_json(capsys, "stdbasis", "--ideal", "x^2 - y^3, x*y", "--trunc", "8")
    assert code == 0 and sorted(doc["result"]["diagram"]["vertices"]) == [[0, 4], [1, 1], [2, 0]]
    code, doc, _ = run_json(capsys, "hilbert", "--ideal", "x^2 - y^3", "--oracle", "--s-max", "5")
    assert code == 0 and doc["result"]["H"] == [1, 3, 5, 7, 9, 11]
    code, doc, _ = run_json(capsys, "jacobian", "--f", "x^2 - y^2; x^2 + y^2", "--alphas", "(2,0),(0,2)",
                            "--s-range", "2:3")
    assert [r["det"] for r in doc["result"]["table"]] == ["2", "4"]


def test_stanley_module_file(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"rank": 1, "relations": [["x^2"]], "names": ["x", "y"]}), encoding="utf-8")
    code, doc, _ = run_json(capsys, "stanley", "--module", str(path))
    assert code == 0
    assert doc["result"]["hilbert"][:4] == [1, 3, 5, 7]


def test_verify_modes(capsys):
    code, doc, _ = run_json(capsys, "verify", "--ideal", "x^2 - y^3", "--mu", "2")
    assert code == 0 and doc["result"]["passed"]
    code, doc, _ = run_json(capsys, "verify", "--basis", "x^2 - y^3", "--alphas", "(2,0),(0,3)")
    assert code == 1 and doc["result"]["points"][0]["first_failure"] == 1


def test_errors_have_codes(capsys):
    code, doc, _ = run_json(capsys, "resolve", "--ideal", "x^2 - y^", "--mu", "2")
    assert code == 2
    assert doc["error"]["code"] == "PARSE_ERROR"
    assert doc["error"]["details"]["column"] == 9
    code, doc, _ = run_json(capsys, "diagram", "--vertices", "(1,1)", "--field", "fp:6")
    assert code == 2 and doc["error"]["code"] == "PARSE_ERROR"
    code, doc, _ = run_json(capsys, "resolve", "--ideal", "x^4 + y^5", "--mu", "4")
    assert code == 2 and doc["error"]["code"] == "GUARD_EXCEEDED"


def test_seed_override_and_determinism(capsys):
    _, doc, out1 = run_json(capsys, "stanley", "--ideal", "x*y", "--seed", "3", environ={"HK_SEED": "11"})
    assert doc["seed"] == 11
    _, _, out2 = run_json(capsys, "stanley", "--ideal", "x*y", "--seed", "3", environ={"HK_SEED": "11"})
    assert out1 == out2
    code, doc, _ = run_json(capsys, "diagram", "--vertices", "(1,0)", "--seed", str(2**64))
    assert code == 2


def test_parse_tuples():
    assert parse_tuples("(2,0),(0,3)") == [(2, 0), (0, 3)]
    assert parse_tuples("2,0") == [(2, 0)]
    assert parse_tuples("(2,)") == [(2,)]
    with pytest.raises(ParseError):
        parse_tuples("(1,a)")
