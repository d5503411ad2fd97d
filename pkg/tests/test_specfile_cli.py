import json
from fractions import Fraction

import pytest

from submeasures.cli import main, parse_set
from submeasures.core import CoverNumber, Filtration, SupMeasures, TableSubmeasure, VectorSeq
from submeasures.extended import INF
from submeasures.specfile import SpecError, build_spec, digest, validate_spec

PHI0 = {
    "kind": "table",
    "name": "phi0",
    "universe": 3,
    "entries": [
        {"set": [], "value": "0"},
        {"set": [0, 1, 2], "value": "2"},
    ],
    "default": "1",
}


def write(tmp_path, doc, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ---------------------------------------------------------------------------
# spec files


def test_schema_accepts_every_kind():
    docs = [
        PHI0,
        {"kind": "sup_measures", "measures": [[[0, "1"], [1, "1/2"]], [[2, "3"]]]},
        {"kind": "vector_seq", "vectors": [[[0, "1"]], [[0, "-1/2"], [3, "1"]]]},
        {"kind": "filtration", "levels": [[[0], [1]], [[0, 1, 2]]]},
        {"kind": "cover", "base": [[0, 1], [2]], "cap": 10},
        {"kind": "named", "ideal": "ED", "scheme": "arith-v1"},
        {"kind": "named", "instance": "basis"},
    ]
    for doc in docs:
        assert validate_spec(doc) == [], doc


@pytest.mark.parametrize("doc", [
    {},
    {"kind": "nope"},
    {"kind": "table", "universe": 3},
    {"kind": "table", "universe": 3, "entries": [{"set": [0], "value": "0.5"}]},
    {"kind": "table", "universe": 3, "entries": [{"set": [0, 0], "value": "1"}]},
    {"kind": "sup_measures", "measures": [[[0, "1", "extra"]]]},
    {"kind": "cover", "base": [[0]], "cap": 0},
    {"kind": "named", "ideal": "NotAnIdeal"},
])
def test_schema_rejects(doc):
    assert validate_spec(doc)
    with pytest.raises(SpecError):
        build_spec(doc)


def test_build_kinds():
    t = build_spec(PHI0)
    assert isinstance(t, TableSubmeasure) and t({0, 1, 2}) == 2 and t({1}) == 1
    s = build_spec({"kind": "sup_measures", "measures": [[[0, "1"], [1, "1/2"]], [[2, "3"]]]})
    assert isinstance(s, SupMeasures) and s({0, 1}) == Fraction(3, 2) and s({0, 2}) == 3
    v = build_spec({"kind": "vector_seq", "vectors": [[[0, "1"]], [[0, "-1/2"], [3, "1"]]]})
    assert isinstance(v, VectorSeq) and v({0, 1}) == 1
    f = build_spec({"kind": "filtration", "levels": [[[0], [1]], [[0, 1, 2]]]})
    assert isinstance(f, Filtration) and f({0}) == 1 and f({0, 1}) == 2 and f({3}) is INF
    c = build_spec({"kind": "cover", "base": [[0, 1], [2]]})
    assert isinstance(c, CoverNumber) and c({0, 1, 2}) == 2
    ed = build_spec({"kind": "named", "ideal": "ED"})
    assert ed({0, 1, 4}) >= 1


def test_table_errors():
    with pytest.raises(SpecError):
        build_spec({"kind": "table", "universe": 2, "entries": [{"set": [], "value": "0"}]})
    with pytest.raises(SpecError):
        build_spec({"kind": "table", "universe": 2, "entries": [{"set": [5], "value": "1"}], "default": "1"})


def test_digest_is_canonical():
    shuffled = json.loads(json.dumps(PHI0))
    shuffled = {k: shuffled[k] for k in reversed(list(shuffled))}
    assert digest(shuffled) == digest(PHI0)
    assert digest({**PHI0, "default": "2"}) != digest(PHI0)


def test_parse_set():
    assert parse_set("0, 2,5") == frozenset({0, 2, 5})
    assert parse_set("") == frozenset()


# ---------------------------------------------------------------------------
# CLI


def test_eval_plain_and_json(tmp_path, capsys):
    path = write(tmp_path, PHI0)
    code, out, _ = run(capsys, "eval", "--spec", path, "--set", "0,1,2")
    assert code == 0 and out.strip() == "2"
    code, out, _ = run(capsys, "eval", "--spec", path, "--set", "0,1", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["exit_code"] == 0
    assert rep["results"] == {"set": [0, 1], "value": "1/1"}
    assert rep["input_digest"] == digest(PHI0)
    assert rep["command"][:2] == ["submeasures", "eval"]


def test_eval_approx_is_opt_in(tmp_path, capsys):
    path = write(tmp_path, {"kind": "sup_measures", "measures": [[[0, "1/3"]]]})
    _, out, _ = run(capsys, "eval", "--spec", path, "--set", "0")
    assert out.strip() == "1/3"
    _, out, _ = run(capsys, "eval", "--spec", path, "--set", "0", "--json", "--approx")
    value = json.loads(out)["results"]["value"]
    assert value == {"exact": "1/3", "approx": "0.333333333333"}


def test_usage_and_schema_errors_exit_2(tmp_path, capsys):
    code, _, err = run(capsys, "eval", "--spec", write(tmp_path, {"kind": "table"}), "--set", "0")
    assert code == 2 and "SpecError" in err
    code, _, _ = run(capsys, "eval", "--spec", write(tmp_path, PHI0), "--set", "a,b")
    assert code == 2
    code, _, _ = run(capsys, "eval", "--spec", write(tmp_path, PHI0), "--set", "7")
    assert code == 2
    code, _, _ = run(capsys, "eval", "--spec", str(tmp_path / "missing.json"))
    assert code == 2
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, _ = run(capsys, "eval", "--spec", str(bad), "--json")
    assert code == 2 and json.loads(out)["error"]["type"] == "SpecError"


def test_pathology_phi0(tmp_path, capsys):
    code, out, _ = run(capsys, "pathology", "--spec", write(tmp_path, PHI0), "--json")
    rep = json.loads(out)["results"]
    assert code == 0
    assert rep["degree"] == "4/3"
    assert rep["criterion"][0]["set"] == [0, 1, 2]
    assert rep["criterion"][0]["verdict"] == "FIRED"


def test_pathology_sup_measures_has_degree_one(tmp_path, capsys):
    doc = {"kind": "sup_measures", "measures": [[[0, "1"], [1, "1"]], [[1, "2"], [2, "1/2"]]]}
    code, out, _ = run(capsys, "pathology", "--spec", write(tmp_path, doc), "--universe", "3")
    assert code == 0 and out.splitlines()[0] == "degree: 1/1"
    code, _, err = run(capsys, "pathology", "--spec", write(tmp_path, doc))
    assert code == 2 and "--universe" in err


def test_select_bp_basis(capsys):
    code, out, _ = run(capsys, "select", "--selector", "bp", "--instance", "basis", "--length", "6", "--json")
    rep = json.loads(out)["results"]
    assert code == 0
    assert rep["certificate"]["bound"] == "3/2" and rep["certificate"]["verified"]


def test_select_tall_on_diagonal_fails(capsys):
    code, _, err = run(capsys, "select", "--selector", "tall", "--instance", "block-multiples",
                       "--stream", "diagonal", "--length", "6", "--budget", "300")
    assert code == 1 and "SelectorFailure" in err


def test_select_c0like_level_example(capsys):
    code, out, _ = run(capsys, "select", "--selector", "c0like", "--instance", "level-example",
                       "--length", "20", "--json")
    cert = json.loads(out)["results"]["certificate"]
    assert code == 0 and cert["verified"] and cert["bound"] == "2/1" and len(cert["indices"]) == 20


def test_select_budget_exit_3(capsys):
    code, out, _ = run(capsys, "select", "--selector", "small-norm", "--instance", "basis",
                       "--length", "5", "--budget", "3", "--json")
    assert code == 3 and json.loads(out)["error"]["type"] == "BudgetExhausted"


def test_select_needs_vectors(tmp_path, capsys):
    code, _, _ = run(capsys, "select", "--selector", "bp", "--spec", write(tmp_path, PHI0))
    assert code == 2


def test_output_is_deterministic(tmp_path, capsys):
    path = write(tmp_path, PHI0)
    outs = [run(capsys, "pathology", "--spec", path, "--json")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    outs = [run(capsys, "select", "--selector", "schreier", "--instance", "basis", "--json")[1] for _ in range(2)]
    assert outs[0] == outs[1]
