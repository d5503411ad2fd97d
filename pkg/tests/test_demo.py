import json
from fractions import Fraction

import pytest

from submeasures.cli import main
from submeasures.demo import FAIL, FLAGGED, PASS, demo_ok, run_demo
from submeasures.instances import phi0_table


@pytest.fixture(scope="module")
def claims():
    return run_demo()


def test_fresh_run_passes_with_one_flag(claims):
    statuses = [c.status for c in claims]
    assert statuses.count(FAIL) == 0, [c for c in claims if c.status == FAIL]
    assert statuses.count(FLAGGED) == 1
    flagged = next(c for c in claims if c.status == FLAGGED)
    assert flagged.name == "phi0: pathology degree"
    assert (flagged.claimed, flagged.computed) == ("3/2", "4/3")
    assert demo_ok(claims)


def test_claims_are_serializable(claims):
    for c in claims:
        assert set(c.to_json()) == {"name", "claimed", "computed", "status", "detail"}
        assert c.status in (PASS, FAIL, FLAGGED)
    assert len({c.name for c in claims}) == len(claims)


def test_perturbed_table_fails_at_the_changed_value():
    phi0 = phi0_table().with_value({0, 2}, Fraction(3, 2))
    claims = run_demo(phi0)
    failed = {c.name for c in claims if c.status == FAIL}
    assert "phi0{0,2}" in failed
    assert not demo_ok(claims)


def test_broken_table_is_reported_invalid():
    phi0 = phi0_table().with_value({0, 1, 2}, 3)
    claims = run_demo(phi0)
    valid = next(c for c in claims if c.name == "phi0: table is a submeasure")
    assert valid.status == FAIL and "subadditivity" in valid.detail


def test_cli_demo_exit_codes(tmp_path, capsys):
    assert main(["demo"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[-1].endswith("0 FAIL, 1 FLAGGED")
    doc = {"kind": "table", "universe": 3, "default": "1",
           "entries": [{"set": [], "value": "0"}, {"set": [0, 1, 2], "value": "5/2"}]}
    path = tmp_path / "phi0.json"
    path.write_text(json.dumps(doc))
    assert main(["demo", "--table", str(path), "--json"]) == 1
    rep = json.loads(capsys.readouterr().out)
    assert rep["results"]["ok"] is False and rep["results"]["counts"]["FAIL"] >= 1
    wrong_kind = tmp_path / "sup.json"
    wrong_kind.write_text(json.dumps({"kind": "sup_measures", "measures": []}))
    assert main(["demo", "--table", str(wrong_kind)]) == 2
