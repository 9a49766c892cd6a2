import json

from click.testing import CliRunner

from rlk.cli import field_of, main

runner = CliRunner()


def test_field_of():
    assert field_of(25).q == 25 and field_of(25).p == 5


def test_iso_yes_and_no():
    r = runner.invoke(main, ["iso", "L5_1^5", "L5_1^6"])
    assert r.exit_code == 0
    r = runner.invoke(main, ["iso", "L5_2^3", "L5_2^4", "--json"])
    assert r.exit_code == 1 and json.loads(r.output)["verdict"] == "no"


def test_inconclusive_exit(monkeypatch):
    monkeypatch.setenv("RLK_BUDGET", "1")
    r = runner.invoke(main, ["iso", "L5_9^9(xi=1,a=1)", "L5_9^9(xi=1,a=2)"])
    assert r.exit_code == 3


def test_usage_errors():
    assert runner.invoke(main, ["iso", "nonsense", "L5_2^1"]).exit_code == 2
    assert runner.invoke(main, ["conic", "1", "1", "--field", "6"]).exit_code == 2
    assert runner.invoke(main, ["verify", "L7_7"]).exit_code == 2


def test_conic_and_cohomology():
    r = runner.invoke(main, ["conic", "2", "1", "--field", "5"])
    assert r.exit_code == 0 and "6 solutions" in r.output
    r = runner.invoke(main, ["cohomology", "L4_2", "--pmap", "x1->x4", "--json"])
    assert json.loads(r.output)["dims"] == [7, 2, 5]


def test_extend():
    r = runner.invoke(main, ["extend", "L4_2", "--delta", "13=1", "--f", "2=1"])
    assert r.exit_code == 0 and "[x1, x3] = 1*x5" in r.output


def test_orbits_exit_codes():
    assert runner.invoke(main, ["orbits", "L7-2"]).exit_code == 0
    assert runner.invoke(main, ["orbits", "K9-11"]).exit_code == 1


def test_report_subset(tmp_path):
    r = runner.invoke(main, ["report", "--out", str(tmp_path), "--criteria", "1,4,7", "--no-families",
                             "--workers", "1"])
    assert r.exit_code == 0, r.output
    for f in ("report.md", "report.json", "timings.json", "criteria.csv", "figures/runtimes.png"):
        assert (tmp_path / f).exists()
