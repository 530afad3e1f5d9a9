import json

import pytest

from ejst.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "--a", "3", "--scheme", "ist")
    assert code == EXIT_OK and "ist:tree+b2b6" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--a", "2", "--scheme", "ednist", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["passed"] is True


def test_verify_literal_construction_fails(capsys):
    code, out, _ = run(capsys, "verify", "--a", "3", "--scheme", "ist", "--construction", "literal")
    assert code == EXIT_FAIL and "FAIL" in out


def test_verify_product(capsys):
    code, out, _ = run(capsys, "verify", "--a", "1", "--dims", "2", "--scheme", "ednist")
    assert code == EXIT_OK and "degree 12" in out


def test_route_example(capsys):
    code, out, _ = run(capsys, "route", "--a", "4", "--scheme", "ednist", "--tree", "1", "--src", "0,0", "--dst", "-2,0,1")
    assert code == EXIT_OK
    assert out.strip().splitlines()[-1] == "delivered in 6 hops via tree 1"


def test_route_json_with_faults(capsys):
    code, out, _ = run(
        capsys, "route", "--a", "3", "--src", "0,0", "--dst", "2,1", "--faults", "1,0;0,1", "--format", "json"
    )
    doc = json.loads(out)
    assert code == EXIT_OK and doc["delivered"]
    assert "1,0" not in doc["trace"][1:-1]


def test_route_unreachable(capsys):
    nbrs = "3,0;2,1;1,1;1,0;2,-1;3,-1"
    code, out, _ = run(capsys, "route", "--a", "2", "--src", "0,0", "--dst", "2,0", "--faults", nbrs)
    assert code == EXIT_FAIL and "unreachable" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["route", "--a", "3", "--src", "1,1", "--dst", "1,1"],
        ["route", "--a", "3", "--src", "0,0"],
        ["route", "--a", "3", "--src", "0,0", "--dst", "1,0", "--tree", "7"],
        ["route", "--a", "3", "--src", "0,0", "--dst", "x"],
        ["verify", "--a", "0"],
        ["verify", "--a", "2", "--b", "4"],
        ["verify", "--a", "2", "--dims", "0"],
        ["simulate", "--a", "2", "--f", "6"],
        ["simulate", "--a", "2", "--f", "1..x"],
        ["simulate", "--a", "2", "--exhaustive", "--samples", "5"],
        ["simulate", "--a", "2", "--scheme", "ist", "--links", "1"],
        ["bogus"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_simulate_csv(capsys):
    code, out, _ = run(capsys, "simulate", "--a", "2", "--f", "0..2", "--exhaustive")
    lines = out.splitlines()
    assert code == EXIT_OK and len(lines) == 4
    assert lines[2].split(",")[4] == "3.333"


def test_simulate_empty_range(capsys):
    code, out, _ = run(capsys, "simulate", "--a", "2", "--f", "")
    assert code == EXIT_OK and len(out.splitlines()) == 1


def test_simulate_budget(capsys, monkeypatch):
    monkeypatch.setenv("EJST_BUDGET", "5")
    assert run(capsys, "simulate", "--a", "2", "--f", "2", "--exhaustive")[0] == EXIT_BUDGET


def test_simulate_ednist_note(capsys):
    code, _, err = run(capsys, "simulate", "--a", "1", "--scheme", "ednist", "--f", "0..3", "--links", "1")
    assert code == EXIT_OK and "extension" in err and "guarantee" in err


def test_simulate_sampled_deterministic(capsys):
    argv = ["simulate", "--a", "3", "--f", "3", "--samples", "200", "--seed", "11"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_export_counts(capsys, tmp_path):
    code, out, _ = run(capsys, "export", "--a", "3", "--format", "dot")
    assert code == EXIT_OK and out.count(" -- ") == 111
    code, _, _ = run(capsys, "export", "--a", "4", "--scheme", "ist", "--out", str(tmp_path))
    files = sorted(tmp_path.glob("*.dot"))
    assert len(files) == 6
    assert all(f.read_text().count(" -> ") == 60 for f in files)


def test_export_product_json(capsys):
    code, out, _ = run(capsys, "export", "--a", "2", "--dims", "2", "--format", "json")
    assert code == EXIT_OK and len(json.loads(out)["nodes"]) == 361


def test_export_single_file(capsys, tmp_path):
    target = tmp_path / "t.json"
    code, _, _ = run(capsys, "export", "--a", "2", "--scheme", "ednist", "--tree", "2", "--format", "json", "--out", str(target))
    assert code == EXIT_OK and json.loads(target.read_text())["t"] == 2
