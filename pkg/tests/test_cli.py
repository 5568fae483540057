import csv
import io
import json
import subprocess
import sys

import pytest

from fatlines import __version__
from fatlines.cli import SCAN_COLUMNS, main, render_json


def run(*argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_dim_special():
    code, out = run("dim", "--degree", "12", "--mults", "3,3,3,3,3,3,2")
    assert code == 3
    assert "virtual dimension  -2" in out
    assert "expected dimension 0" in out
    assert "actual (consensus) 1" in out
    assert "SPECIAL" in out


def test_dim_nonspecial_json():
    code, out = run("--format", "json", "dim", "--degree", "4", "--mults", "1,1,1,1,1,1")
    assert code == 0
    doc = json.loads(out)
    assert list(doc)[:5] == ["schema_version", "tool_version", "command", "prime", "seeds"]
    assert doc["tool_version"] == __version__
    r = doc["result"]
    assert (r["virtual"], r["expected"], r["consensus_actual"], r["special"]) == (5, 5, 5, False)
    assert r["actual_per_seed"] == [5, 5, 5]


def test_json_round_trip():
    _, out = run("dim", "-d", "8", "-m", "3^4", "--format", "json")
    assert render_json(json.loads(out)) + "\n" == out


@pytest.mark.parametrize(
    "argv",
    [
        ["dim", "--degree", "2", "--mults", "3"],
        ["dim", "--degree", "5", "--mults", "3,x"],
        ["dim", "--degree", "5"],
        ["verify", "no-such-check"],
        ["cremona", "--map", "cubo", "--class", "6;1,1"],
        ["triple", "--model", "cubo", "1", "1", "1;1"],
        ["triple", "--model", "nope", "1", "1", "1"],
        ["--prime", "32001", "dim", "-d", "3", "-m", "1"],
        ["--seeds", "1,a", "dim", "-d", "3", "-m", "1"],
        ["scan", "--max-degree", "4"],
        ["cache-audit"],
    ],
)
def test_usage_errors(argv):
    code, _ = run(*argv)
    assert code == 2


def test_budget_is_usage_error():
    code, _ = run("dim", "-d", "30", "-m", "1", "--budget-cols", "100")
    assert code == 2


def test_scan_csv_flags_l8():
    code, out = run("scan", "--max-degree", "8", "--lines", "4", "--mult", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == SCAN_COLUMNS
    assert [r["degree"] for r in rows] == [str(d) for d in range(3, 9)]
    special = [r for r in rows if r["special"] == "True"]
    assert [(r["degree"], r["mults"], r["virtual"], r["actual_min"]) for r in special] == [("8", "3^4", "-19", "1")]


def test_scan_rediscovers_twelve():
    code, out = run("scan", "--max-degree", "12", "--mults", "3^6,2", "--seeds", "1", "--format", "json")
    doc = json.loads(out)
    assert doc["result"]["summary"]["special"] == ["L_12(3^6,2)"]
    assert doc["result"]["summary"]["order"][0] == "L_12(3^6,2)"


def test_scan_simple_lines_never_special():
    _, out = run("scan", "--max-degree", "5", "-s", "3", "--mult", "1", "--format", "json")
    assert json.loads(out)["result"]["summary"]["special"] == []


def test_scan_budget_notes():
    _, out = run("scan", "--min-degree", "4", "--max-degree", "7", "--mults", "1", "--budget-cols", "60",
                 "--format", "json")
    res = json.loads(out)["result"]
    # 56 monomials in degree 5, 84 in degree 6
    assert [r["degree"] for r in res["reports"]] == [4, 5]
    assert len(res["notes"]) == 2


def test_cremona_cubo():
    code, out = run("cremona", "--map", "cubo", "--class", "6;1,1,1,1")
    assert code == 0
    assert out.splitlines()[0] == "10;3,3,3,3;2,2"
    assert "10H - 3E1 - 3E2 - 3E3 - 3E4 - 2T1 - 2T2" in out


def test_cremona_pipe_is_involution(monkeypatch):
    _, first = run("cremona", "--map", "cubo", "--class", "6;1,1,1,1")
    _, second = run("cremona", "--map", "cubo", "--class", "-", stdin=first, monkeypatch=monkeypatch)
    assert second.splitlines()[0] == "6;1,1,1,1;0,0"


def test_cremona_todd_witness():
    _, out = run("cremona", "--map", "todd", "--class", "71;19,19,19,19,19,19", "--format", "json")
    res = json.loads(out)["result"]
    assert res["image"] == "-19;-6,-6,-6,-6,-6,-6"


def test_cremona_drop_auxiliary_warns():
    _, out = run("cremona", "--map", "cubo", "--class", "6;1^4", "--drop-auxiliary")
    assert "without transversals: 10H - 3E1 - 3E2 - 3E3 - 3E4" in out
    assert "# warning: dropped nonzero transversal coefficients [-2, -2]" in out


@pytest.mark.parametrize(
    "model,classes,value",
    [
        ("lines7", ["8;2^6,1", "8;2^6,1", "12;3^6,2"], 8),
        ("cubo", ["1", "1", "1"], 1),
        ("todd", ["0;-1,0,0,0,0,0", "0;-1,0,0,0,0,0", "0;0,-1,0,0,0,0"], 0),
        ("lines6", ["--", "-4;-1^6", "-4;-1^6", "-4;-1^6"], -4),
    ],
)
def test_triple(model, classes, value):
    code, out = run("triple", "--model", model, *classes)
    assert code == 0 and out.strip() == str(value)


def test_waldschmidt_six():
    code, out = run("waldschmidt", "--lines", "6", "--m-max", "1", "--format", "json")
    res = json.loads(out)["result"]
    assert code == 0
    assert res["exact"] == res["upper_bound"] == res["lower_bound"] == "72/19"
    assert res["upper_bound_source"] and res["lower_bound_source"]


def test_waldschmidt_four_and_eight():
    _, out = run("waldschmidt", "-s", "4", "--m-max", "1", "--format", "json")
    assert json.loads(out)["result"]["exact"] == "8/3"
    _, out = run("waldschmidt", "-s", "8", "--m-max", "1")
    assert "conjectured 4.523604490" in out
    assert "residual" in out


def test_verify_subset():
    code, out = run("verify", "cor54", "cremona", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["passed"] and doc["result"]["total"] == 2
    assert doc["result"]["checks"][0]["computed"]["K2"] == 8
    assert doc["prime"] == 32003 and doc["seeds"] == [1, 2, 3]


def test_verify_list():
    code, out = run("verify", "--list")
    assert code == 0 and "theorem3-D" in out.split()


def test_env_and_flag_precedence(monkeypatch):
    monkeypatch.setenv("FATLINES_PRIME", "10007")
    monkeypatch.setenv("FATLINES_SEEDS", "4,5")
    _, out = run("dim", "-d", "3", "-m", "1,1", "--format", "json")
    doc = json.loads(out)
    assert (doc["prime"], doc["seeds"]) == (10007, [4, 5])
    _, out = run("--prime", "101", "dim", "-d", "3", "-m", "1,1", "--seeds", "9", "--format", "json")
    doc = json.loads(out)
    assert (doc["prime"], doc["seeds"]) == (101, [9])


def test_bad_env_is_usage_error(monkeypatch):
    monkeypatch.setenv("FATLINES_PRIME", "12")
    assert run("dim", "-d", "3", "-m", "1")[0] == 2


def test_cache_dir_and_audit(tmp_path):
    args = ["--cache-dir", str(tmp_path)]
    run(*args, "scan", "--max-degree", "4", "--mults", "1^5")
    code, out = run(*args, "cache-audit", "-n", "10", "--format", "json")
    res = json.loads(out)["result"]
    assert code == 0 and res["passed"] and len(res["entries"]) == 10


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fatlines", "dim", "--degree", "8", "--mults", "3^4"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 3
    assert "SPECIAL" in proc.stdout
