import json
import subprocess
import sys

import pytest

from dissociation.cli import main
from dissociation.graph import Graph, from_graph6, to_graph6

P5 = to_graph6(Graph.path(5)).decode()
K4 = to_graph6(Graph.complete(4)).decode()


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    lines = [json.loads(line) for line in out.out.splitlines() if line.strip()]
    return code, lines, out.err


def test_tau(capsys):
    code, lines, _ = run(capsys, "tau", "--graph6", P5)
    assert code == 0
    assert lines[0]["results"][0]["value"] == 4
    assert set(lines[0]) == {"command", "params", "results", "elapsed_ms", "tool_version", "manifest_version"}


def test_rho(capsys):
    code, lines, _ = run(capsys, "rho", "--graph6", K4)
    assert code == 0
    assert lines[0]["results"][0]["rho"] == pytest.approx(3.0, abs=1e-12)


def test_idnum_and_qgood(capsys):
    code, lines, _ = run(capsys, "idnum", "--graph6", K4, "--d", "2")
    assert lines[0]["results"][0]["value"] == 3
    code, lines, _ = run(capsys, "qgood", "--graph6", K4, "--q", "2")
    assert lines[0]["results"][0]["value"] == 2


def test_free_reports_a_copy(capsys):
    code, lines, _ = run(capsys, "free", "--graph6", K4, "--family", "CP4")
    row = lines[0]["results"][0]
    assert row["free"] is False and len(row["witness"]) == 2


def test_quotient(capsys):
    g = to_graph6(Graph.cycle(6)).decode()
    code, lines, _ = run(capsys, "quotient", "--graph6", g, "--partition", "0,2,4:1,3,5")
    row = lines[0]["results"][0]
    assert row["matrix"] == [["0", "2"], ["2", "0"]]
    assert row["char_poly"] == ["1", "0", "-4"]


def test_construct_writes_sidecar(capsys, tmp_path):
    out = tmp_path / "g.g6"
    code, lines, _ = run(capsys, "construct", "cp-cycle", "3", "4", "--out", str(out))
    assert code == 0
    g = from_graph6(out.read_text().strip())
    assert g.n == 12
    sidecar = json.loads((tmp_path / "g.g6.json").read_text())
    assert sidecar["u"] == [0, 4, 8]


def test_search_and_enumerate(capsys):
    code, lines, _ = run(capsys, "search", "ex", "--n", "6", "--family", "L5")
    assert lines[0]["results"]["value"] == 11
    code, lines, _ = run(capsys, "enumerate", "--n", "5", "--connected")
    assert lines[0]["results"]["count"] == 21


def test_bounds_table(capsys):
    code, lines, err = run(capsys, "bounds", "--graph6", K4, "--d", "4", "--table")
    names = [b["name"] for b in lines[0]["results"][0]["bounds"]]
    assert "regular_eigenvalue_upper" in names
    assert "complement_free_upper" in err


def test_verify_single(capsys):
    code, lines, _ = run(capsys, "verify", "T5.4", "--n", "8")
    assert code == 0
    assert lines[0]["results"]["verdict"] == "PASS"


def test_verify_failure_exit_code(capsys):
    code, lines, _ = run(capsys, "verify", "L8.1", "--max-n", "4")
    assert code == 1
    assert lines[0]["results"]["verdict"] == "FAIL"


@pytest.mark.parametrize("argv", [
    ["tau", "--graph6", "@@@"],
    ["search", "ex", "--n", "10", "--family", "L5"],
    ["verify", "Q1"],
    ["construct", "nothing"],
    ["search", "emin", "--n", "6"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_bad_subcommand_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_deterministic_output_is_byte_stable():
    argv = [sys.executable, "-m", "dissociation.cli", "search", "rhomin", "--n", "6", "--tau", "4", "--deterministic"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first


def test_stdin_input():
    argv = [sys.executable, "-m", "dissociation.cli", "tau"]
    res = subprocess.run(argv, input=f"{P5}\n{K4}\n", capture_output=True, text=True, check=True)
    values = [r["value"] for r in json.loads(res.stdout)["results"]]
    assert values == [4, 2]
