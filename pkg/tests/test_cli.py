import json
import subprocess
import sys

import pytest

from c4books.cli import EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE, parse_and_run
from c4books.constructions import build_H
from c4books.graph_core import Graph, encode_graph6


def run(capsys, *argv):
    code = parse_and_run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_writes_graph6_and_manifest(tmp_path, capsys):
    out = tmp_path / "h43.g6"
    code, text, _ = run(capsys, "construct", "--family", "H", "--q", "4", "--t", "3", "--out", str(out))
    assert code == EXIT_OK
    assert out.read_bytes() == encode_graph6(build_H(4, 3).graph) + b"\n"
    manifest = (tmp_path / "h43.g6.manifest").read_text()
    assert "order: 18" in manifest and "r(C4,B10) >= 19" in manifest
    assert "verdict: valid" in text


def test_verify_accepts_construction(tmp_path, capsys):
    path = tmp_path / "h43.g6"
    run(capsys, "construct", "--family", "H", "--q", "4", "--t", "3", "--out", str(path))
    code, text, _ = run(capsys, "verify", "--in", str(path), "--book", "10")
    assert code == EXIT_OK
    assert "certifies: r(C4,B10) >= 19" in text


def test_verify_rejects_with_exit_one(tmp_path, capsys):
    path = tmp_path / "c4.g6"
    path.write_bytes(encode_graph6(Graph.cycle(4)))
    code, text, _ = run(capsys, "verify", "--in", str(path), "--book", "1")
    assert code == EXIT_FAIL and "verdict: invalid" in text


@pytest.mark.parametrize("argv", [
    ["construct", "--family", "H", "--q", "4", "--t", "1"],
    ["construct", "--family", "X", "--q", "4", "--t", "0"],
    ["bounds", "--n", "5", "--bogus"],
    ["bounds"],
    ["bounds", "--n", "0"],
    ["frobnicate"],
    [],
    ["verify", "--in", "/nonexistent/file.g6", "--book", "3"],
    ["audit"],
    ["audit", "--q", "6"],
    ["search", "--n", "4", "--claim", "11"],
    ["random-lower", "--n", "100"],
])
def test_usage_errors_exit_two(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert err


def test_excluded_parameter_explains_range(capsys):
    _, _, err = run(capsys, "construct", "--family", "H", "--q", "4", "--t", "1")
    assert "t != 1" in err


def test_audit_by_q_and_file(tmp_path, capsys):
    code, text, _ = run(capsys, "audit", "--q", "5")
    assert code == EXIT_OK and text.startswith("# ")
    path = tmp_path / "p.g6"
    path.write_bytes(encode_graph6(Graph.petersen()))
    code, _, _ = run(capsys, "audit", "--in", str(path))
    assert code == EXIT_OK


def test_bounds_machine_line(capsys):
    code, text, _ = run(capsys, "bounds", "--n", "10")
    assert code == EXIT_OK
    assert text.splitlines()[-1].split("\t")[:4] == ["10", "19", "19", "19"]


def test_search_statuses(tmp_path, capsys):
    out = tmp_path / "w.g6"
    code, text, _ = run(capsys, "search", "--n", "1", "--claim", "7", "--out", str(out))
    assert code == EXIT_OK and "status: confirmed" in text and out.exists()
    code, text, _ = run(capsys, "search", "--n", "2", "--claim", "8")
    assert code == EXIT_FAIL and "status: refuted" in text
    code, text, _ = run(capsys, "search", "--n", "4", "--claim", "11", "--budget-graphs", "5")
    assert code == EXIT_INCONCLUSIVE and "status: inconclusive" in text


def test_random_lower(tmp_path, capsys):
    out = tmp_path / "r.g6"
    code, text, _ = run(capsys, "random-lower", "--n", "3000", "--out", str(out))
    assert code == EXIT_OK and "certificate: r(C4,B3000) > 3010" in text
    assert out.read_bytes().startswith(b"~")


def test_random_lower_prime_gap_band_is_inconclusive(capsys):
    code, text, _ = run(capsys, "random-lower", "--n", "12700")
    assert code == EXIT_INCONCLUSIVE and "inconclusive" in text


@pytest.mark.parametrize("where", ["before", "after"])
def test_json_switch_in_either_position(where, capsys):
    argv = ["bounds", "--n", "7"]
    argv = ["--json"] + argv if where == "before" else argv + ["--json"]
    code, text, _ = run(capsys, *argv)
    assert code == EXIT_OK
    rec = json.loads(text)
    assert rec["n"] == 7 and rec["exact"] == 16
    assert list(rec) == ["n", "lower", "lower_provenance", "upper", "upper_provenance",
                         "exact", "exact_provenance"]


def test_json_has_same_fields_as_text(capsys):
    _, text, _ = run(capsys, "construct", "--family", "G", "--q", "5", "--t", "2")
    _, js, _ = run(capsys, "--json", "construct", "--family", "G", "--q", "5", "--t", "2")
    keys = [ln.split(":")[0] for ln in text.splitlines()]
    assert keys == list(json.loads(js))


@pytest.mark.parametrize("argv", [
    ["construct", "--family", "G", "--q", "7", "--t", "6"],
    ["bounds", "--n", "123456"],
    ["audit", "--q", "9"],
    ["search", "--n", "2", "--claim", "7"],
])
def test_byte_identical_repeat_runs(argv):
    cmd = [sys.executable, "-m", "c4books", *argv]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout


def test_reproduce_quick(capsys):
    code, text, _ = run(capsys, "reproduce", "--quick", "--oracle-instances", "200")
    lines = text.splitlines()
    assert code == EXIT_OK
    assert lines and all(ln.startswith("PASS\t") for ln in lines)
