"""CLI flows and the exit-status contract."""

import json
import math

import pytest

from ameforge import validate_certificate
from ameforge.cli import main
from ameforge.states import AmeState, write_state


def run(*argv):
    return main([str(a) for a in argv])


def test_construct_verify_reduce_flow(tmp_path, capsys):
    state_file = tmp_path / "ame65.state"
    assert run("construct", 6, 5, "--out", state_file) == 0
    out = capsys.readouterr().out
    assert "125 kets" in out and "verified" in out

    assert run("verify", state_file, "--mode", "both") == 0
    assert "PASS" in capsys.readouterr().out

    reduced = tmp_path / "ame55.state"
    assert run("reduce", state_file, "--out", reduced) == 0
    assert "AME(5,5)" in capsys.readouterr().out
    assert run("verify", reduced, "--mode", "combinatorial") == 0


def test_reduce_chain_to_two_sites(tmp_path, capsys):
    current = tmp_path / "s6.state"
    assert run("construct", 6, 5, "--out", current) == 0
    sizes = []
    for step in range(4):
        nxt = tmp_path / f"s{5 - step}.state"
        assert run("reduce", current, "--out", nxt, "--json", tmp_path / "r.json") == 0
        sizes.append(json.loads((tmp_path / "r.json").read_text())["support"])
        current = nxt
    assert sizes == [25, 25, 5, 5]
    # n = 2 cannot be reduced further: usage refusal
    assert run("reduce", current, "--out", tmp_path / "s1.state") == 2
    capsys.readouterr()


def test_construct_refusals(capsys):
    assert run("construct", 7, 5) == 2
    out = capsys.readouterr().out
    assert "nonexistence" in out and "N(5) = 6" in out

    assert run("construct", 6, 2) == 2
    out = capsys.readouterr().out
    assert "necessary condition" in out

    assert run("construct", 6, 4) == 2
    assert "constructive scope" in capsys.readouterr().out


def test_verify_failing_state(tmp_path, capsys):
    amp = 1 / math.sqrt(2)
    bad = AmeState(3, 2, {(0, 0, 0): amp, (1, 1, 0): amp})
    path = tmp_path / "bad.state"
    write_state(bad, path)
    report_path = tmp_path / "report.json"
    assert run("verify", path, "--mode", "both", "--json", report_path) == 1
    assert "FAIL" in capsys.readouterr().out
    payload = json.loads(report_path.read_text())
    failing = [r["subset"] for r in payload["combinatorial"] if not r["pass"]]
    assert failing == [[2]]
    assert payload["verdicts_agree"]


def test_verify_malformed_file(tmp_path, capsys):
    path = tmp_path / "garbage.state"
    path.write_text("this is not a state\n")
    assert run("verify", path) == 2
    capsys.readouterr()
    assert run("verify", tmp_path / "missing.state") == 2
    capsys.readouterr()


def test_search_exit_codes(tmp_path, capsys):
    assert run("search", 5, 7, 3, "--workers", 1) == 0
    assert "0 MDS codes" in capsys.readouterr().out

    assert run("search", 5, 6, 3, "--workers", 1) == 0
    capsys.readouterr()

    assert run("search", 5, 7, 3, "--budget", 10, "--workers", 1) == 3
    assert "PARTIAL" in capsys.readouterr().out

    assert run("search", 6, 7, 3) == 2  # not a prime power
    capsys.readouterr()


def test_search_env_budget(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AMEFORGE_BUDGET", "10")
    assert run("search", 5, 7, 3, "--workers", 1) == 3
    capsys.readouterr()
    monkeypatch.delenv("AMEFORGE_BUDGET")
    assert run("search", 5, 7, 3, "--workers", 1) == 0
    capsys.readouterr()


def test_search_witness_file(tmp_path, capsys):
    wpath = tmp_path / "witnesses.txt"
    assert run("search", 5, 6, 3, "--workers", 1, "--witness-file", wpath) == 0
    capsys.readouterr()
    lines = wpath.read_text().splitlines()
    assert lines[0] == "q=5 k=3 m=3"
    assert lines[2].split() == ["1", "1", "1"]


def test_search_json_byte_stable(tmp_path, capsys):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run("search", 5, 6, 3, "--workers", 1, "--json", p1) == 0
    assert run("search", 5, 6, 3, "--workers", 1, "--json", p2) == 0
    capsys.readouterr()
    assert p1.read_bytes() == p2.read_bytes()


def test_search_all_information_sets(tmp_path, capsys):
    path = tmp_path / "all.json"
    assert run("search", 5, 7, 3, "--all-information-sets", "--workers", 1, "--json", path) == 0
    capsys.readouterr()
    payload = json.loads(path.read_text())
    assert len(payload["reports"]) == 35
    assert payload["total_mds_found"] == 0


def test_search_certificate(tmp_path, capsys):
    path = tmp_path / "cert.json"
    assert run("search", 5, 7, 3, "--certificate", "--workers", 1, "--json", path) == 0
    assert "N(5) = 6" in capsys.readouterr().out
    cert = json.loads(path.read_text())
    assert validate_certificate(cert) == []

    assert run("search", 5, 6, 3, "--certificate") == 2  # wrong params
    capsys.readouterr()


def test_table_output(tmp_path, capsys):
    path = tmp_path / "table.json"
    assert run("table", 5, "--json", path) == 0
    out = capsys.readouterr().out
    assert "exact" in out
    rows = {r["d"]: r for r in json.loads(path.read_text())}
    assert rows[5]["lower"] == 6 and rows[5]["upper"] == 8 and rows[5]["exact"] == 6
    assert rows[3]["exact"] == 4

    assert run("table", 2) == 2
    capsys.readouterr()


def test_construct_json_idempotent(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    s1, s2 = tmp_path / "s1.state", tmp_path / "s2.state"
    assert run("construct", 4, 3, "--out", s1, "--json", a) == 0
    assert run("construct", 4, 3, "--out", s2, "--json", b) == 0
    capsys.readouterr()
    assert s1.read_bytes() == s2.read_bytes()
    a_payload = json.loads(a.read_text())
    b_payload = json.loads(b.read_text())
    a_payload.pop("state_file"), b_payload.pop("state_file")
    assert a_payload == b_payload


def test_usage_errors_exit_two(capsys):
    assert run("construct", "not-a-number", 5) == 2
    capsys.readouterr()
    assert run() == 2
    capsys.readouterr()


def test_version_flag(capsys):
    assert run("--version") == 0
    assert "ameforge" in capsys.readouterr().out
