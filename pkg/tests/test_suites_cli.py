from __future__ import annotations

import json

import pytest

from bipkit.graphs import parse_graph
from bipkit.families import path
from bipkit.harness import cli
from bipkit.harness.suites import (
    SuiteOptions,
    antichain_check,
    make_witness,
    reverify_witness,
    run_suite,
    _case_perm_pair,
    _case_graph_pair,
)


def test_antichain_check_families():
    report = antichain_check("H", [1, 2, 3, 4])
    assert report.failed == 0 and report.undecided == 0
    assert len(report.verdicts) == 12
    report = antichain_check("permT", [6, 8])
    assert report.failed == 0
    report = antichain_check("permS", [8, 10])
    assert report.failed == 0
    with pytest.raises(ValueError):
        antichain_check("nope", [1, 2])


def test_failing_case_produces_reverifiable_witness():
    # a member trivially contains itself, so an equal pair must fail loudly
    verdict = _case_perm_pair("self", "permT", 6, 6)
    assert verdict.status == "FAIL"
    assert reverify_witness(verdict.witness_text)

    verdict = _case_graph_pair("self", "H", 2, 2, None)
    assert verdict.status == "FAIL"
    assert reverify_witness(verdict.witness_text)


def test_witness_kinds_reverify():
    from bipkit.graphs import serialize_graph
    from bipkit.families import s123, complete_bipartite

    good = make_witness(
        "perm-contain", {"host": "(2,3,1)", "pattern": "(1,2)"}
    )
    assert reverify_witness(good)
    stale = make_witness(
        "perm-contain", {"host": "(1,2,3)", "pattern": "(2,1)"}
    )
    assert not reverify_witness(stale)

    emb = make_witness(
        "embedding",
        {
            "pattern": serialize_graph(path(2)).rstrip(),
            "host": serialize_graph(path(3)).rstrip(),
            "map": "1 2",
        },
    )
    assert reverify_witness(emb)
    bad_emb = make_witness(
        "embedding",
        {
            "pattern": serialize_graph(path(2)).rstrip(),
            "host": serialize_graph(path(3)).rstrip(),
            "map": "1 3",
        },
    )
    assert not reverify_witness(bad_emb)

    # a graph that is (P7,C4)-free and has no 9-vertex path does NOT re-verify
    not_p9 = make_witness("graph-p9", {"graph": serialize_graph(s123()).rstrip()})
    assert not reverify_witness(not_p9)
    # K_{5,4} has a 9-vertex path but is not C4-free, so it does not re-verify either
    not_free = make_witness(
        "graph-p9", {"graph": serialize_graph(complete_bipartite(5, 4)).rstrip()}
    )
    assert not reverify_witness(not_free)

    with pytest.raises(ValueError):
        reverify_witness("kind mystery\n")
    with pytest.raises(ValueError):
        reverify_witness("no header\n")


def test_identity_suite_is_deterministic():
    a = run_suite("identities")
    b = run_suite("identities")
    assert [(v.case, v.status, v.note) for v in a.verdicts] == [
        (v.case, v.status, v.note) for v in b.verdicts
    ]
    assert a.failed == 0 and a.undecided == 0
    summary = a.summary()
    assert summary["cases"] == len(a.verdicts)


def test_worker_pool_matches_sequential():
    seq = run_suite("t-free", SuiteOptions(workers=1))
    par = run_suite("t-free", SuiteOptions(workers=3))
    assert [(v.case, v.status) for v in seq.verdicts] == [
        (v.case, v.status) for v in par.verdicts
    ]
    assert seq.failed == 0


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_suite("definitely-not-a-suite")


# ---------------------------------------------------------------------------
# CLI


def test_cli_gen_and_parse(capsys, tmp_path):
    assert cli.main(["gen", "path", "5"]) == 0
    g, b = parse_graph(capsys.readouterr().out)
    assert g == path(5) and b is None

    out = tmp_path / "t6.graph"
    assert cli.main(["gen", "t-graph", "6", "--out", str(out)]) == 0
    g, b = parse_graph(out.read_text())
    assert g.n == 24 and b is not None

    assert cli.main(["gen", "perm-graph", "(2,1)"]) == 0
    g, _ = parse_graph(capsys.readouterr().out)
    assert g.edge_count == 1

    assert cli.main(["gen", "no-such-family"]) == 2
    assert cli.main(["gen", "path", "0"]) == 2
    assert cli.main(["gen", "path", "x"]) == 2


def test_cli_perm_ops(capsys):
    assert cli.main(["perm", "star-t", "6"]) == 0
    assert capsys.readouterr().out.strip() == "(4,2,6,1,5,3)"
    assert cli.main(["perm", "compose", "(2,1,3)", "(3,1,2)"]) == 0
    assert capsys.readouterr().out.strip() == "(3,2,1)"
    assert cli.main(["perm", "inverse", "(3,1,2)"]) == 0
    assert capsys.readouterr().out.strip() == "(2,3,1)"
    assert cli.main(["perm", "contains", "(2,3,1)", "(1,2)"]) == 0
    assert capsys.readouterr().out.strip() == "yes"
    assert cli.main(["perm", "convex", "(2,1,3)"]) == 0
    assert capsys.readouterr().out.strip() == "no"
    assert cli.main(["perm", "star-t", "7"]) == 2


def test_cli_embed_and_check(capsys):
    assert cli.main(["embed", "path:3", "cycle:5"]) == 0
    assert "->" in capsys.readouterr().out
    assert cli.main(["embed", "cycle:4", "path:4"]) == 1
    assert capsys.readouterr().out.strip() == "none"
    assert cli.main(["check", "free", "path:6", "--forbid", "path:7", "cycle:4"]) == 0
    assert cli.main(["check", "free", "path:7", "--forbid", "path:7"]) == 1
    # a starving budget must surface as undecided, exit 3
    assert cli.main(["embed", "t-graph:6", "t-graph:8", "--budget", "3"]) == 3


def test_cli_paths_decompose_letter_biconvex(capsys):
    assert cli.main(["paths", "cycle:9", "9"]) == 0
    assert capsys.readouterr().out.strip() == "yes"
    assert cli.main(["paths", "s123", "9"]) == 0
    assert capsys.readouterr().out.strip() == "no"
    assert cli.main(["decompose", "path:6"]) == 0
    assert capsys.readouterr().out.startswith("(")
    assert cli.main(["decompose", "path:7"]) == 1
    assert cli.main(["decompose", "t-graph:6"]) == 3
    assert cli.main(["decompose", "cycle:5"]) == 1
    assert cli.main(["letter", "grid", "2", "2", "--verify", "grid:2,2"]) == 0
    assert cli.main(["biconvex", "path:4"]) == 0
    assert cli.main(["biconvex", "cycle:6"]) == 1
    capsys.readouterr()


def test_cli_stdin_graph(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("p 2\ne 1 2\n"))
    assert cli.main(["paths", "-", "2"]) == 0
    assert capsys.readouterr().out.strip() == "yes"


def test_cli_verify_identities(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert cli.main(["verify", "identities"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert all(line.startswith("ok identities/") for line in lines[:-1])
    summary = json.loads(lines[-1])
    assert summary["fail"] == 0 and summary["undecided"] == 0


def test_cli_verify_failure_writes_witness(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    # an equal pair is not an antichain: T6 embeds into itself, so this must fail
    code = cli.main(["verify", "t-antichain", "--t-pair", "6,6"])
    assert code == 1
    out = capsys.readouterr().out
    fail_lines = [line for line in out.splitlines() if line.startswith("FAIL")]
    assert fail_lines, out
    witness_path = fail_lines[0].split()[-1]
    text = (tmp_path / witness_path).read_text()
    assert reverify_witness(text)


def test_cli_verify_rejects_unknown_suite():
    assert cli.main(["verify", "bogus"]) == 2


def test_cli_verify_undecided_exit_code(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    # a starving budget turns the graph-pair searches undecided, never failed
    code = cli.main(["verify", "t-antichain", "--budget", "3"])
    assert code == 3
    out = capsys.readouterr().out
    assert "UNDECIDED" in out and "FAIL" not in out
