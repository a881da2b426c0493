import json
import os
import subprocess

import pytest

import bentkit

CLI = os.environ.get("BENTKIT_CLI")


def test_inner_product_is_bent():
    f = bentkit.BooleanFunction.from_anf("x1*x2 + x3*x4", 4)
    assert bentkit.is_bent(f)
    assert bentkit.nonlinearity(f) == 6
    assert sorted(set(abs(v) for v in bentkit.walsh_transform(f))) == [4]
    assert f.degree() == 2
    assert bentkit.dual(f).n == 4


def test_truth_table_round_trip():
    f = bentkit.BooleanFunction.from_anf("14 + 25 + 36", 6, digits=True)
    g = bentkit.BooleanFunction.from_truth_table(f.truth_table())
    assert f == g
    assert g.anf() == "x1*x4+x2*x5+x3*x6"


def test_parse_error_is_raised():
    with pytest.raises(bentkit.ParseError):
        bentkit.BooleanFunction.from_anf("x1**x2", 4)
    with pytest.raises(bentkit.InvalidInput):
        bentkit.BooleanFunction.from_anf("x1**x2", 4)


def test_designs_and_invariants():
    F = bentkit.catalog(2, 1)
    assert (F.n, F.m) == (6, 2)
    d = bentkit.dev_graph(F)
    assert (d.num_blocks, d.num_points) == (256, 256)
    assert bentkit.gf2_rank(d) == bentkit.gamma_rank(F)
    assert bentkit.smith_normal_form(d).startswith("1^")
    assert bentkit.parse_incidence(d.to_text()) == d


def test_fano_automorphisms_and_isomorphism():
    rows = [[1 if (j - i) % 7 in (0, 1, 3) else 0 for j in range(7)] for i in range(7)]
    fano = bentkit.IncidenceStructure(rows)
    assert bentkit.aut_group_order(fano) == "168"
    shuffled = bentkit.IncidenceStructure(rows[3:] + rows[:3])
    assert bentkit.are_isomorphic(fano, shuffled)
    assert bentkit.canonical_hash(fano) == bentkit.canonical_hash(shuffled)
    with pytest.raises(bentkit.ResourceLimit):
        bentkit.canonical_hash(bentkit.dev_support(bentkit.catalog(1, 1).coordinate(0)), node_budget=2)


def test_ea_equivalence():
    assert not bentkit.ea_equivalent(bentkit.catalog(1, 1), bentkit.catalog(1, 2))
    assert bentkit.ea_equivalent(bentkit.catalog(1, 3), bentkit.catalog(1, 3))
    with pytest.raises(bentkit.NotBent):
        bentkit.ea_equivalent(bentkit.VectorialFunction.from_anf(["x1*x2*x3"], 4), bentkit.catalog(1, 1))


def test_classify_n4():
    res = bentkit.classify(4)
    assert res["classes"] == {1: 1, 2: 1}
    assert res["totals"] == {1: 896, 2: 344064}
    assert res["affine_free"] == 28
    assert res["relations_ok"]
    assert "3 / 12" in res["hasse_dot"]
    assert bentkit.affine_free_count(4) == 28


def test_suite():
    assert all(ok for _, ok, _ in bentkit.run_suite("appendix-bent"))


needs_cli = pytest.mark.skipif(not CLI, reason="BENTKIT_CLI not set")


def run_cli(*args, **kw):
    return subprocess.run([CLI, *args], capture_output=True, text=True, timeout=600, **kw)


@needs_cli
def test_cli_analyze_catalog():
    r = run_cli("analyze", "catalog:1,2")
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["bent"] is True


@needs_cli
def test_cli_exit_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 4, "m": 1, "coords": ["x1**x2"]}')
    assert run_cli("analyze", str(bad)).returncode == 2
    notbent = tmp_path / "notbent.json"
    notbent.write_text('{"n": 4, "m": 1, "coords": ["x1*x2*x3"]}')
    assert run_cli("equivalent", str(notbent), "catalog:1,1").returncode == 3
    assert run_cli("catalog", "--id", "9,9").returncode == 3
    assert run_cli("--budget", "2", "invariants", "--canonical", "--kind", "support", "catalog:1,1").returncode == 4
    assert run_cli("no-such-command").returncode == 2


@needs_cli
def test_cli_classify_writes_files(tmp_path):
    r = run_cli("classify", "--n", "4", "--out-dir", str(tmp_path))
    assert r.returncode == 0, r.stderr
    assert (tmp_path / "hasse.dot").read_text().startswith("digraph")
    lines = (tmp_path / "classes.jsonl").read_text().splitlines()
    assert len(lines) == 2
    assert json.loads((tmp_path / "hasse.json").read_text())["edges"][0]["friends"] in ("12", 12)


@needs_cli
def test_cli_enumerate_resume(tmp_path):
    ck = tmp_path / "ck.json"
    a = run_cli("enumerate", "--n", "6", "--checkpoint", str(ck), "--stop-after", "30")
    assert a.returncode == 0, a.stderr
    b = run_cli("enumerate", "--n", "6", "--checkpoint", str(ck), "--stop-after", "30")
    assert b.returncode == 0, b.stderr
    assert json.loads(ck.read_text())["cursor"] == 60
