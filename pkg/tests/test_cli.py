import json
import subprocess
import sys

import pytest

from cliquematch.cli import main
from cliquematch.graph import AttributedGraph, empty_graph, path_graph
from cliquematch.io import serialize_costs, serialize_graph, serialize_instance, write_text
from cliquematch.mwcp import CliqueInstance
from cliquematch.oracle import brute_force_edit_distance
from cliquematch.problems import EditCostModel


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        path = tmp_path / name
        write_text(path, text)
        return path

    return put


def test_build_and_solve_p2(capsys, files, tmp_path):
    g = files("p2.graph", serialize_graph(path_graph(2)))
    out_path = tmp_path / "z.clq"
    code, out, _ = run(capsys, "build", g, g, "--class", "iso", "--kappa", "mcisp", "-o", out_path)
    assert code == 0 and out == "vertices 4\nedges 2\n"
    text = out_path.read_text()
    assert text.count("\nw ") == 4 and "e 0 3 1/1" in text and "e 1 2 1/1" in text
    code, out, _ = run(capsys, "solve", out_path, "--provenance", str(out_path) + ".prov")
    assert code == 0
    assert out == "status optimal\nweight 4/1\nclique 0 3\npairs {00,11}\nmorphism {0->0, 1->1}\n"


def test_build_empty_instance(capsys, files, tmp_path):
    a = files("a.graph", serialize_graph(AttributedGraph([["a"]])))
    b = files("b.graph", serialize_graph(AttributedGraph([["b"]])))
    code, out, _ = run(capsys, "build", a, b, "--class", "iso", "-o", tmp_path / "z.clq")
    assert code == 0 and out.startswith("vertices 0\n")


def test_build_malformed_graph(capsys, files, tmp_path):
    bad = files("bad.graph", "cliquematch-graph 1\norder 1\nv 0 oops\n")
    code, _, err = run(capsys, "build", bad, bad, "--class", "iso", "-o", tmp_path / "z.clq")
    assert code == 2 and "bad.graph:3:" in err


def test_build_kappa_variants(capsys, files, tmp_path):
    g = files("p3.graph", serialize_graph(path_graph(3)))
    c = files("unit.costs", serialize_costs(EditCostModel.unit()))
    code, out, _ = run(capsys, "build", g, g, "--class", "mono", "--kappa", "exact:1,1/2,0", "-o", tmp_path / "a.clq")
    assert code == 0
    code, out, _ = run(capsys, "build", g, g, "--kappa", f"edit:{c}", "-o", tmp_path / "b.clq")
    assert code == 0 and out.startswith("cardinality 6\n")
    code, _, err = run(capsys, "build", g, g, "--class", "mono", "--kappa", "wat", "-o", tmp_path / "c.clq")
    assert code == 2 and "--kappa" in err
    code, _, _ = run(capsys, "build", g, g, "--kappa", "mcisp", "-o", tmp_path / "d.clq")
    assert code == 2


def test_solve_infeasible(capsys, files):
    inst = files("tri_free.clq", serialize_instance(CliqueInstance([1, 1, 1, 1], {(0, 1): 1, (1, 2): 1, (2, 3): 1})))
    code, out, _ = run(capsys, "solve", inst, "--cardinality", "3")
    assert code == 4 and out == "status infeasible\nlargest-clique 2\n"


def test_solve_heuristic_deterministic(capsys, files):
    from cliquematch.generate import random_clique_instance, rng_for

    inst = files("r.clq", serialize_instance(random_clique_instance(rng_for(7, "cli"), 20, 0.5)))
    first = run(capsys, "solve", inst, "--mode", "heuristic", "--seed", "7")
    second = run(capsys, "solve", inst, "--mode", "heuristic", "--seed", "7")
    assert first[0] == 0 and first[1] == second[1]


def test_solve_enumerate_maximal(capsys, files):
    inst = files("p2z.clq", serialize_instance(CliqueInstance([1, 1, 1, 1], {(0, 3): 1, (1, 2): 1})))
    code, out, _ = run(capsys, "solve", inst, "--mode", "enumerate-maximal")
    assert code == 0
    assert out == "status maximal-only\nclique 0 3 weight 4/1\nclique 1 2 weight 4/1\ncount 2\n"


def test_editdist_examples(capsys, files):
    unit = files("unit.costs", serialize_costs(EditCostModel.unit()))
    a = files("a.graph", serialize_graph(AttributedGraph([["a"]])))
    e = files("e.graph", serialize_graph(empty_graph()))
    code, out, _ = run(capsys, "editdist", a, e, unit)
    assert code == 0
    assert out == "distance 1/1\noptimal yes\nmorphism {}\nscript\n  delete 0[sym:a] cost 1/1\n"
    code, out, _ = run(capsys, "editdist", a, a, unit)
    assert out.startswith("distance 0/1\n") and "substitute 0[sym:a] -> 0[sym:a] cost 0/1" in out
    p2 = files("p2.graph", serialize_graph(path_graph(2)))
    p3 = files("p3.graph", serialize_graph(path_graph(3)))
    code, out, _ = run(capsys, "editdist", p2, p3, unit)
    want = brute_force_edit_distance(path_graph(2), path_graph(3), EditCostModel.unit())[1]
    assert out.startswith(f"distance {want.numerator}/{want.denominator}\n")


def test_verify_writes_artifacts(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--problem", "mcisp", "--trials", "20", "--max-order", "4",
                       "--seed", "1", "--out", tmp_path)
    assert code == 0 and "passed 20 failed 0" in out
    report = json.loads((tmp_path / "verify-mcisp.json").read_text())
    assert report["passed"] == 20 and len(report["reports"]) == 20
    assert (tmp_path / "verify-mcisp.tsv").read_text().count("\n") == 21
    assert (tmp_path / "verify-mcisp.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    code, out, _ = run(capsys, "recheck", tmp_path / "verify-mcisp.json")
    assert code == 0 and out.count("matches") == 20


def test_verify_editdist_small(capsys):
    code, out, _ = run(capsys, "verify", "--problem", "editdist", "--trials", "25", "--max-order", "3", "--seed", "1")
    assert code == 0


def test_verify_nonclosure(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--problem", "nonclosure-demo", "--m", "2", "--out", tmp_path)
    assert code == 0
    assert "pf1 subclique {00} of {00,11}" in out
    assert "pf2 clique {00,11,22} union of {00,11} {00,22} {11,22}" in out
    doc = json.loads((tmp_path / "verify-nonclosure-demo.json").read_text())
    assert doc["report"]["cliques_differ"] is True
    code, _, _ = run(capsys, "verify", "--problem", "nonclosure-demo", "--m", "3")
    assert code == 2


def test_verify_failure_exit_code(capsys, monkeypatch):
    import cliquematch.oracle as oracle

    real = oracle.certify_equivalence

    def failing(problem, budget=0):
        rep = real(problem, budget)
        rep.weights_ok = False
        rep.counterexample = "forced"
        return rep

    monkeypatch.setattr(oracle, "certify_equivalence", failing)
    code, out, _ = run(capsys, "verify", "--problem", "mcisp", "--trials", "2", "--max-order", "2")
    assert code == 1 and "counterexample" in out and '"instance"' in out


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--problem", "nope"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_capacity_exit_code(capsys, files, tmp_path):
    g = files("p3.graph", serialize_graph(path_graph(3)))
    code, _, _ = run(capsys, "build", g, g, "--class", "iso", "-o", tmp_path / "z.clq", "--cap", "4")
    assert code == 3


def test_console_script(tmp_path):
    g = tmp_path / "p2.graph"
    write_text(g, serialize_graph(path_graph(2)))
    res = subprocess.run([sys.executable, "-m", "cliquematch.cli", "build", str(g), str(g), "--class", "iso",
                          "-o", str(tmp_path / "z.clq")], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "vertices 4\nedges 2\n"
