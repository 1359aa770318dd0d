"""Acceptance criteria 1-7.

Each test records one pass/fail line, printed in the pytest terminal
summary. All comparisons are exact (rational arithmetic, zero tolerance).
Criteria 1 and 7 replay the full certification twice (worker counts 1 and
8) and take several minutes on a single core.
"""

import functools
import io
import tempfile
from contextlib import redirect_stdout
from fractions import Fraction
from pathlib import Path

from cliquematch.cli import main
from cliquematch.generate import random_clique_instance, random_costs, random_graph, random_uniform_graph, rng_for
from cliquematch.io import serialize_costs, serialize_graph, write_text
from cliquematch.morphism import standard_property
from cliquematch.mwcp import SolveConfig, Status, solve_exact
from cliquematch.oracle import (
    brute_force_edit_distance,
    exhaustive_max_weight_clique,
    largest_common_induced_subgraph,
)
from cliquematch.problems import MatchingProblem, edit_distance, mcisp_kappa

SEED = 1
CERTIFIED = [("mcisp", 5), ("mcs", 5), ("homo", 5), ("best-common", 5), ("editdist", 4)]


def _cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main([str(a) for a in argv])
    return code, buf.getvalue()


def _frac(v):
    return "none" if v is None else f"{v.numerator}/{v.denominator}"


@functools.lru_cache(maxsize=None)
def criterion1(workers):
    """Exit codes plus the bytes of every written artifact."""
    out = {}
    with tempfile.TemporaryDirectory() as d:
        for problem, order in CERTIFIED:
            code, text = _cli("verify", "--problem", problem, "--trials", 200, "--max-order", order,
                              "--seed", SEED, "--workers", workers, "--out", d)
            out[problem] = code, text
        files = {p.name: p.read_bytes() for p in sorted(Path(d).iterdir())}
    return out, files


@functools.lru_cache(maxsize=None)
def criterion2(workers):
    rng = rng_for(SEED, "criterion2")
    lines = []
    for trial in range(100):
        x = random_uniform_graph(rng, rng.randint(1, 5), rng.uniform(0.2, 0.8))
        y = random_uniform_graph(rng, rng.randint(1, 5), rng.uniform(0.2, 0.8))
        p = MatchingProblem("mcisp", x, y, standard_property("iso", x, y), mcisp_kappa(x, y))
        res = p.solve(SolveConfig(workers=workers))
        lcis = largest_common_induced_subgraph(x, y)
        lines.append((trial, _frac(res.value), lcis, res.value == lcis * lcis))
    return lines


@functools.lru_cache(maxsize=None)
def criterion3(workers):
    rng = rng_for(SEED, "criterion3")
    lines = []
    with tempfile.TemporaryDirectory() as d:
        d = Path(d)
        for trial in range(100):
            x = random_graph(rng, rng.randint(1, 4), 2, 2, rng.uniform(0.2, 0.8))
            y = random_graph(rng, rng.randint(1, 4), 2, 2, rng.uniform(0.2, 0.8))
            costs = random_costs(rng)
            lam = Fraction(rng.randint(1, 12), rng.randint(1, 5))
            write_text(d / "x.graph", serialize_graph(x))
            write_text(d / "y.graph", serialize_graph(y))
            write_text(d / "c.costs", serialize_costs(costs))
            code, text = _cli("editdist", d / "x.graph", d / "y.graph", d / "c.costs", "--workers", workers)
            _, want = brute_force_edit_distance(x, y, costs)
            cfg = SolveConfig(workers=workers)
            got = edit_distance(x, y, costs, cfg).distance
            ident = edit_distance(x, x, costs.with_free_identity(), cfg).distance
            scaled = edit_distance(x, y, costs.scaled(lam), cfg).distance
            ok = (code == 0 and text.startswith(f"distance {_frac(want)}\n") and got == want
                  and ident == 0 and scaled == lam * want)
            lines.append((trial, text, _frac(ident), _frac(scaled), ok))
    return lines


@functools.lru_cache(maxsize=None)
def criterion4(workers):
    with tempfile.TemporaryDirectory() as d:
        code, text = _cli("verify", "--problem", "nonclosure-demo", "--m", 2, "--workers", workers, "--out", d)
        files = {p.name: p.read_bytes() for p in sorted(Path(d).iterdir())}
    return code, text, files


@functools.lru_cache(maxsize=None)
def criterion5(workers):
    rng = rng_for(SEED, "criterion5")
    lines = []
    for trial in range(500):
        inst = random_clique_instance(rng, rng.randint(1, 14), rng.uniform(0.2, 0.9))
        for k in (None, rng.randint(0, 5)):
            got = solve_exact(inst, SolveConfig(cardinality=k, workers=workers))
            want = exhaustive_max_weight_clique(inst, k)
            if want is None:
                ok = got.status is Status.INFEASIBLE
            else:
                ok = got.status is Status.OPTIMAL and (got.vertices, got.weight) == want
            lines.append((trial, k, got.vertices, _frac(got.weight), got.status.value, ok))
    return lines


@functools.lru_cache(maxsize=None)
def criterion6(workers):
    rng = rng_for(SEED, "criterion6")
    lines = []
    for trial in range(100):
        inst = random_clique_instance(rng, rng.randint(1, 14), rng.uniform(0.2, 0.9), positive=True)
        sol = solve_exact(inst, SolveConfig(workers=workers))
        outside = [v for v in range(inst.n) if v not in sol.vertices]
        extendable = [v for v in outside if all(inst.adjacent(v, u) for u in sol.vertices)]
        lines.append((trial, sol.vertices, _frac(sol.weight), not extendable and inst.is_clique(sol.vertices)))
    return lines


def test_criterion1_certification(acceptance_line):
    results, files = criterion1(1)
    codes = {p: code for p, (code, _) in results.items()}
    ok = all(code == 0 for code in codes.values())
    summary = ", ".join(f"{p}={results[p][1].split(' passed ')[1].split(' cliques')[0]}" for p in results)
    acceptance_line(1, ok, f"verify x5 problems, 200 trials, seed 1 (exact): {summary}")
    assert ok, codes


def test_criterion2_mcisp_weight_identity(acceptance_line):
    lines = criterion2(1)
    bad = [l for l in lines if not l[-1]]
    acceptance_line(2, not bad, f"max clique weight == LCIS^2 on {len(lines) - len(bad)}/{len(lines)} pairs (exact)")
    assert not bad, bad[:3]


def test_criterion3_edit_distance_oracle(acceptance_line):
    lines = criterion3(1)
    bad = [l for l in lines if not l[-1]]
    acceptance_line(3, not bad, f"cli editdist == brute force, d(X,X)=0, lambda-scaling on "
                                f"{len(lines) - len(bad)}/{len(lines)} pairs (exact)")
    assert not bad, bad[:3]


def test_criterion4_non_closure(acceptance_line):
    code, text, _ = criterion4(1)
    ok = (code == 0 and "pf1 subclique {00} of {00,11}" in text
          and "pf2 clique {00,11,22}" in text and "cliques differ" in text)
    acceptance_line(4, ok, "K3/K3, m=2: PF1 singleton sub-clique and PF2 size-3 union clique produced")
    assert ok, text


def test_criterion5_solver_soundness(acceptance_line):
    lines = criterion5(1)
    bad = [l for l in lines if not l[-1]]
    acceptance_line(5, not bad, f"exact solver == exhaustive argmax (value and witness) on "
                                f"{len(lines) - len(bad)}/{len(lines)} solves, 500 instances (exact)")
    assert not bad, bad[:3]


def test_criterion6_positive_maximality(acceptance_line):
    lines = criterion6(1)
    bad = [l for l in lines if not l[-1]]
    acceptance_line(6, not bad, f"no single-vertex extension on {len(lines) - len(bad)}/{len(lines)} positive instances")
    assert not bad, bad[:3]


def test_criterion7_determinism_across_workers(acceptance_line):
    diffs = []
    for name, fn in [("1", criterion1), ("2", criterion2), ("3", criterion3), ("4", criterion4),
                     ("5", criterion5), ("6", criterion6)]:
        if fn(1) != fn(8):
            diffs.append(name)
    acceptance_line(7, not diffs, "artifacts of criteria 1-6 byte-identical for workers 1 and 8"
                    + (f"; differing: {diffs}" if diffs else ""))
    assert not diffs
