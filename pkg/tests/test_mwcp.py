from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliquematch.errors import CapacityError, InputError
from cliquematch.generate import random_clique_instance, rng_for
from cliquematch.mwcp import (
    CliqueInstance,
    Mode,
    SolveConfig,
    Status,
    clique_weight,
    enumerate_cliques,
    enumerate_maximal,
    solve,
    solve_exact,
    solve_heuristic,
)
from cliquematch.oracle import exhaustive_max_weight_clique, iter_cliques

P2_Z = CliqueInstance([1, 1, 1, 1], {(0, 3): 1, (1, 2): 1})
TRIANGLE = CliqueInstance([1, 1, 1], {(0, 1): 1, (0, 2): 1, (1, 2): 1})


def test_clique_weight_ordered_pairs():
    assert clique_weight(P2_Z, ()) == 0
    assert clique_weight(CliqueInstance([1]), (0,)) == 1
    assert clique_weight(CliqueInstance([1, 1], {(0, 1): 1}), (0, 1)) == 4


def test_solve_exact_examples():
    sol = solve_exact(P2_Z)
    assert sol.vertices == (0, 3) and sol.weight == 4 and sol.status is Status.OPTIMAL
    neg = CliqueInstance([-1])
    assert solve_exact(neg).vertices == () and solve_exact(neg).weight == 0
    forced = solve_exact(neg, SolveConfig(cardinality=1))
    assert forced.vertices == (0,) and forced.weight == -1


def test_infeasible_cardinality_reports_largest_clique():
    sol = solve_exact(P2_Z, SolveConfig(cardinality=3))
    assert sol.status is Status.INFEASIBLE and not sol.feasible
    assert sol.largest_feasible == 2


def test_heuristic_examples():
    assert solve_heuristic(P2_Z, SolveConfig(mode=Mode.HEURISTIC, seed=0)).weight == 4
    one = solve_heuristic(CliqueInstance([5]), SolveConfig(mode=Mode.HEURISTIC))
    assert one.vertices == (0,) and one.weight == 5
    empty = solve_heuristic(CliqueInstance([]), SolveConfig(mode=Mode.HEURISTIC))
    assert empty.vertices == () and empty.weight == 0
    with pytest.raises(InputError):
        solve(P2_Z, SolveConfig(mode=Mode.HEURISTIC, cardinality=1))


def test_enumerate_maximal_examples():
    assert list(enumerate_maximal(TRIANGLE)) == [(0, 1, 2)]
    assert list(enumerate_maximal(CliqueInstance([1, 1], {(0, 1): 1}))) == [(0, 1)]
    assert sorted(enumerate_maximal(P2_Z)) == [(0, 3), (1, 2)]


def test_enumerate_cliques_lexicographic():
    got = list(enumerate_cliques(P2_Z))
    assert got == sorted(got) and len(got) == 7


def test_node_limit_flags_budget():
    rng = rng_for(5, "budget")
    inst = random_clique_instance(rng, 30, 0.7)
    sol = solve_exact(inst, SolveConfig(node_limit=5))
    assert sol.status is Status.BUDGET_EXHAUSTED
    with pytest.raises(CapacityError):
        list(enumerate_maximal(inst, budget=3))


def test_rejects_floats():
    with pytest.raises(InputError):
        CliqueInstance([0.5])


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 100_000), st.integers(0, 11), st.sampled_from([None, 0, 1, 2, 3, 4]))
def test_exact_matches_exhaustive(seed, n, k):
    rng = rng_for(seed, "mwcp")
    inst = random_clique_instance(rng, n, rng.uniform(0.2, 0.9))
    want = exhaustive_max_weight_clique(inst, k)
    got = solve_exact(inst, SolveConfig(cardinality=k))
    if want is None:
        assert got.status is Status.INFEASIBLE
    else:
        assert (got.vertices, got.weight) == want


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000), st.integers(1, 12), st.integers(0, 50))
def test_heuristic_is_maximal_and_deterministic(seed, n, s):
    rng = rng_for(seed, "heur")
    inst = random_clique_instance(rng, n, rng.uniform(0.2, 0.9))
    cfg = SolveConfig(mode=Mode.HEURISTIC, seed=s)
    a, b = solve_heuristic(inst, cfg), solve_heuristic(inst, cfg)
    assert a == b
    assert inst.is_clique(a.vertices)
    assert a.weight == clique_weight(inst, a.vertices)
    best = solve_exact(inst).weight
    assert a.weight <= best
    # no superset weighs more
    for c in iter_cliques(inst):
        if set(a.vertices) < set(c):
            assert clique_weight(inst, c) <= a.weight


def test_worker_split_matches_sequential():
    for t in range(12):
        rng = rng_for(2, "workers", t)
        inst = random_clique_instance(rng, 14, 0.6)
        for k in (None, 3):
            cfg1 = SolveConfig(cardinality=k)
            cfg3 = SolveConfig(cardinality=k, workers=3)
            assert solve_exact(inst, cfg1) == solve_exact(inst, cfg3)


def test_fraction_weights_stay_exact():
    inst = CliqueInstance([Fraction(1, 3), Fraction(1, 6)], {(0, 1): Fraction(1, 4)})
    sol = solve_exact(inst)
    assert sol.weight == Fraction(1, 3) + Fraction(1, 6) + Fraction(1, 2)
