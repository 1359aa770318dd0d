"""Seeded random instances.

Every generator takes a :class:`random.Random`. :func:`rng_for` derives one
from a base seed and a list of labels, so each trial of each problem has its
own stream and results do not depend on the order trials run in.

Parameters, all explicit:

* ``order`` -- vertex count,
* ``alphabet`` -- number of distinct vertex symbols (``a``, ``b``, ...),
* ``edge_alphabet`` -- number of distinct edge symbols (``e``, ``f``, ...),
* ``density`` -- independent edge probability.

Random rationals are ``p/q`` with ``q`` drawn from ``DENOMINATORS``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .association import CompatibilityFunction
from .errors import InputError
from .graph import AttributedGraph, ItemType, null_extension
from .mwcp import CliqueInstance
from .problems import (
    EditCostModel,
    ExactWeights,
    MatchingProblem,
    best_common_subgraph_problem,
    edit_distance_problem,
    probabilistic_problem,
    table1_problem,
)
from .morphism import MorphismClass, standard_property
from .problems import mcisp_kappa

DENOMINATORS = (1, 2, 3, 4, 6)
VERTEX_SYMBOLS = "abcdefgh"
EDGE_SYMBOLS = "efghijkl"

CATALOG = ("mcisp", "mcs", "homo", "best-common", "probabilistic", "editdist")


def rng_for(seed: int, *labels) -> random.Random:
    return random.Random(":".join([str(seed), *map(str, labels)]))


def random_rational(rng: random.Random, lo: int, hi: int) -> Fraction:
    q = rng.choice(DENOMINATORS)
    return Fraction(rng.randint(lo * q, hi * q), q)


def random_graph(
    rng: random.Random, order: int, alphabet: int = 2, edge_alphabet: int = 1, density: float = 0.5
) -> AttributedGraph:
    if not (1 <= alphabet <= len(VERTEX_SYMBOLS) and 1 <= edge_alphabet <= len(EDGE_SYMBOLS)):
        raise InputError("alphabet sizes out of range")
    if not 0 <= density <= 1:
        raise InputError("density must lie in [0, 1]")
    vattrs = [VERTEX_SYMBOLS[rng.randrange(alphabet)] for _ in range(order)]
    edges = {}
    for i in range(order):
        for j in range(i + 1, order):
            if rng.random() < density:
                edges[i, j] = EDGE_SYMBOLS[rng.randrange(edge_alphabet)]
    return AttributedGraph.from_edges(vattrs, edges)


def random_uniform_graph(rng: random.Random, order: int, density: float = 0.5) -> AttributedGraph:
    """One vertex symbol, one edge symbol."""
    return random_graph(rng, order, 1, 1, density)


def random_kappa_table(rng: random.Random, x, y, rel=None, lo=-2, hi=2, zero=0.3) -> CompatibilityFunction:
    """Symmetric random compatibilities; roughly ``zero`` of entries are 0."""
    table = {}
    for a in x.items():
        for b in y.items():
            if rel is not None and not rel.similar(a, b):
                continue
            key, mirror = (a, b), ((a.j, a.i), (b.j, b.i))
            if mirror in table:
                continue
            table[key] = Fraction(0) if rng.random() < zero else random_rational(rng, lo, hi)
    return CompatibilityFunction.from_table(x, y, table, name="random")


def random_costs(rng: random.Random, hi: int = 3) -> EditCostModel:
    """Nonnegative rational costs; identical substitutions are free half the time."""
    V, E, N = ItemType.VERTEX, ItemType.EDGE, ItemType.NON_EDGE
    delete = {t: random_rational(rng, 0, hi) for t in (V, E)}
    insert = {t: random_rational(rng, 0, hi) for t in (V, E)}
    if rng.random() < 0.3:
        delete[N] = random_rational(rng, 0, 1)
        insert[N] = random_rational(rng, 0, 1)
    sub = {}
    for pair in ((V, V), (E, E), (E, N), (N, E), (N, N)):
        same = Fraction(0) if rng.random() < 0.5 else random_rational(rng, 0, 1)
        sub[pair] = (same, random_rational(rng, 0, hi))
    return EditCostModel(delete, insert, sub)


def random_clique_instance(
    rng: random.Random, n: int, density: float = 0.5, positive: bool = False, lo: int = -3, hi: int = 3
) -> CliqueInstance:
    if positive:
        lo = 0
    def draw():
        w = random_rational(rng, lo, hi)
        while positive and w == 0:
            w = random_rational(rng, lo, hi)
        return w
    weights = [draw() for _ in range(n)]
    edges = {}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                edges[u, v] = draw()
    return CliqueInstance(weights, edges)


def random_exact_weights(rng: random.Random) -> ExactWeights:
    while True:
        w = [random_rational(rng, 0, 2) for _ in range(3)]
        if sum(w) > 0:
            return ExactWeights(*w)


def random_problem(name: str, rng: random.Random, max_order: int) -> MatchingProblem:
    """A random instance of catalogue problem ``name``.

    Both graph orders are uniform in ``1..max_order``; attribute alphabets
    have two symbols and edge density is uniform in ``[0.2, 0.8]``.
    """
    if max_order < 1:
        raise InputError("max_order must be positive")
    n, m = rng.randint(1, max_order), rng.randint(1, max_order)
    density = rng.uniform(0.2, 0.8)
    x = random_graph(rng, n, 2, 2, density)
    y = random_graph(rng, m, 2, 2, density)
    if name == "mcisp":
        rel = standard_property(MorphismClass.ISO, x, y)
        return MatchingProblem("mcisp", x, y, rel, mcisp_kappa(x, y))
    if name in ("mcs", "homo"):
        p = table1_problem(name, random_exact_weights(rng), x, y)
        return p
    if name == "best-common":
        cls = rng.choice((MorphismClass.MONO, MorphismClass.ALL))
        return best_common_subgraph_problem(random_kappa_table(rng, x, y), cls)
    if name == "probabilistic":
        return probabilistic_problem(x, y, random_kappa_table(rng, x, null_extension(y)))
    if name == "editdist":
        return edit_distance_problem(x, y, random_costs(rng))
    raise InputError(f"unknown problem {name!r}; choose from {', '.join(CATALOG)}")
