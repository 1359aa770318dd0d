"""Maximum vertex-and-edge weight clique search.

The weight of a clique sums over *ordered* vertex pairs, the diagonal
included: every vertex weight counts once and every edge weight twice.

Weights are exact rationals. Internally the searches scale all weights by
the least common denominator and run on Python integers, which keeps the
arithmetic exact and fast; results are converted back to
:class:`~fractions.Fraction` before they leave this module.
"""

from __future__ import annotations

import atexit
import enum
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional

from .errors import CapacityError, ContractViolation, InputError
from .graph import VOID


class CliqueInstance:
    """Undirected graph with rational vertex and edge weights.

    ``edges`` maps vertex pairs to edge weights; missing pairs are non-edges.
    Instances are treated as immutable.
    """

    __slots__ = ("weights", "edges", "_adj", "_scaled")

    def __init__(self, weights: Iterable, edges: Mapping[tuple[int, int], object] = ()):
        self.weights = tuple(_fraction(w) for w in weights)
        n = len(self.weights)
        table = {}
        pairs = edges.items() if isinstance(edges, Mapping) else edges
        for (u, v), w in pairs:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            w = _fraction(w)
            if key in table and table[key] != w:
                raise InputError(f"conflicting weights for edge {key}")
            table[key] = w
        self.edges = dict(sorted(table.items()))
        adj = [0] * n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._adj = tuple(adj)
        self._scaled = None

    @property
    def n(self) -> int:
        return len(self.weights)

    def __len__(self):
        return len(self.weights)

    def neighbors_mask(self, u: int) -> int:
        return self._adj[u]

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def weight(self, u: int, v: int):
        """``z_uv``: vertex weight on the diagonal, edge weight, or ``VOID``."""
        if u == v:
            return self.weights[u]
        return self.edges.get((u, v) if u < v else (v, u), VOID)

    def is_clique(self, vertices) -> bool:
        vs = tuple(vertices)
        adj = self._adj
        n = len(adj)
        mask = 0
        for v in vs:
            if not 0 <= v < n:
                return False
            bit = 1 << v
            if mask & bit:
                return False
            mask |= bit
        for v in vs:
            if (adj[v] | 1 << v) & mask != mask:
                return False
        return True

    def scaled(self):
        """``(scale, vertex_weights, doubled_edge_weights)`` as integers.

        ``doubled_edge_weights[u][v]`` is ``2 * scale * z_uv`` (0 on non-edges).
        """
        if self._scaled is None:
            dens = [w.denominator for w in self.weights] + [w.denominator for w in self.edges.values()]
            scale = math.lcm(*dens) if dens else 1
            n = self.n
            wv = [int(w * scale) for w in self.weights]
            we2 = [[0] * n for _ in range(n)]
            for (u, v), w in self.edges.items():
                we2[u][v] = we2[v][u] = 2 * int(w * scale)
            self._scaled = (scale, wv, we2)
        return self._scaled

    def __eq__(self, other):
        if not isinstance(other, CliqueInstance):
            return NotImplemented
        return self.weights == other.weights and self.edges == other.edges

    def __repr__(self):
        return f"CliqueInstance(n={self.n}, edges={len(self.edges)})"


def _fraction(w) -> Fraction:
    if isinstance(w, bool) or isinstance(w, float):
        raise InputError(f"weights must be exact rationals, got {w!r}")
    if isinstance(w, (int, Fraction)):
        return Fraction(w)
    raise InputError(f"weights must be exact rationals, got {w!r}")


class Status(enum.Enum):
    OPTIMAL = "optimal"
    MAXIMAL_ONLY = "maximal-only"
    BUDGET_EXHAUSTED = "budget-exhausted"
    INFEASIBLE = "infeasible"


class Mode(enum.Enum):
    EXACT = "exact"
    HEURISTIC = "heuristic"
    ENUMERATE_MAXIMAL = "enumerate-maximal"


@dataclass(frozen=True)
class SolveConfig:
    mode: Mode = Mode.EXACT
    cardinality: Optional[int] = None
    node_limit: Optional[int] = None
    time_limit: Optional[float] = None
    seed: int = 0
    restarts: int = 8
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.cardinality is not None and self.cardinality < 0:
            raise InputError(f"negative cardinality {self.cardinality}")
        if self.node_limit is not None and self.node_limit <= 0:
            raise InputError("node_limit must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise InputError("time_limit must be positive")
        if self.restarts <= 0 or self.workers <= 0:
            raise InputError("restarts and workers must be positive")
        if not 0 <= self.seed < 2**64:
            raise InputError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class CliqueSolution:
    vertices: tuple[int, ...]
    weight: Optional[Fraction]
    status: Status
    nodes: int = field(default=0, compare=False)
    elapsed: float = field(default=0.0, compare=False)
    # set for infeasible cardinality requests: size of the largest clique
    largest_feasible: Optional[int] = None

    @property
    def feasible(self) -> bool:
        return self.status is not Status.INFEASIBLE


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def clique_weight(inst: CliqueInstance, clique) -> Fraction:
    """Ordered-pair weight of ``clique``; raises if it is not a clique."""
    vs = sorted(clique)
    if not inst.is_clique(vs):
        raise ContractViolation(f"{vs} is not a clique")
    total = sum((inst.weights[v] for v in vs), Fraction(0))
    for a, u in enumerate(vs):
        for v in vs[a + 1:]:
            total += 2 * inst.edges[(u, v)]
    return total


def _emit(inst, vertices, scaled_weight, status, nodes, started, largest=None):
    vertices = tuple(vertices)
    if scaled_weight is None:
        weight = None
    else:
        scale = inst.scaled()[0]
        weight = Fraction(scaled_weight, scale)
        if clique_weight(inst, vertices) != weight:
            raise AssertionError(f"weight self-check failed for clique {vertices}")
    return CliqueSolution(vertices, weight, status, nodes, time.perf_counter() - started, largest)


class _Search:
    """Depth-first branch and bound over cliques in lexicographic order.

    Children of a node only add vertices larger than its last vertex, so the
    traversal is a preorder walk of sorted vertex tuples. Because the
    incumbent is replaced only on strict improvement, the reported optimum is
    the lexicographically smallest optimal clique.
    """

    def __init__(self, n, wv, we2, adj, k, node_limit, deadline):
        self.n = n
        self.wv = wv
        self.we2 = we2
        self.adj = adj
        self.k = k
        self.node_limit = node_limit
        self.deadline = deadline
        self.nodes = 0
        self.exhausted = False
        self.best_c = None
        self.best_w = None
        full = (1 << n) - 1
        self.higher = [full & ~((2 << v) - 1) for v in range(n)]
        pos = [0] * n
        has_pos = False
        for u in range(n):
            for v in _bits(adj[u] & self.higher[u]):
                if we2[u][v] > 0:
                    pos[u] |= 1 << v
                    has_pos = True
        self.pos = pos
        self.has_pos = has_pos

    def _pair_term(self, cand):
        if not self.has_pos:
            return 0
        total = 0
        we2, pos = self.we2, self.pos
        for u in _bits(cand):
            m = pos[u] & cand
            if m:
                row = we2[u]
                for v in _bits(m):
                    total += row[v]
        return total

    def _colors_reach(self, cand, r):
        """True if a greedy colouring of ``cand`` needs at least ``r`` colours."""
        adj = self.adj
        count = 0
        uncolored = cand
        while uncolored:
            count += 1
            if count >= r:
                return True
            avail = uncolored
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                uncolored &= ~low
                avail &= ~adj[v] & ~low
        return count >= r

    def visit(self, clique, cand, w, gains):
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            self.exhausted = True
            return
        if self.deadline is not None and self.nodes & 1023 == 0 and time.perf_counter() > self.deadline:
            self.exhausted = True
            return
        size = len(clique)
        k = self.k
        if k is None or size == k:
            if self.best_c is None or w > self.best_w:
                self.best_c = tuple(clique)
                self.best_w = w
            if k is not None:
                return
        if not cand:
            return
        if k is None:
            bound = w + self._pair_term(cand)
            for v in _bits(cand):
                g = gains[v]
                if g > 0:
                    bound += g
        else:
            r = k - size
            if cand.bit_count() < r or not self._colors_reach(cand, r):
                return
            top = sorted((gains[v] for v in _bits(cand)), reverse=True)
            bound = w + sum(top[:r]) + self._pair_term(cand)
        if self.best_c is not None and bound <= self.best_w:
            return
        adj, higher, we2 = self.adj, self.higher, self.we2
        for v in _bits(cand):
            nc = cand & adj[v] & higher[v]
            row = we2[v]
            ng = {u: gains[u] + row[u] for u in _bits(nc)}
            clique.append(v)
            self.visit(clique, nc, w + gains[v], ng)
            clique.pop()
            if self.exhausted:
                return

    def subtree(self, v):
        """Search the cliques whose smallest vertex is ``v``."""
        nc = self.adj[v] & self.higher[v]
        row = self.we2[v]
        gains = {u: self.wv[u] + row[u] for u in _bits(nc)}
        self.visit([v], nc, self.wv[v], gains)


def _subtree_task(args):
    n, wv, we2, adj, k, node_limit, deadline, v = args
    s = _Search(n, wv, we2, adj, k, node_limit, deadline)
    s.subtree(v)
    return s.best_c, s.best_w, s.nodes, s.exhausted


_EXECUTORS: dict[int, ProcessPoolExecutor] = {}


def _executor(workers: int) -> ProcessPoolExecutor:
    ex = _EXECUTORS.get(workers)
    if ex is None:
        ex = _EXECUTORS[workers] = ProcessPoolExecutor(max_workers=workers)
    return ex


@atexit.register
def _shutdown_executors():
    for ex in _EXECUTORS.values():
        ex.shutdown(wait=False, cancel_futures=True)
    _EXECUTORS.clear()


def max_clique_size(inst: CliqueInstance) -> int:
    """Cardinality of a maximum clique (ignores weights)."""
    adj = inst._adj
    best = 0

    def grow(size, cand):
        nonlocal best
        if size > best:
            best = size
        while cand:
            if size + cand.bit_count() <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            grow(size + 1, cand & adj[v])

    grow(0, (1 << inst.n) - 1)
    return best


def solve_exact(inst: CliqueInstance, cfg: SolveConfig = SolveConfig()) -> CliqueSolution:
    """Maximum weight clique, optionally of exactly ``cfg.cardinality`` vertices.

    Ties go to the lexicographically smallest sorted vertex tuple, so the
    empty clique (weight 0) wins over any clique of weight 0 when no
    cardinality is imposed. With ``cfg.workers > 1`` the subtrees rooted at
    each first vertex are searched in worker processes; the answer is the
    same as for a sequential run.
    """
    started = time.perf_counter()
    n = inst.n
    k = cfg.cardinality
    if k is not None and k > n:
        return _emit(inst, (), None, Status.INFEASIBLE, 0, started, max_clique_size(inst))
    _, wv, we2 = inst.scaled()
    adj = list(inst._adj)
    deadline = None if cfg.time_limit is None else started + cfg.time_limit

    best_c, best_w, nodes, exhausted = None, None, 1, False
    if k is None or k == 0:
        best_c, best_w = (), 0

    if k != 0:
        if cfg.workers > 1 and n > 1:
            tasks = [(n, wv, we2, adj, k, cfg.node_limit, deadline, v) for v in range(n)]
            results = list(_executor(cfg.workers).map(_subtree_task, tasks))
        else:
            search = _Search(n, wv, we2, adj, k, cfg.node_limit, deadline)
            search.best_c, search.best_w = best_c, best_w
            results = []
            for v in range(n):
                search.subtree(v)
                if search.exhausted:
                    break
            results.append((search.best_c, search.best_w, search.nodes, search.exhausted))
        for c, w, cnt, ex in results:
            nodes += cnt
            exhausted = exhausted or ex
            if c is not None and (best_c is None or w > best_w):
                best_c, best_w = c, w

    if best_c is None:
        if exhausted:
            return _emit(inst, (), None, Status.BUDGET_EXHAUSTED, nodes, started)
        return _emit(inst, (), None, Status.INFEASIBLE, nodes, started, max_clique_size(inst))
    status = Status.BUDGET_EXHAUSTED if exhausted else Status.OPTIMAL
    return _emit(inst, best_c, best_w, status, nodes, started)


def _best_extension(n, wv, we2, adj, clique, cand):
    """Exact best gain from adding a subset of ``cand`` to ``clique``."""
    if not cand:
        return 0, ()
    s = _Search(n, wv, we2, adj, None, None, None)
    gains = {}
    for u in _bits(cand):
        g = wv[u]
        for c in clique:
            g += we2[c][u]
        gains[u] = g
    s.best_c, s.best_w = (), 0
    # a virtual root whose candidate set is ``cand``; vertex order stays lexicographic
    s.visit([], cand, 0, gains)
    return s.best_w, s.best_c


def solve_heuristic(inst: CliqueInstance, cfg: SolveConfig = SolveConfig(mode=Mode.HEURISTIC)) -> CliqueSolution:
    """Seeded multi-start local search returning a maximal weight clique.

    Each restart builds a clique greedily (random vertex priority after the
    first restart), then applies improving add, drop and swap moves. It stops
    only once no subset of the common neighbourhood can be added with
    positive gain, so no superset of the result weighs more.
    """
    if cfg.cardinality is not None:
        raise InputError("cardinality constraints need mode=exact")
    started = time.perf_counter()
    n = inst.n
    _, wv, we2 = inst.scaled()
    adj = inst._adj
    full = (1 << n) - 1
    rng = random.Random(cfg.seed)
    best_c, best_w = (), 0
    nodes = 0

    def contribution(u, members):
        return wv[u] + sum(we2[u][x] for x in members if x != u)

    for t in range(cfg.restarts):
        order = list(range(n))
        if t:
            rng.shuffle(order)
        rank = {v: p for p, v in enumerate(order)}
        clique: set[int] = set()
        cand = full
        w = 0
        while True:
            nodes += 1
            moved = False
            # add
            best = None
            for v in _bits(cand & ~_mask(clique)):
                g = contribution(v, clique)
                if g > 0 and (best is None or (g, -rank[v]) > (best[0], -rank[best[1]])):
                    best = (g, v)
            if best is not None:
                clique.add(best[1])
                w += best[0]
                cand &= adj[best[1]]
                continue
            # drop
            worst = None
            for u in sorted(clique, key=rank.get):
                c = contribution(u, clique)
                if c < 0 and (worst is None or c < worst[0]):
                    worst = (c, u)
            if worst is not None:
                clique.discard(worst[1])
                w -= worst[0]
                cand = _common(adj, clique, full)
                continue
            # swap
            for u in sorted(clique, key=rank.get):
                rest = clique - {u}
                pool = _common(adj, rest, full) & ~adj[u] & ~_mask(clique)
                for v in sorted(_bits(pool), key=rank.get):
                    delta = contribution(v, rest) - contribution(u, clique)
                    if delta > 0:
                        clique = rest | {v}
                        w += delta
                        cand = _common(adj, clique, full)
                        moved = True
                        break
                if moved:
                    break
            if moved:
                continue
            # exact superset check on the common neighbourhood
            gain, ext = _best_extension(n, wv, we2, adj, sorted(clique), cand & ~_mask(clique))
            if gain > 0:
                clique |= set(ext)
                w += gain
                cand = _common(adj, clique, full)
                continue
            break
        c = tuple(sorted(clique))
        if w > best_w or (w == best_w and c < best_c):
            best_c, best_w = c, w
    return _emit(inst, best_c, best_w, Status.MAXIMAL_ONLY, nodes, started)


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _common(adj, clique, full) -> int:
    m = full
    for v in clique:
        m &= adj[v]
    return m


def solve(inst: CliqueInstance, cfg: SolveConfig = SolveConfig()) -> CliqueSolution:
    if cfg.mode is Mode.EXACT:
        return solve_exact(inst, cfg)
    if cfg.mode is Mode.HEURISTIC:
        return solve_heuristic(inst, cfg)
    raise InputError("enumerate-maximal mode streams cliques; call enumerate_maximal")


def enumerate_maximal(inst: CliqueInstance, budget: int = 1_000_000) -> Iterator[tuple[int, ...]]:
    """Bron-Kerbosch with Tomita pivoting; yields each maximal clique once.

    The pivot is the vertex of ``P | X`` with most neighbours in ``P``
    (lowest index on ties) and branches run in increasing vertex order, so
    the stream is deterministic. ``budget`` bounds the recursion nodes; when
    it runs out a :class:`CapacityError` is raised after the prefix found so
    far has been yielded.
    """
    adj = inst._adj
    visited = 0

    def expand(r, p, x):
        nonlocal visited
        visited += 1
        if visited > budget:
            raise CapacityError(f"maximal clique enumeration exceeded {budget} nodes", bound=budget)
        if not p and not x:
            yield tuple(sorted(r))
            return
        pivot = max(_bits(p | x), key=lambda u: ((p & adj[u]).bit_count(), -u))
        for v in _bits(p & ~adj[pivot]):
            yield from expand(r + [v], p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    return expand([], (1 << inst.n) - 1, 0)


def enumerate_cliques(inst: CliqueInstance, budget: int = 2_000_000) -> Iterator[tuple[int, ...]]:
    """Every clique (the empty one first) in lexicographic order of sorted tuples."""
    adj = inst._adj
    n = inst.n
    full = (1 << n) - 1
    count = 0

    def walk(clique, cand):
        nonlocal count
        count += 1
        if count > budget:
            raise CapacityError(f"clique enumeration exceeded {budget} cliques", bound=budget)
        yield tuple(clique)
        for v in _bits(cand):
            clique.append(v)
            yield from walk(clique, cand & adj[v] & full & ~((2 << v) - 1))
            clique.pop()

    return walk([], full)
