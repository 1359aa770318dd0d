"""Brute-force oracles and equivalence certificates.

Nothing here reuses the enumeration, objective or solver code it checks:
cliques, morphisms, objectives and edit costs are recomputed from the
problem definition (graphs, relation, compatibility function).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .association import (
    CompatibilityFunction,
    build_association,
    clique_to_morphism,
    morphism_to_clique,
)
from .errors import CapacityError, ContractViolation, InputError
from .graph import VOID, AttributedGraph
from .morphism import ItemPairRelation, MorphismClass, PartialMorphism, standard_property
from .mwcp import SolveConfig, Status, solve_exact

DEFAULT_ORACLE_BUDGET = 5_000_000


def _lcm_of(values) -> int:
    dens = {Fraction(v).denominator for v in values}
    return math.lcm(*dens) if dens else 1


def _morphism_stream(x, y, rel, kappa, scale, cardinality=None, budget=DEFAULT_ORACLE_BUDGET):
    """Yield ``(images, scaled objective)`` for every p-morphism.

    Preorder over domains: a morphism is followed by its extensions with
    larger source vertices, sources and targets ascending. With
    ``cardinality`` set, branches that cannot reach that size are skipped.
    Candidate assignments are filtered as the map grows, using the relation
    directly on item pairs.
    """
    n, m = x.order, y.order
    ok = rel.similar

    def k(i, j, r, s):
        v = kappa((i, j), (r, s)) * scale
        if v.denominator != 1:
            raise AssertionError("scale does not clear compatibility denominators")
        return int(v)

    cand = [(i, r) for i in range(n) for r in range(m) if ok((i, i), (r, r))]
    own = [k(i, i, r, r) for i, r in cand]
    fits = [set() for _ in cand]
    pair_gain = {}
    for a, (i, r) in enumerate(cand):
        for b in range(a + 1, len(cand)):
            j, s = cand[b]
            if j != i and ok((i, j), (r, s)) and ok((j, i), (s, r)):
                fits[a].add(b)
                pair_gain[a, b] = k(i, j, r, s) + k(j, i, s, r)
    images = [None] * n

    def walk():
        chosen: list = []
        visited = 1
        if cardinality is None or cardinality == 0:
            yield tuple(images), 0
        if cardinality == 0:
            return
        # each frame: (options, next position, objective so far)
        stack = [(list(range(len(cand))), 0, 0)]
        while stack:
            options, pos, value = stack[-1]
            if pos < len(options) and cardinality is not None:
                if len(chosen) + n - cand[options[pos]][0] < cardinality:
                    pos = len(options)
            if pos == len(options):
                stack.pop()
                if chosen:
                    images[cand[chosen.pop()][0]] = None
                continue
            stack[-1] = (options, pos + 1, value)
            a = options[pos]
            i, r = cand[a]
            gain = own[a]
            for c in chosen:
                gain += pair_gain[c, a]
            value += gain
            images[i] = r
            chosen.append(a)
            visited += 1
            if visited > budget:
                raise CapacityError(f"oracle morphism enumeration exceeded {budget} nodes", bound=budget)
            if cardinality is None or len(chosen) == cardinality:
                yield tuple(images), value
            if cardinality is not None and len(chosen) >= cardinality:
                chosen.pop()
                images[i] = None
                continue
            fa = fits[a]
            stack.append(([b for b in options[pos + 1:] if b in fa], 0, value))

    return walk()


def _clique_stream(z, scale, budget=DEFAULT_ORACLE_BUDGET):
    """Yield ``(sorted vertex tuple, scaled weight)`` for every clique of ``z``.

    Adjacency is read off the weight matrix (non-edges carry ``VOID``).
    """
    n = z.n
    nbrs = [[v for v in range(u + 1, n) if z.weight(u, v) is not VOID] for u in range(n)]
    adjsets = [set(v for v in range(n) if v != u and z.weight(u, v) is not VOID) for u in range(n)]
    wv = [int(z.weight(u, u) * scale) for u in range(n)]
    we = {}
    for u in range(n):
        for v in nbrs[u]:
            we[u, v] = we[v, u] = int(2 * z.weight(u, v) * scale)

    def walk():
        clique: list = []
        yield (), 0
        visited = 1
        stack = [(list(range(n)), 0, 0)]
        while stack:
            options, pos, value = stack[-1]
            if pos == len(options):
                stack.pop()
                if clique:
                    clique.pop()
                continue
            stack[-1] = (options, pos + 1, value)
            v = options[pos]
            gain = wv[v]
            for u in clique:
                gain += we[u, v]
            value += gain
            clique.append(v)
            visited += 1
            if visited > budget:
                raise CapacityError(f"oracle clique enumeration exceeded {budget} cliques", bound=budget)
            yield tuple(clique), value
            av = adjsets[v]
            stack.append(([w for w in options[pos + 1:] if w in av], 0, value))

    return walk()


def _kappa_scale(x, y, rel, kappa) -> int:
    vals = []
    for a in x.items():
        for b in y.items():
            if rel.similar(a, b):
                vals.append(kappa(a, b))
    return _lcm_of(vals)


def brute_force_gmp(
    x: AttributedGraph,
    y: AttributedGraph,
    rel: ItemPairRelation,
    kappa: CompatibilityFunction,
    cardinality: Optional[int] = None,
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> tuple[Optional[PartialMorphism], Optional[Fraction]]:
    """Global optimum of the matching objective by exhaustive search.

    Ties go to the morphism with the lexicographically least ``pairs``.
    Returns ``(None, None)`` when no p-morphism has the required cardinality.
    """
    scale = _kappa_scale(x, y, rel, kappa)
    best = None
    for images, value in _morphism_stream(x, y, rel, kappa, scale, cardinality, budget):
        key = tuple((i, r) for i, r in enumerate(images) if r is not None)
        if best is None or value > best[0] or (value == best[0] and key < best[1]):
            best = (value, key, images)
    if best is None:
        return None, None
    return PartialMorphism(x.order, y.order, best[2]), Fraction(best[0], scale)


@dataclass
class EquivalenceReport:
    problem: str
    instance: dict
    clique_optimum: Optional[Fraction] = None
    morphism_optimum: Optional[Fraction] = None
    clique_witness: Optional[tuple] = None
    morphism_witness: Optional[tuple] = None
    optimum_ok: bool = False
    bijection_ok: bool = False
    weights_ok: bool = False
    cliques_checked: int = 0
    morphisms_checked: int = 0
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.optimum_ok and self.bijection_ok and self.weights_ok

    def to_dict(self) -> dict:
        def frac(v):
            return None if v is None else f"{v.numerator}/{v.denominator}"

        def pairs(w):
            return None if w is None else [list(p) for p in w]

        return {
            "problem": self.problem,
            "instance": self.instance,
            "clique_optimum": frac(self.clique_optimum),
            "morphism_optimum": frac(self.morphism_optimum),
            "clique_witness": pairs(self.clique_witness),
            "morphism_witness": pairs(self.morphism_witness),
            "optimum_ok": self.optimum_ok,
            "bijection_ok": self.bijection_ok,
            "weights_ok": self.weights_ok,
            "cliques_checked": self.cliques_checked,
            "morphisms_checked": self.morphisms_checked,
            "counterexample": self.counterexample,
            "passed": self.passed,
        }


def describe_instance(problem) -> dict:
    """Serializable description from which ``problem`` can be rebuilt."""
    from .io import format_fraction, serialize_graph

    x, y, rel, kappa = problem.x, problem.y, problem.relation, problem.kappa
    try:
        relation = {"class": MorphismClass(rel.name).value}
    except ValueError:
        relation = {"pairs": sorted([list(a) + list(b) for a, b in rel.pairs()])}
    entries = []
    for a in x.items():
        for b in y.items():
            if rel.similar(a, b):
                v = kappa(a, b)
                if v:
                    entries.append([a.i, a.j, b.i, b.j, format_fraction(v)])
    return {
        "x": serialize_graph(x),
        "y": serialize_graph(y),
        "relation": relation,
        "kappa": entries,
        "cardinality": problem.cardinality,
    }


def certify_equivalence(problem, budget: int = DEFAULT_ORACLE_BUDGET) -> EquivalenceReport:
    """Certify clique search on ``Z`` against exhaustive morphism search.

    Checks (a) equal optima with agreeing lexicographically least witnesses,
    (b) ``Phi(C) = phi`` and ``Psi(phi) = C`` along the two lexicographic
    enumerations, with equal lengths, and (c) ``w(C) = f(Phi(C))`` for every
    clique.
    """
    report = EquivalenceReport(problem.name, describe_instance(problem))
    x, y, rel, kappa = problem.x, problem.y, problem.relation, problem.kappa
    z = build_association(x, y, rel, kappa)

    sol = solve_exact(z.instance, SolveConfig(cardinality=problem.cardinality))
    phi_star, f_star = brute_force_gmp(x, y, rel, kappa, problem.cardinality, budget)
    report.morphism_optimum = f_star
    report.morphism_witness = phi_star.pairs if phi_star is not None else None
    if sol.status is Status.OPTIMAL:
        report.clique_optimum = sol.weight
        report.clique_witness = tuple(z.pairs[v] for v in sol.vertices)
    if sol.status is Status.INFEASIBLE:
        report.optimum_ok = phi_star is None
    elif sol.status is Status.OPTIMAL and phi_star is not None:
        report.optimum_ok = (
            sol.weight == f_star and clique_to_morphism(z, sol.vertices) == phi_star
        )
    if not report.optimum_ok and report.counterexample is None:
        report.counterexample = (
            f"clique side {sol.status.value} {report.clique_optimum} {report.clique_witness} vs "
            f"morphism side {f_star} {report.morphism_witness}"
        )

    k_scale = _kappa_scale(x, y, rel, kappa)
    z_scale = _lcm_of(list(z.instance.weights) + list(z.instance.edges.values()))
    scale = math.lcm(k_scale, z_scale)
    cliques = _clique_stream(z, scale, budget)
    morphisms = _morphism_stream(x, y, rel, kappa, scale, None, budget)
    bij_ok = w_ok = True
    n, m = x.order, y.order
    for c_item, m_item in itertools.zip_longest(cliques, morphisms):
        if c_item is None or m_item is None:
            bij_ok = False
            extra = "p-morphism" if c_item is None else "clique"
            report.counterexample = report.counterexample or (
                f"more {extra}s than counterparts; unmatched {m_item[0] if c_item is None else c_item[0]}"
            )
            if c_item is None:
                report.morphisms_checked += 1
            else:
                report.cliques_checked += 1
            break
        clique, omega = c_item
        images, f = m_item
        report.cliques_checked += 1
        report.morphisms_checked += 1
        phi = PartialMorphism._trusted(n, m, images)
        try:
            image = clique_to_morphism(z, clique)
            back = morphism_to_clique(z, phi)
        except ContractViolation as exc:
            bij_ok = False
            report.counterexample = report.counterexample or f"clique {clique} / morphism {phi}: {exc}"
            break
        if image.images != images or back != clique:
            bij_ok = False
            report.counterexample = report.counterexample or (
                f"Phi({clique}) = {image}, Psi({phi}) = {back}: not mutually inverse"
            )
            break
        if omega != f:
            w_ok = False
            report.counterexample = report.counterexample or (
                f"clique {clique} weighs {Fraction(omega, scale)} but f({phi}) = {Fraction(f, scale)}"
            )
            break
    report.bijection_ok = bij_ok
    report.weights_ok = w_ok and bij_ok
    return report


@dataclass
class NonClosureReport:
    m: int
    space_size: int
    cliques_total: int
    encoding_cliques: int
    pf1: Optional[dict] = None
    pf2: Optional[dict] = None
    inconclusive: bool = False
    # clique size -> (encoding cliques, other cliques)
    sizes: dict = field(default_factory=dict)

    @property
    def differs(self) -> bool:
        return self.cliques_total != self.encoding_cliques and (self.pf1 is not None or self.pf2 is not None)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "space_size": self.space_size,
            "cliques_total": self.cliques_total,
            "encoding_cliques": self.encoding_cliques,
            "pf1": self.pf1,
            "pf2": self.pf2,
            "inconclusive": self.inconclusive,
            "cliques_differ": self.differs,
            "sizes": {str(k): list(v) for k, v in sorted(self.sizes.items())},
        }


def demonstrate_non_closure(
    x: AttributedGraph,
    y: AttributedGraph,
    m: int,
    base: MorphismClass = MorphismClass.ISO,
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> NonClosureReport:
    """Show that morphisms with exactly ``m`` domain vertices are not closed.

    The space is every ``base``-class partial morphism of domain size ``m``.
    Its association graph is built from the relation generated by the space
    (the union of the morphisms' item pairs). The report carries

    * ``pf1``: a proper sub-clique of an encoding clique, which encodes a
      morphism with fewer than ``m`` vertices, and
    * ``pf2``: a clique with ``m + 1`` vertices that is the union of encoding
      cliques,

    either of which shows that not every clique encodes a member.
    """
    if m < 2 or x.order <= m:
        raise InputError(f"need 2 <= m < |X|, got m={m}, |X|={x.order}")
    base_rel = standard_property(base, x, y)
    space = []
    for images, _ in _morphism_stream(
        x, y, base_rel, CompatibilityFunction(x, y, lambda a, b: 0), 1, m, budget
    ):
        space.append(tuple((i, r) for i, r in enumerate(images) if r is not None))
    generated = set()
    for pairs in space:
        for i, r in pairs:
            for j, s in pairs:
                generated.add(((i, j), (r, s)))
    rel = ItemPairRelation.from_pairs(x, y, generated, f"generated-{m}")
    z = build_association(x, y, rel, CompatibilityFunction(x, y, lambda a, b: 1, "unit"))
    index = {p: v for v, p in enumerate(z.pairs)}
    encoding = {tuple(sorted(index[p] for p in pairs)) for pairs in space}
    cliques = [c for c, _ in _clique_stream(z, 1, budget)]
    report = NonClosureReport(m, len(space), len(cliques), len(encoding))
    for c in cliques:
        enc, other = report.sizes.get(len(c), (0, 0))
        report.sizes[len(c)] = (enc + 1, other) if c in encoding else (enc, other + 1)

    def named(c):
        return [list(z.pairs[v]) for v in c]

    clique_set = set(cliques)
    for c in sorted(encoding):
        sub = c[:1]
        if sub in clique_set and sub not in encoding:
            report.pf1 = {"subclique": named(sub), "encoding_clique": named(c)}
            break
    for c in cliques:
        if len(c) != m + 1:
            continue
        parts = [s for s in itertools.combinations(c, m) if s in encoding]
        if parts and set(itertools.chain.from_iterable(parts)) == set(c):
            report.pf2 = {"clique": named(c), "union_of": [named(s) for s in parts]}
            break
    if report.pf1 is None and report.pf2 is None:
        report.inconclusive = True
    return report


def brute_force_edit_distance(x: AttributedGraph, y: AttributedGraph, costs) -> tuple[PartialMorphism, Fraction]:
    """Minimum edit cost over all partial monomorphisms ``x -> y``."""
    n, m = x.order, y.order
    best = None
    for size in range(min(n, m) + 1):
        for dom in itertools.combinations(range(n), size):
            for img in itertools.permutations(range(m), size):
                phi = dict(zip(dom, img))
                rng = set(img)
                cost = Fraction(0)
                for i in range(n):
                    for j in range(n):
                        if i in phi and j in phi:
                            cost += costs.substitution_cost(x, (i, j), y, (phi[i], phi[j]))
                        else:
                            cost += costs.deletion_cost(x, (i, j))
                for r in range(m):
                    for s in range(m):
                        if r not in rng or s not in rng:
                            cost += costs.insertion_cost(y, (r, s))
                key = tuple(sorted(phi.items()))
                if best is None or cost < best[0] or (cost == best[0] and key < best[1]):
                    best = (cost, key)
    return PartialMorphism.from_dict(n, m, dict(best[1])), best[0]


def _isomorphic(x: AttributedGraph, y: AttributedGraph) -> bool:
    n = x.order
    if n != y.order:
        return False
    for perm in itertools.permutations(range(n)):
        if all(x[i, j] == y[perm[i], perm[j]] for i in range(n) for j in range(n)):
            return True
    return False


def largest_common_induced_subgraph(x: AttributedGraph, y: AttributedGraph) -> int:
    """Vertex count of a largest common induced subgraph, by subset pairs."""
    for size in range(min(x.order, y.order), 0, -1):
        for u in itertools.combinations(range(x.order), size):
            xs = AttributedGraph([[x[a, b] for b in u] for a in u])
            for w in itertools.combinations(range(y.order), size):
                ys = AttributedGraph([[y[a, b] for b in w] for a in w])
                if _isomorphic(xs, ys):
                    return size
    return 0


def exhaustive_max_weight_clique(inst, cardinality: Optional[int] = None):
    """Argmax of clique weight over all cliques (lexicographic tie-break).

    Returns ``(vertices, weight)`` or ``None`` if no clique has the required
    cardinality.
    """
    n = inst.n
    adj = [set() for _ in range(n)]
    for u, v in inst.edges:
        adj[u].add(v)
        adj[v].add(u)
    best = None
    for size in range(n + 1):
        if cardinality is not None and size != cardinality:
            continue
        for c in itertools.combinations(range(n), size):
            if any(c[b] not in adj[c[a]] for a in range(size) for b in range(a + 1, size)):
                continue
            w = sum((inst.weights[v] for v in c), Fraction(0))
            w += 2 * sum((inst.edges[c[a], c[b]] for a in range(size) for b in range(a + 1, size)), Fraction(0))
            if best is None or w > best[1] or (w == best[1] and c < best[0]):
                best = (c, w)
    return best


def iter_cliques(inst) -> Iterator[tuple[int, ...]]:
    """All cliques by subset enumeration (for small instances only)."""
    n = inst.n
    for size in range(n + 1):
        for c in itertools.combinations(range(n), size):
            if all(inst.adjacent(c[a], c[b]) for a in range(size) for b in range(a + 1, size)):
                yield c


def problem_from_description(desc: dict, name: str = "recheck"):
    """Rebuild the problem behind :func:`describe_instance` output."""
    from .io import parse_fraction, parse_graph
    from .problems import MatchingProblem

    try:
        x, y = parse_graph(desc["x"], "x"), parse_graph(desc["y"], "y")
        rel = desc["relation"]
        if "class" in rel:
            relation = standard_property(MorphismClass(rel["class"]), x, y)
        else:
            relation = ItemPairRelation.from_pairs(
                x, y, [((i, j), (r, s)) for i, j, r, s in rel["pairs"]]
            )
        table = {((i, j), (r, s)): parse_fraction(v) for i, j, r, s, v in desc["kappa"]}
        cardinality = desc.get("cardinality")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed instance description: {exc!r}") from None
    kappa = CompatibilityFunction.from_table(x, y, table, name="table")
    return MatchingProblem(name, x, y, relation, kappa, cardinality)
