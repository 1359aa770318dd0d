"""Catalogue of graph matching problems reduced to weighted clique search.

Every problem is a :class:`MatchingProblem`: a pair of (possibly extended)
graphs, a property selecting the search space, a compatibility function and
an optional required domain size. Solving builds the association graph and
runs the clique solver on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional

from .association import (
    DEFAULT_SIZE_CAP,
    AssociationGraph,
    CompatibilityFunction,
    build_association,
    clique_to_morphism,
    objective,
)
from .errors import InputError
from .graph import (
    VOID,
    AttributedGraph,
    ItemType,
    dummy_extension,
    item_type,
    null_extension,
)
from .morphism import ItemPairRelation, MorphismClass, PartialMorphism, standard_property
from .mwcp import CliqueSolution, SolveConfig, Status, _fraction, solve

__all__ = [
    "ExactWeights",
    "EditCostModel",
    "EditOperation",
    "EditScript",
    "EditDistanceResult",
    "MatchingProblem",
    "MatchingResult",
    "TABLE1_KINDS",
    "objective",
    "mcisp_kappa",
    "exact_kappa",
    "table1_problem",
    "best_common_subgraph_problem",
    "probabilistic_problem",
    "edit_kappa",
    "edit_distance_problem",
    "edit_distance",
    "decode_edit_script",
    "edit_cost",
]


@dataclass(frozen=True)
class ExactWeights:
    vertex: Fraction = Fraction(1)
    edge: Fraction = Fraction(0)
    non_edge: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("vertex", "edge", "non_edge"):
            v = _fraction(getattr(self, name))
            if v < 0:
                raise InputError(f"exact weight {name} must be nonnegative, got {v}")
            object.__setattr__(self, name, v)
        if self.vertex + self.edge + self.non_edge <= 0:
            raise InputError("exact weights must not all be zero")


@dataclass(frozen=True, eq=False)
class MatchingProblem:
    """A graph matching problem in clique-ready form.

    ``x`` and ``y`` are the graphs actually matched, which for some reductions
    are extensions of the user's graphs (kept in ``meta``). ``cardinality``
    fixes the domain size of feasible morphisms. ``post_decision``, when set,
    is evaluated on the optimal morphism after solving; it never influences
    the search.
    """

    name: str
    x: AttributedGraph
    y: AttributedGraph
    relation: ItemPairRelation
    kappa: CompatibilityFunction
    cardinality: Optional[int] = None
    post_decision: Optional[Callable[[PartialMorphism], bool]] = None
    meta: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.relation.x is not self.x and self.relation.x != self.x:
            raise InputError("relation was built for a different source graph")
        if self.relation.y is not self.y and self.relation.y != self.y:
            raise InputError("relation was built for a different target graph")

    def association(self, cap: int = DEFAULT_SIZE_CAP) -> AssociationGraph:
        return build_association(self.x, self.y, self.relation, self.kappa, cap=cap)

    def objective(self, phi: PartialMorphism) -> Fraction:
        return objective(phi, self.x, self.y, self.kappa)

    def solve(self, cfg: Optional[SolveConfig] = None, z: Optional[AssociationGraph] = None) -> "MatchingResult":
        if cfg is None:
            cfg = SolveConfig(cardinality=self.cardinality)
        elif cfg.cardinality != self.cardinality:
            raise InputError(
                f"config cardinality {cfg.cardinality} differs from the problem's {self.cardinality}"
            )
        if z is None:
            z = self.association()
        sol = solve(z.instance, cfg)
        if not sol.feasible or sol.weight is None:
            return MatchingResult(self, z, sol, None, None, None)
        phi = clique_to_morphism(z, sol.vertices)
        decision = self.post_decision(phi) if self.post_decision is not None else None
        return MatchingResult(self, z, sol, phi, sol.weight, decision)


@dataclass(frozen=True, eq=False)
class MatchingResult:
    problem: MatchingProblem
    association: AssociationGraph
    solution: CliqueSolution
    morphism: Optional[PartialMorphism]
    value: Optional[Fraction]
    decision: Optional[bool]

    @property
    def optimal(self) -> bool:
        return self.solution.status is Status.OPTIMAL


def mcisp_kappa(x: AttributedGraph, y: AttributedGraph) -> CompatibilityFunction:
    """1 where the two items carry the same attribute (void included), else 0."""
    X, Y = x.matrix, y.matrix
    return CompatibilityFunction(
        x, y, lambda a, b: 1 if X[a.i][a.j] == Y[b.i][b.j] else 0, "mcisp"
    )


def exact_kappa(w: ExactWeights, x: AttributedGraph, y: AttributedGraph) -> CompatibilityFunction:
    """Credit only exact correspondences, weighted per item type."""
    if not isinstance(w, ExactWeights):
        w = ExactWeights(*w)
    X, Y = x.matrix, y.matrix

    def kappa(a, b):
        xa, yb = X[a.i][a.j], Y[b.i][b.j]
        if a.i == a.j:
            return w.vertex if b.i == b.j and xa == yb else 0
        if b.i == b.j:
            return 0
        if xa is VOID:
            return w.non_edge if yb is VOID else 0
        return w.edge if xa == yb else 0

    return CompatibilityFunction(x, y, kappa, "exact")


def _total_domain(n):
    return lambda phi: len(phi) == n


TABLE1_KINDS = {
    # kind: (morphism class, total-morphism decision?)
    "mcs": (MorphismClass.SUBGRAPH, False),
    "subgraph-iso": (MorphismClass.SUBGRAPH, True),
    "mcis": (MorphismClass.ISO, False),
    "induced-subgraph-iso": (MorphismClass.ISO, True),
    "graph-iso": (MorphismClass.ISO, True),
    "homo": (MorphismClass.HOMO, False),
    "subgraph-homo": (MorphismClass.HOMO, True),
}


def table1_problem(kind: str, w, x: AttributedGraph, y: AttributedGraph) -> MatchingProblem:
    """Exact matching problem of the standard catalogue.

    Problems over total morphisms are posed as their partial counterpart with
    a decision on the optimum: "is the optimal domain all of ``V(X)``" (and,
    for ``graph-iso``, ``|X| = |Y|``). The decision is sound when
    ``w.vertex > 0``.
    """
    if kind not in TABLE1_KINDS:
        raise InputError(f"unknown problem kind {kind!r}; choose from {sorted(TABLE1_KINDS)}")
    cls, total = TABLE1_KINDS[kind]
    if not isinstance(w, ExactWeights):
        w = ExactWeights(*w)
    decision = None
    if kind == "graph-iso":
        same = x.order == y.order
        decision = lambda phi: same and len(phi) == x.order
    elif total:
        decision = _total_domain(x.order)
    return MatchingProblem(
        kind, x, y, standard_property(cls, x, y), exact_kappa(w, x, y),
        post_decision=decision, meta={"weights": w, "class": cls},
    )


def best_common_subgraph_problem(kappa: CompatibilityFunction, cls=MorphismClass.MONO) -> MatchingProblem:
    cls = MorphismClass(cls)
    if cls not in (MorphismClass.ALL, MorphismClass.MONO):
        raise InputError("best common subgraph ranges over all or mono morphisms only")
    rel = standard_property(cls, kappa.x, kappa.y)
    return MatchingProblem("best-common", kappa.x, kappa.y, rel, kappa, meta={"class": cls})


def probabilistic_problem(x: AttributedGraph, y: AttributedGraph, log_compat) -> MatchingProblem:
    """Maximum a posteriori matching against ``y`` extended by a null vertex.

    ``log_compat`` gives additive log-domain compatibilities over items of
    ``x`` and of ``null_extension(y)`` (the null vertex has index ``y.order``).
    It may be a :class:`CompatibilityFunction` built on those graphs or a
    plain callable ``(item_x, item_y) -> rational``. Feasible morphisms are
    total: a vertex left "unmatched" maps to the null vertex.
    """
    y_null = null_extension(y)
    if isinstance(log_compat, CompatibilityFunction):
        if log_compat.x != x or log_compat.y != y_null:
            raise InputError("log compatibilities must be defined on (X, null_extension(Y))")
        kappa = log_compat
    else:
        kappa = CompatibilityFunction(x, y_null, log_compat, "log-compat")
    rel = standard_property(MorphismClass.ALL, x, y_null)
    return MatchingProblem(
        "probabilistic", x, y_null, rel, kappa, cardinality=x.order,
        meta={"source": (x, y), "null_vertex": y.order},
    )


@dataclass(frozen=True)
class EditCostModel:
    """Costs of item edit operations, charged per *ordered* item.

    ``substitute[(type_x, type_y)]`` is a pair ``(identical, different)``:
    the cost when the two items carry equal attributes and when they do not.
    ``overrides[(attr_x, attr_y)]`` replaces that cost for a specific pair of
    attributes on same-typed items. Missing entries cost 0.
    """

    delete: Mapping = field(default_factory=dict)
    insert: Mapping = field(default_factory=dict)
    substitute: Mapping = field(default_factory=dict)
    overrides: Mapping = field(default_factory=dict)

    def __post_init__(self):
        def clean(table, name):
            out = {}
            for key, v in dict(table).items():
                key = ItemType(key)
                v = _fraction(v)
                if v < 0:
                    raise InputError(f"{name} cost for {key.value} must be nonnegative")
                out[key] = v
            return out

        object.__setattr__(self, "delete", clean(self.delete, "deletion"))
        object.__setattr__(self, "insert", clean(self.insert, "insertion"))
        sub = {}
        for (tx, ty), costs in dict(self.substitute).items():
            same, diff = (_fraction(c) for c in costs)
            if same < 0 or diff < 0:
                raise InputError("substitution costs must be nonnegative")
            sub[(ItemType(tx), ItemType(ty))] = (same, diff)
        object.__setattr__(self, "substitute", sub)
        over = {}
        for pair, v in dict(self.overrides).items():
            v = _fraction(v)
            if v < 0:
                raise InputError("override costs must be nonnegative")
            over[tuple(pair)] = v
        object.__setattr__(self, "overrides", over)

    @classmethod
    def unit(cls, non_edge=0) -> "EditCostModel":
        """Unit deletion/insertion of vertex and edge items, unit mismatch."""
        V, E, N = ItemType.VERTEX, ItemType.EDGE, ItemType.NON_EDGE
        return cls(
            delete={V: 1, E: 1, N: non_edge},
            insert={V: 1, E: 1, N: non_edge},
            substitute={(V, V): (0, 1), (E, E): (0, 1), (E, N): (1, 1), (N, E): (1, 1), (N, N): (0, 0)},
        )

    def deletion_cost(self, x: AttributedGraph, a) -> Fraction:
        return self.delete.get(item_type(x, a), Fraction(0))

    def insertion_cost(self, y: AttributedGraph, b) -> Fraction:
        return self.insert.get(item_type(y, b), Fraction(0))

    def substitution_cost(self, x: AttributedGraph, a, y: AttributedGraph, b) -> Fraction:
        tx, ty = item_type(x, a), item_type(y, b)
        xa, yb = x[a], y[b]
        if tx is ty:
            hit = self.overrides.get((xa, yb))
            if hit is not None:
                return hit
        same, diff = self.substitute.get((tx, ty), (Fraction(0), Fraction(0)))
        return same if xa == yb else diff

    def scaled(self, factor) -> "EditCostModel":
        f = _fraction(factor)
        if f < 0:
            raise InputError("scale factor must be nonnegative")
        return EditCostModel(
            {k: v * f for k, v in self.delete.items()},
            {k: v * f for k, v in self.insert.items()},
            {k: (a * f, b * f) for k, (a, b) in self.substitute.items()},
            {k: v * f for k, v in self.overrides.items()},
        )

    def with_free_identity(self) -> "EditCostModel":
        """Same model with every identical substitution made free."""
        return EditCostModel(
            self.delete,
            self.insert,
            {k: (Fraction(0), b) for k, (a, b) in self.substitute.items()},
            {k: (Fraction(0) if k[0] == k[1] else v) for k, v in self.overrides.items()},
        )


def edit_cost(x: AttributedGraph, y: AttributedGraph, phi: PartialMorphism, costs: EditCostModel) -> Fraction:
    """Total edit cost of a partial monomorphism ``x -> y``."""
    dom = set(phi.domain)
    rng = phi.range
    total = Fraction(0)
    for a in x.items():
        if a.i in dom and a.j in dom:
            total += costs.substitution_cost(x, a, y, (phi(a.i), phi(a.j)))
        else:
            total += costs.deletion_cost(x, a)
    for b in y.items():
        if not (b.i in rng and b.j in rng):
            total += costs.insertion_cost(y, b)
    return total


def edit_kappa(x: AttributedGraph, y: AttributedGraph, costs: EditCostModel) -> CompatibilityFunction:
    """Negated edit costs on the dummy extensions of ``x`` and ``y``.

    An item of ``x`` whose image leaves ``I(y)`` is deleted, an item of ``y``
    reached from outside ``I(x)`` is inserted, items inside both are
    substituted, and dummy-to-dummy items cost nothing.
    """
    n, m = x.order, y.order
    xd, yd = dummy_extension(x, m), dummy_extension(y, n)

    def kappa(a, b):
        in_x = a.i < n and a.j < n
        in_y = b.i < m and b.j < m
        if in_x and in_y:
            return -costs.substitution_cost(x, a, y, b)
        if in_x:
            return -costs.deletion_cost(x, a)
        if in_y:
            return -costs.insertion_cost(y, b)
        return 0

    return CompatibilityFunction(xd, yd, kappa, "edit")


def edit_distance_problem(x: AttributedGraph, y: AttributedGraph, costs: EditCostModel) -> MatchingProblem:
    kappa = edit_kappa(x, y, costs)
    rel = standard_property(MorphismClass.MONO, kappa.x, kappa.y)
    return MatchingProblem(
        "editdist", kappa.x, kappa.y, rel, kappa, cardinality=x.order + y.order,
        meta={"source": (x, y), "costs": costs},
    )


@dataclass(frozen=True)
class EditOperation:
    kind: str  # "substitute" | "delete" | "insert"
    source: Optional[tuple[int, ...]]
    target: Optional[tuple[int, ...]]
    before: object
    after: object
    cost: Fraction

    def __str__(self):
        def fmt(idx, attr):
            from .io import format_attribute

            return f"{'-'.join(map(str, idx))}[{format_attribute(attr) if attr is not VOID else 'void'}]"

        if self.kind == "substitute":
            body = f"{fmt(self.source, self.before)} -> {fmt(self.target, self.after)}"
        elif self.kind == "delete":
            body = fmt(self.source, self.before)
        else:
            body = fmt(self.target, self.after)
        return f"{self.kind} {body} cost {self.cost.numerator}/{self.cost.denominator}"


@dataclass(frozen=True)
class EditScript:
    operations: tuple[EditOperation, ...]
    target_order: int

    @property
    def total(self) -> Fraction:
        return sum((op.cost for op in self.operations), Fraction(0))

    def apply(self, x: AttributedGraph) -> AttributedGraph:
        """Replay the script on ``x``; returns the graph it produces.

        Raises :class:`InputError` if an operation's source attribute does not
        match ``x`` or if some target vertex is never produced.
        """
        m = self.target_order
        out = [[VOID] * m for _ in range(m)]
        produced = set()
        for op in self.operations:
            if op.source is not None:
                src = op.source * 2 if len(op.source) == 1 else op.source
                if x[src] != op.before:
                    raise InputError(f"{op} does not match the source graph")
            if op.kind == "delete":
                continue
            tgt = op.target
            if len(tgt) == 1:
                out[tgt[0]][tgt[0]] = op.after
                produced.add(tgt[0])
            else:
                r, s = tgt
                out[r][s] = out[s][r] = op.after
        missing = set(range(m)) - produced
        if missing:
            raise InputError(f"script never produces target vertices {sorted(missing)}")
        return AttributedGraph(out)


def decode_edit_script(x: AttributedGraph, y: AttributedGraph, phi: PartialMorphism, costs: EditCostModel) -> EditScript:
    """Edit operations realised by a partial monomorphism ``x -> y``.

    Vertices always appear. Vertex pairs appear when one side is an edge or
    the operation costs something, so the script total equals the edit cost.
    """
    ops = []
    dom = set(phi.domain)
    rng = phi.range
    for i in range(x.order):
        if i in dom:
            r = phi(i)
            ops.append(EditOperation("substitute", (i,), (r,), x[i, i], y[r, r],
                                     costs.substitution_cost(x, (i, i), y, (r, r))))
        else:
            ops.append(EditOperation("delete", (i,), None, x[i, i], None, costs.deletion_cost(x, (i, i))))
    for r in range(y.order):
        if r not in rng:
            ops.append(EditOperation("insert", None, (r,), None, y[r, r], costs.insertion_cost(y, (r, r))))
    for i in range(x.order):
        for j in range(i + 1, x.order):
            if i in dom and j in dom:
                r, s = phi(i), phi(j)
                c = costs.substitution_cost(x, (i, j), y, (r, s)) + costs.substitution_cost(x, (j, i), y, (s, r))
                if x.has_edge(i, j) or y.has_edge(r, s) or c:
                    ops.append(EditOperation("substitute", (i, j), (r, s), x[i, j], y[r, s], c))
            else:
                c = costs.deletion_cost(x, (i, j)) + costs.deletion_cost(x, (j, i))
                if x.has_edge(i, j) or c:
                    ops.append(EditOperation("delete", (i, j), None, x[i, j], None, c))
    for r in range(y.order):
        for s in range(r + 1, y.order):
            if not (r in rng and s in rng):
                c = costs.insertion_cost(y, (r, s)) + costs.insertion_cost(y, (s, r))
                if y.has_edge(r, s) or c:
                    ops.append(EditOperation("insert", None, (r, s), None, y[r, s], c))
    return EditScript(tuple(ops), y.order)


@dataclass(frozen=True, eq=False)
class EditDistanceResult:
    distance: Fraction
    optimal: bool
    morphism: PartialMorphism  # partial monomorphism X -> Y
    extended: Optional[PartialMorphism]  # total bijection X' -> Y', if found
    script: EditScript
    solution: CliqueSolution


def edit_distance(
    x: AttributedGraph,
    y: AttributedGraph,
    costs: EditCostModel,
    cfg: Optional[SolveConfig] = None,
) -> EditDistanceResult:
    """Graph edit distance via cardinality-constrained clique search.

    If the solver budget runs out the best bijection found so far (or the
    delete-everything/insert-everything matching) gives an upper bound and
    the result is flagged non-optimal.
    """
    problem = edit_distance_problem(x, y, costs)
    if cfg is None:
        cfg = SolveConfig(cardinality=problem.cardinality)
    else:
        cfg = SolveConfig(cfg.mode, problem.cardinality, cfg.node_limit, cfg.time_limit,
                          cfg.seed, cfg.restarts, cfg.workers)
    result = problem.solve(cfg)
    n, m = x.order, y.order
    if result.morphism is None:
        phi = PartialMorphism.empty(n, m)
        extended = None
        distance = edit_cost(x, y, phi, costs)
        optimal = False
    else:
        extended = result.morphism
        phi = PartialMorphism._trusted(
            n, m, tuple(r if r < m else None for r in extended.images[:n])
        )
        distance = -result.value
        optimal = result.optimal
    script = decode_edit_script(x, y, phi, costs)
    return EditDistanceResult(distance, optimal, phi, extended, script, result.solution)
