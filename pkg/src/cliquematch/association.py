"""Weighted association graphs and the clique/morphism correspondence.

Given graphs ``X`` and ``Y``, a property (an :class:`ItemPairRelation`) and a
compatibility function ``kappa``, the association graph ``Z`` has a vertex
``(i, r)`` whenever the vertex items ``(i, i)`` and ``(r, r)`` are similar, and
an edge between ``(i, r)`` and ``(j, s)`` whenever both ``(i, j) ~ (r, s)``
and ``(j, i) ~ (s, r)``. Vertex and edge weights are the corresponding
``kappa`` values. Cliques of ``Z`` and p-morphisms correspond one to one, and
clique weight equals the matching objective.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional

from .errors import CapacityError, ContractViolation, InputError
from .graph import AttributedGraph, Item
from .morphism import (
    DEFAULT_ENUMERATION_BUDGET,
    ItemPairRelation,
    PartialMorphism,
    enumerate_p_morphisms,
)
from .mwcp import CliqueInstance, _fraction, clique_weight, enumerate_cliques

DEFAULT_SIZE_CAP = 10_000


class CompatibilityFunction:
    """``kappa``: a rational value for every pair (item of X, item of Y).

    The function must satisfy ``kappa((i, j), (r, s)) == kappa((j, i), (s, r))``;
    :func:`build_association` checks this on every pair it queries.
    """

    def __init__(
        self,
        x: AttributedGraph,
        y: AttributedGraph,
        fn: Callable[[Item, Item], object],
        name: str = "custom",
    ):
        self.x = x
        self.y = y
        self.name = name
        self._fn = fn
        self._cache: dict = {}

    @classmethod
    def from_table(cls, x, y, table: Mapping, default=0, name="table") -> "CompatibilityFunction":
        """Wrap ``{((i, j), (r, s)): value}``; transposed entries are mirrored.

        Raises :class:`InputError` if an entry and its transpose disagree.
        """
        full: dict = {}
        for (a, b), v in table.items():
            a, b = Item(*a), Item(*b)
            v = _fraction(v)
            for key in ((a, b), (Item(a.j, a.i), Item(b.j, b.i))):
                if key in full and full[key] != v:
                    raise InputError(f"asymmetric compatibility at {key}")
                full[key] = v
        default = _fraction(default)
        fn = cls(x, y, lambda a, b: full.get((a, b), default), name)
        fn.table = full
        return fn

    def __call__(self, a, b) -> Fraction:
        key = (a[0], a[1], b[0], b[1])
        hit = self._cache.get(key)
        if hit is None:
            hit = _fraction(self._fn(Item(a[0], a[1]), Item(b[0], b[1])))
            self._cache[key] = hit
        return hit

    def __repr__(self):
        return f"CompatibilityFunction({self.name!r})"


def objective(phi: PartialMorphism, x, y, kappa) -> Fraction:
    """Matching objective: ``kappa`` summed over all ordered items of the domain."""
    pairs = phi.pairs
    total = Fraction(0)
    for i, r in pairs:
        for j, s in pairs:
            total += kappa((i, j), (r, s))
    return total


@dataclass(frozen=True, eq=False)
class AssociationGraph:
    """``Z = X <> Y`` with provenance back to vertex pairs.

    ``pairs[v]`` is the ``(i, r)`` pair behind association vertex ``v``; vertices
    are ordered lexicographically by pair.
    """

    x: AttributedGraph
    y: AttributedGraph
    relation: ItemPairRelation
    kappa: CompatibilityFunction
    pairs: tuple[tuple[int, int], ...]
    instance: CliqueInstance

    @property
    def n(self) -> int:
        return len(self.pairs)

    def index(self, pair) -> Optional[int]:
        return _index_of(self).get(tuple(pair))

    def weight(self, u, v):
        return self.instance.weight(u, v)

    @property
    def edge_count(self) -> int:
        return len(self.instance.edges)


def _index_of(z: AssociationGraph) -> dict:
    idx = z.__dict__.get("_index")
    if idx is None:
        idx = {p: v for v, p in enumerate(z.pairs)}
        object.__setattr__(z, "_index", idx)
    return idx


def build_association(
    x: AttributedGraph,
    y: AttributedGraph,
    rel: ItemPairRelation,
    kappa: CompatibilityFunction,
    cap: int = DEFAULT_SIZE_CAP,
) -> AssociationGraph:
    if x.order * y.order > cap:
        raise CapacityError(
            f"|V(X)|*|V(Y)| = {x.order * y.order} exceeds the association size cap {cap}",
            bound=cap,
        )
    similar = rel.similar
    pairs = [
        (i, r) for i in range(x.order) for r in range(y.order) if similar((i, i), (r, r))
    ]
    weights = [kappa((i, i), (r, r)) for i, r in pairs]
    edges = {}
    for u, (i, r) in enumerate(pairs):
        for v in range(u + 1, len(pairs)):
            j, s = pairs[v]
            if similar((i, j), (r, s)) and similar((j, i), (s, r)):
                k1 = kappa((i, j), (r, s))
                k2 = kappa((j, i), (s, r))
                if k1 != k2:
                    raise InputError(
                        f"compatibility is not symmetric: kappa({(i, j)}, {(r, s)}) = {k1} "
                        f"but kappa({(j, i)}, {(s, r)}) = {k2}"
                    )
                edges[(u, v)] = k1
    return AssociationGraph(x, y, rel, kappa, tuple(pairs), CliqueInstance(weights, edges))


def clique_to_morphism(z: AssociationGraph, clique: Iterable[int]) -> PartialMorphism:
    """``Phi``: read a partial morphism off a clique of ``Z``."""
    vs = list(clique)
    if not z.instance.is_clique(vs):
        raise ContractViolation(f"{sorted(vs)} is not a clique of the association graph")
    images = [None] * z.x.order
    for v in vs:
        i, r = z.pairs[v]
        if images[i] is not None:
            raise ContractViolation(
                f"clique maps source vertex {i} to both {images[i]} and {r}"
            )
        images[i] = r
    return PartialMorphism._trusted(z.x.order, z.y.order, tuple(images))


def morphism_to_clique(z: AssociationGraph, phi: PartialMorphism) -> tuple[int, ...]:
    """``Psi``: the clique ``{(i, i^phi)}``, as sorted association vertex indices."""
    if phi.source_order != z.x.order or phi.target_order != z.y.order:
        raise InputError(f"morphism {phi} does not match the association graph")
    idx = _index_of(z)
    out = []
    for i, r in enumerate(phi.images):
        if r is None:
            continue
        v = idx.get((i, r))
        if v is None:
            raise ContractViolation(
                f"{phi} is not a p-morphism: {(Item(i, i), Item(r, r))} is not similar"
            )
        out.append(v)
    if not z.instance.is_clique(out):
        sim = z.relation.similar
        for i, r in phi.pairs:
            for j, s in phi.pairs:
                if not sim((i, j), (r, s)):
                    raise ContractViolation(
                        f"{phi} is not a p-morphism: {(Item(i, j), Item(r, s))} is not similar"
                    )
        raise ContractViolation(f"{phi} does not map onto a clique")
    return tuple(out)


@dataclass(frozen=True)
class RoundTripReport:
    ok: bool
    cliques_checked: int
    morphisms_checked: int
    failure: Optional[str] = None


def round_trip_check(
    z: AssociationGraph, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> RoundTripReport:
    """Check ``Phi`` and ``Psi`` are mutually inverse and weight preserving.

    Enumerates every clique of ``Z`` and every p-morphism of its relation.
    """
    n_cliques = n_morphisms = 0
    for c in enumerate_cliques(z.instance, budget=budget):
        n_cliques += 1
        try:
            phi = clique_to_morphism(z, c)
            back = morphism_to_clique(z, phi)
        except ContractViolation as exc:
            return RoundTripReport(False, n_cliques, n_morphisms, f"clique {c}: {exc}")
        if back != c:
            return RoundTripReport(False, n_cliques, n_morphisms, f"Psi(Phi({c})) = {back}")
        w = clique_weight(z.instance, c)
        f = objective(phi, z.x, z.y, z.kappa)
        if w != f:
            return RoundTripReport(
                False, n_cliques, n_morphisms, f"clique {c} weighs {w} but f({phi}) = {f}"
            )
    for phi in enumerate_p_morphisms(z.x, z.y, z.relation, budget=budget):
        n_morphisms += 1
        try:
            c = morphism_to_clique(z, phi)
            back = clique_to_morphism(z, c)
        except ContractViolation as exc:
            return RoundTripReport(False, n_cliques, n_morphisms, f"morphism {phi}: {exc}")
        if back != phi:
            return RoundTripReport(False, n_cliques, n_morphisms, f"Phi(Psi({phi})) = {back}")
    if n_cliques != n_morphisms:
        return RoundTripReport(
            False, n_cliques, n_morphisms,
            f"{n_cliques} cliques but {n_morphisms} p-morphisms",
        )
    return RoundTripReport(True, n_cliques, n_morphisms)
