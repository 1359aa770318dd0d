"""Partial morphisms, item-pair properties and p-morphism search spaces.

A property is represented by an :class:`ItemPairRelation`: a deterministic
membership test over ``I(X) x I(Y)``. A partial morphism ``phi`` is a
p-morphism when every ordered item pair it realises, ``gamma(phi)``, lies in
the relation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, NamedTuple, Optional

from .errors import CapacityError, InputError
from .graph import VOID, AttributedGraph, Item

DEFAULT_ENUMERATION_BUDGET = 2_000_000


@dataclass(frozen=True, slots=True)
class PartialMorphism:
    """A vertex map defined on a subset of ``V(X)``.

    ``images[i]`` is the image of source vertex ``i`` or ``None`` when ``i`` is
    outside the domain.
    """

    source_order: int
    target_order: int
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.source_order:
            raise InputError(
                f"images has length {len(self.images)}, expected {self.source_order}"
            )
        for i, r in enumerate(self.images):
            if r is not None and not (isinstance(r, int) and 0 <= r < self.target_order):
                raise InputError(f"image {r!r} of vertex {i} out of range")

    @classmethod
    def from_dict(cls, source_order: int, target_order: int, mapping) -> "PartialMorphism":
        images = [None] * source_order
        for i, r in dict(mapping).items():
            if not (isinstance(i, int) and 0 <= i < source_order):
                raise InputError(f"source vertex {i!r} out of range")
            images[i] = r
        return cls(source_order, target_order, tuple(images))

    @classmethod
    def empty(cls, source_order: int, target_order: int) -> "PartialMorphism":
        return cls(source_order, target_order, (None,) * source_order)

    @classmethod
    def _trusted(cls, source_order, target_order, images):
        obj = object.__new__(cls)
        object.__setattr__(obj, "source_order", source_order)
        object.__setattr__(obj, "target_order", target_order)
        object.__setattr__(obj, "images", images)
        return obj

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.images) if r is not None)

    @property
    def range(self) -> frozenset[int]:
        return frozenset(r for r in self.images if r is not None)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        """``(i, i^phi)`` for the domain in increasing ``i``; the sort key."""
        return tuple((i, r) for i, r in enumerate(self.images) if r is not None)

    def __len__(self):
        return sum(r is not None for r in self.images)

    def __call__(self, i: int) -> int:
        r = self.images[i]
        if r is None:
            raise KeyError(i)
        return r

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def is_injective(self) -> bool:
        imgs = [r for r in self.images if r is not None]
        return len(set(imgs)) == len(imgs)

    def is_total(self) -> bool:
        return all(r is not None for r in self.images)

    def restrict(self, subset) -> "PartialMorphism":
        keep = set(subset)
        return PartialMorphism._trusted(
            self.source_order,
            self.target_order,
            tuple(r if i in keep else None for i, r in enumerate(self.images)),
        )

    def __str__(self):
        body = ", ".join(f"{i}->{r}" for i, r in self.pairs)
        return "{" + body + "}"


def morphism_key(phi: PartialMorphism):
    return phi.pairs


def gamma(phi: PartialMorphism) -> frozenset:
    """Ordered item pairs ``((i, j), (i^phi, j^phi))`` over the domain squared."""
    pairs = phi.pairs
    return frozenset(
        (Item(i, j), Item(r, s)) for i, r in pairs for j, s in pairs
    )


class MorphismClass(enum.Enum):
    ALL = "all"
    MONO = "mono"
    HOMO = "homo"
    ISO = "iso"
    SUBGRAPH = "subgraph"


class ItemPairRelation:
    """A property on ``I(X) x I(Y)`` given by a predicate on item pairs.

    Results are memoised, which also pins determinism: a pair is asked once.
    """

    def __init__(
        self,
        x: AttributedGraph,
        y: AttributedGraph,
        predicate: Callable[[Item, Item], bool],
        name: str = "custom",
    ):
        self.x = x
        self.y = y
        self.name = name
        self._predicate = predicate
        self._cache: dict = {}

    @classmethod
    def from_pairs(cls, x, y, pairs: Iterable, name: str = "explicit") -> "ItemPairRelation":
        table = frozenset((Item(*a), Item(*b)) for a, b in pairs)
        for a, b in table:
            for v in a:
                if not 0 <= v < x.order:
                    raise InputError(f"item {tuple(a)} out of range for source graph")
            for v in b:
                if not 0 <= v < y.order:
                    raise InputError(f"item {tuple(b)} out of range for target graph")
        rel = cls(x, y, lambda a, b: (a, b) in table, name)
        rel._explicit = table
        return rel

    def similar(self, a, b) -> bool:
        key = (a[0], a[1], b[0], b[1])
        hit = self._cache.get(key)
        if hit is None:
            hit = bool(self._predicate(Item(a[0], a[1]), Item(b[0], b[1])))
            self._cache[key] = hit
        return hit

    def __contains__(self, pair) -> bool:
        a, b = pair
        return self.similar(a, b)

    def pairs(self) -> frozenset:
        """Materialise the relation over all of ``I(X) x I(Y)``."""
        explicit = getattr(self, "_explicit", None)
        if explicit is not None:
            return explicit
        return frozenset(
            (a, b) for a in self.x.items() for b in self.y.items() if self.similar(a, b)
        )

    def asymmetric_witness(self) -> Optional[tuple[Item, Item]]:
        """A pair ``(a, b)`` in the relation whose transpose is not, if any."""
        for a in self.x.items():
            for b in self.y.items():
                if self.similar(a, b) != self.similar((a.j, a.i), (b.j, b.i)):
                    return (a, b)
        return None

    def __repr__(self):
        return f"ItemPairRelation({self.name!r}, |X|={self.x.order}, |Y|={self.y.order})"


def standard_property(cls: MorphismClass, x: AttributedGraph, y: AttributedGraph) -> ItemPairRelation:
    """The relation whose p-morphisms are exactly the partial morphisms of ``cls``.

    Rules, for ``a = (i, j)`` in ``X`` and ``b = (r, s)`` in ``Y``:

    all       ``i = j  =>  r = s``
    mono      ``i = j <=> r = s``
    homo      all, and edges go to edges with the same attribute
    iso       mono, equal attributes and equal item types
    subgraph  mono, and vertices go to vertices with the same attribute
    """
    cls = MorphismClass(cls)
    X, Y = x.matrix, y.matrix

    def is_all(a, b):
        return a.i != a.j or b.i == b.j

    def is_mono(a, b):
        return (a.i == a.j) == (b.i == b.j)

    if cls is MorphismClass.ALL:
        pred = is_all
    elif cls is MorphismClass.MONO:
        pred = is_mono
    elif cls is MorphismClass.HOMO:

        def pred(a, b):
            if not is_all(a, b):
                return False
            xa = X[a.i][a.j]
            if a.i != a.j and xa is not VOID:
                return b.i != b.j and Y[b.i][b.j] == xa
            return True

    elif cls is MorphismClass.ISO:

        def pred(a, b):
            return is_mono(a, b) and X[a.i][a.j] == Y[b.i][b.j]

    else:

        def pred(a, b):
            if not is_mono(a, b):
                return False
            return a.i != a.j or X[a.i][a.i] == Y[b.i][b.i]

    return ItemPairRelation(x, y, pred, cls.value)


def is_p_morphism(phi: PartialMorphism, rel: ItemPairRelation) -> bool:
    pairs = phi.pairs
    return all(rel.similar((i, j), (r, s)) for i, r in pairs for j, s in pairs)


def _check_budget(x, y, budget):
    count = (y.order + 1) ** x.order
    if count > budget:
        raise CapacityError(
            f"{count} candidate partial mappings exceed the enumeration budget of {budget}",
            bound=budget,
        )


def enumerate_p_morphisms(
    x: AttributedGraph,
    y: AttributedGraph,
    rel: ItemPairRelation,
    max_order: Optional[int] = None,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> Iterator[PartialMorphism]:
    """Yield every p-morphism with at most ``max_order`` domain vertices.

    Output is lexicographic in :attr:`PartialMorphism.pairs` (prefixes first),
    starting with the empty morphism. Since p-morphisms are closed under
    restriction, a depth-first search can abandon any failing prefix.
    """
    _check_budget(x, y, budget)
    n, m = x.order, y.order
    limit = n if max_order is None else max_order
    images = [None] * n
    chosen: list[tuple[int, int]] = []
    similar = rel.similar

    def extend(start):
        yield PartialMorphism._trusted(n, m, tuple(images))
        if len(chosen) >= limit:
            return
        for i in range(start, n):
            for r in range(m):
                if not similar((i, i), (r, r)):
                    continue
                if not all(
                    similar((i, j), (r, s)) and similar((j, i), (s, r)) for j, s in chosen
                ):
                    continue
                images[i] = r
                chosen.append((i, r))
                yield from extend(i + 1)
                chosen.pop()
                images[i] = None

    return extend(0)


class ClosureCheck(NamedTuple):
    closed: bool
    witness: Optional[PartialMorphism]
    # True when the witness is a p-morphism missing from the claimed space,
    # False when it is a claimed member that is not a p-morphism.
    witness_missing: Optional[bool] = None


def verify_closure(
    x: AttributedGraph,
    y: AttributedGraph,
    claimed_space: Iterable[PartialMorphism],
    rel: ItemPairRelation,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> ClosureCheck:
    """Decide whether ``claimed_space`` is exactly the set of p-morphisms.

    On failure the witness is the lexicographically least morphism in the
    symmetric difference.
    """
    claimed = set(claimed_space)
    for phi in claimed:
        if phi.source_order != x.order or phi.target_order != y.order:
            raise InputError(f"morphism {phi} does not map {x.order} -> {y.order} vertices")
    actual = set(enumerate_p_morphisms(x, y, rel, budget=budget))
    diff = claimed ^ actual
    if not diff:
        return ClosureCheck(True, None)
    witness = min(diff, key=morphism_key)
    return ClosureCheck(False, witness, witness in actual)


def generated_relation(x, y, space: Iterable[PartialMorphism], name="generated") -> ItemPairRelation:
    """The smallest relation containing ``gamma(phi)`` for every ``phi`` in ``space``."""
    pairs = set()
    for phi in space:
        pairs |= gamma(phi)
    return ItemPairRelation.from_pairs(x, y, pairs, name)


def morphisms_of_size(x, y, rel, size: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> list[PartialMorphism]:
    """All p-morphisms whose domain has exactly ``size`` vertices."""
    return [phi for phi in enumerate_p_morphisms(x, y, rel, max_order=size, budget=budget) if len(phi) == size]
