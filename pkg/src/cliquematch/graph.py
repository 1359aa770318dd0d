"""Attributed undirected graphs and the item vocabulary built on them.

A graph of order ``n`` is stored as a full ``n x n`` attribute matrix. The
diagonal holds vertex attributes, off-diagonal entries hold edge attributes,
and non-edges carry the :data:`VOID` sentinel. Items are *ordered* vertex
pairs, so ``(i, j)`` and ``(j, i)`` are distinct items with equal attributes.

Attributes are a closed union:

* ``str`` -- a symbol (interned),
* :class:`fractions.Fraction` -- an exact number (``int`` input is promoted),
* :class:`Special` -- one of :data:`VOID`, :data:`DUMMY`, :data:`NULL_COLOR`.

Equality is exact; there is no tolerance anywhere.
"""

from __future__ import annotations

import enum
import sys
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Union

from .errors import InputError


class Special(enum.Enum):
    VOID = "void"
    DUMMY = "dummy"
    NULL_COLOR = "nullcolor"

    def __repr__(self):
        return f"<{self.value}>"


VOID = Special.VOID
DUMMY = Special.DUMMY
NULL_COLOR = Special.NULL_COLOR

Attribute = Union[str, Fraction, Special]


def as_attribute(value) -> Attribute:
    """Normalise ``value`` to an :data:`Attribute`.

    Floats are rejected: they would make the exactness predicates depend on
    rounding. Pass a :class:`~fractions.Fraction` or a decimal string instead.
    """
    if isinstance(value, Special):
        return value
    if isinstance(value, bool):
        raise InputError(f"booleans are not attributes: {value!r}")
    if isinstance(value, str):
        if not value:
            raise InputError("empty symbol")
        return sys.intern(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise InputError(f"unsupported attribute {value!r} ({type(value).__name__})")


class ItemType(enum.Enum):
    VERTEX = "vertex"
    EDGE = "edge"
    NON_EDGE = "nonedge"


class Item(NamedTuple):
    i: int
    j: int


class AttributedGraph:
    """Immutable undirected attributed graph without loops.

    >>> g = AttributedGraph.from_edges(["a", "a"], {(0, 1): "e"})
    >>> g.order, g.edge_count
    (2, 1)
    >>> g[0, 1] == g[1, 0] == "e"
    True
    """

    __slots__ = ("_x", "_hash")

    def __init__(self, matrix: Iterable[Iterable]):
        rows = tuple(tuple(as_attribute(a) for a in row) for row in matrix)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise InputError(f"row {i} has {len(row)} entries, expected {n}")
        for i in range(n):
            if rows[i][i] is VOID:
                raise InputError(f"vertex {i} carries the void attribute")
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise InputError(
                        f"asymmetric attributes at ({i}, {j}): "
                        f"{rows[i][j]!r} != {rows[j][i]!r}"
                    )
        self._x = rows
        self._hash = None

    @classmethod
    def from_edges(
        cls,
        vertex_attrs: Iterable,
        edges: Mapping[tuple[int, int], object] | Iterable[tuple[int, int, object]] = (),
    ) -> "AttributedGraph":
        """Build a graph from vertex attributes and an edge list or mapping."""
        vertex_attrs = list(vertex_attrs)
        n = len(vertex_attrs)
        m = [[VOID] * n for _ in range(n)]
        for i, a in enumerate(vertex_attrs):
            m[i][i] = a
        triples = edges.items() if isinstance(edges, Mapping) else edges
        for entry in triples:
            if isinstance(edges, Mapping):
                (i, j), a = entry
            else:
                i, j, a = entry
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"edge ({i}, {j}) out of range for order {n}")
            if i == j:
                raise InputError(f"loop at vertex {i}")
            a = as_attribute(a)
            if a is VOID:
                raise InputError(f"edge ({i}, {j}) carries the void attribute")
            if m[i][j] is not VOID and m[i][j] != a:
                raise InputError(f"conflicting attributes for edge ({i}, {j})")
            m[i][j] = m[j][i] = a
        return cls(m)

    @property
    def order(self) -> int:
        return len(self._x)

    n = order

    def __len__(self):
        return len(self._x)

    def __getitem__(self, item) -> Attribute:
        i, j = item
        return self._x[i][j]

    @property
    def matrix(self) -> tuple[tuple[Attribute, ...], ...]:
        return self._x

    def vertex_attr(self, i: int) -> Attribute:
        return self._x[i][i]

    def vertices(self) -> range:
        return range(len(self._x))

    def items(self) -> Iterable[Item]:
        """All ordered items ``V x V`` in row-major order."""
        n = len(self._x)
        return (Item(i, j) for i in range(n) for j in range(n))

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and self._x[i][j] is not VOID

    def edges(self) -> list[tuple[int, int, Attribute]]:
        """Undirected edges as ``(i, j, attr)`` with ``i < j``, sorted."""
        n = len(self._x)
        return [
            (i, j, self._x[i][j])
            for i in range(n)
            for j in range(i + 1, n)
            if self._x[i][j] is not VOID
        ]

    @property
    def edge_count(self) -> int:
        return len(self.edges())

    def __eq__(self, other):
        if not isinstance(other, AttributedGraph):
            return NotImplemented
        return self._x == other._x

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._x)
        return self._hash

    def __repr__(self):
        verts = [self._x[i][i] for i in range(len(self._x))]
        return f"AttributedGraph(vertices={verts!r}, edges={self.edges()!r})"


def _check_index(g: AttributedGraph, v: int, what: str = "vertex"):
    if not isinstance(v, int) or not 0 <= v < g.order:
        raise InputError(f"{what} index {v!r} out of range for order {g.order}")


def item_type(g: AttributedGraph, it) -> ItemType:
    i, j = it
    _check_index(g, i)
    _check_index(g, j)
    if i == j:
        return ItemType.VERTEX
    return ItemType.EDGE if g[i, j] is not VOID else ItemType.NON_EDGE


def induced_subgraph(g: AttributedGraph, vertices) -> tuple[AttributedGraph, tuple[int, ...]]:
    """Subgraph induced by ``vertices``.

    Returns the subgraph and the index map: position ``k`` of the new graph
    corresponds to vertex ``index_map[k]`` of ``g``. Order is preserved.
    """
    keep = sorted(set(vertices))
    for v in keep:
        _check_index(g, v)
    sub = AttributedGraph([[g[a, b] for b in keep] for a in keep])
    return sub, tuple(keep)


def dummy_extension(g: AttributedGraph, k: int) -> AttributedGraph:
    """Append ``k`` dummy vertices joined to every other vertex by dummy edges.

    Original vertices keep indices ``0..n-1``; dummies get ``n..n+k-1``.
    """
    if k < 0:
        raise InputError(f"negative dummy count {k}")
    n = g.order
    total = n + k
    m = [[VOID] * total for _ in range(total)]
    for i in range(n):
        for j in range(n):
            m[i][j] = g[i, j]
    for d in range(n, total):
        for v in range(total):
            m[d][v] = m[v][d] = DUMMY
    return AttributedGraph(m)


def null_extension(g: AttributedGraph) -> AttributedGraph:
    """Append one isolated vertex carrying :data:`NULL_COLOR` (index ``n``)."""
    n = g.order
    m = [list(row) + [VOID] for row in g.matrix]
    m.append([VOID] * n + [NULL_COLOR])
    return AttributedGraph(m)


def empty_graph() -> AttributedGraph:
    return AttributedGraph([])


def path_graph(n: int, vertex_attr="a", edge_attr="e") -> AttributedGraph:
    return AttributedGraph.from_edges([vertex_attr] * n, [(i, i + 1, edge_attr) for i in range(n - 1)])


def complete_graph(n: int, vertex_attr="a", edge_attr="e") -> AttributedGraph:
    return AttributedGraph.from_edges(
        [vertex_attr] * n, [(i, j, edge_attr) for i in range(n) for j in range(i + 1, n)]
    )


def relabel(g: AttributedGraph, perm) -> AttributedGraph:
    """Return the graph with vertex ``v`` moved to position ``perm[v]``."""
    perm = list(perm)
    n = g.order
    if sorted(perm) != list(range(n)):
        raise InputError(f"not a permutation of range({n}): {perm}")
    m = [[VOID] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            m[perm[i]][perm[j]] = g[i, j]
    return AttributedGraph(m)
