from fractions import Fraction

import pytest

from cliquematch.errors import InputError
from cliquematch.graph import (
    DUMMY,
    NULL_COLOR,
    VOID,
    AttributedGraph,
    ItemType,
    as_attribute,
    complete_graph,
    dummy_extension,
    empty_graph,
    induced_subgraph,
    item_type,
    null_extension,
    path_graph,
    relabel,
)


def test_item_types(vertex_a, p2, p3):
    assert item_type(vertex_a, (0, 0)) is ItemType.VERTEX
    assert item_type(p2, (0, 1)) is ItemType.EDGE
    assert item_type(p3, (0, 2)) is ItemType.NON_EDGE
    with pytest.raises(InputError):
        item_type(p2, (0, 2))


def test_attributes_are_exact():
    assert as_attribute(3) == Fraction(3)
    for bad in (0.5, True, "", None):
        with pytest.raises(InputError):
            as_attribute(bad)


def test_matrix_validation():
    with pytest.raises(InputError):
        AttributedGraph([["a", "e"], [VOID, "a"]])
    with pytest.raises(InputError):
        AttributedGraph([[VOID]])
    with pytest.raises(InputError):
        AttributedGraph([["a", VOID]])
    with pytest.raises(InputError):
        AttributedGraph.from_edges(["a"], {(0, 0): "e"})


def test_induced_subgraph(k3, p3):
    sub, index = induced_subgraph(k3, {0, 1})
    assert sub == path_graph(2)
    assert index == (0, 1)
    assert induced_subgraph(p3, set())[0].order == 0
    iso, _ = induced_subgraph(p3, {0, 2})
    assert iso.edge_count == 0 and iso.order == 2


def test_dummy_extension(p2, vertex_a):
    assert dummy_extension(p2, 0) == p2
    g = dummy_extension(vertex_a, 1)
    assert g.order == 2 and g[1, 1] is DUMMY and g[0, 1] is DUMMY
    e = dummy_extension(empty_graph(), 2)
    assert e.matrix == ((DUMMY, DUMMY), (DUMMY, DUMMY))


def test_null_extension(p2, k3):
    e = null_extension(empty_graph())
    assert e.order == 1 and e[0, 0] is NULL_COLOR
    g = null_extension(p2)
    assert g.order == 3 and g.edge_count == p2.edge_count and g[2, 2] is NULL_COLOR
    h = null_extension(k3)
    assert (h.order, h.edge_count) == (4, 3)


def test_items_are_ordered_pairs(p2):
    assert list(p2.items()) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(list(complete_graph(3).items())) == 9


def test_relabel_roundtrip(p3):
    g = relabel(p3, [2, 0, 1])
    assert g.edge_count == 2
    assert g != p3
    back = relabel(g, [1, 2, 0])
    assert back == p3
    assert hash(back) == hash(p3)
