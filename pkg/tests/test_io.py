from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliquematch.association import build_association
from cliquematch.errors import FormatError, InputError
from cliquematch.generate import random_clique_instance, random_costs, random_graph, random_kappa_table, rng_for
from cliquematch.graph import DUMMY, NULL_COLOR, dummy_extension, null_extension
from cliquematch.io import (
    format_attribute,
    parse_attribute,
    parse_costs,
    parse_fraction,
    parse_graph,
    parse_instance,
    parse_kappa_table,
    parse_provenance,
    parse_relation,
    serialize_costs,
    serialize_graph,
    serialize_instance,
    serialize_kappa_table,
    serialize_provenance,
    serialize_relation,
)
from cliquematch.morphism import standard_property
from cliquematch.problems import EditCostModel, mcisp_kappa


def test_graph_text(p2):
    text = serialize_graph(p2)
    assert text == "cliquematch-graph 1\norder 2\nv 0 sym:a\nv 1 sym:a\ne 0 1 sym:e\n"
    assert parse_graph(text) == p2


def test_attribute_literals():
    for a in ["a", "two words", "50%", "é", Fraction(-3, 4), Fraction(2), DUMMY, NULL_COLOR]:
        text = format_attribute(a)
        assert " " not in text
        assert parse_attribute(text) == a
    with pytest.raises(FormatError):
        parse_attribute("plain")
    with pytest.raises(FormatError):
        parse_attribute("num:0.5")
    with pytest.raises(FormatError):
        parse_attribute("sym:%41")  # non-canonical spelling of "A"


def test_fractions_are_decimal_free():
    assert parse_fraction("3/6") == Fraction(1, 2)
    assert parse_fraction("-4") == -4
    for bad in ("1.5", "1/0", "", "1e3", "1//2"):
        with pytest.raises(FormatError):
            parse_fraction(bad)


def test_parse_errors_carry_line_numbers():
    text = "cliquematch-graph 1\norder 2\nv 0 sym:a\n\nv 1 bogus\n"
    with pytest.raises(FormatError) as exc:
        parse_graph(text, "g.txt")
    assert exc.value.line == 5
    assert "g.txt:5:" in str(exc.value)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "cliquematch-graph 2\norder 0\n",
        "cliquematch-clique 1\n",
        "cliquematch-graph 1\norder 2\nv 0 sym:a\n",
        "cliquematch-graph 1\norder 1\nv 0 sym:a\nv 0 sym:a\n",
        "cliquematch-graph 1\norder 2\nv 0 sym:a\nv 1 sym:a\ne 0 0 sym:e\n",
        "cliquematch-graph 1\norder 2\nv 0 sym:a\nv 1 sym:a\ne 0 5 sym:e\n",
        "cliquematch-graph 1\norder x\n",
    ],
)
def test_malformed_graphs(text):
    with pytest.raises(FormatError):
        parse_graph(text)


def test_instance_and_provenance(p2):
    z = build_association(p2, p2, standard_property("iso", p2, p2), mcisp_kappa(p2, p2))
    text = serialize_instance(z.instance)
    assert parse_instance(text) == z.instance
    assert serialize_instance(parse_instance(text)) == text
    n, m, pairs = parse_provenance(serialize_provenance(z))
    assert (n, m, pairs) == (2, 2, z.pairs)


def test_costs_round_trip():
    costs = EditCostModel.unit(non_edge=Fraction(1, 3))
    over = EditCostModel(costs.delete, costs.insert, costs.substitute, {("a", "b"): Fraction(1, 2)})
    for c in (costs, over):
        text = serialize_costs(c)
        assert parse_costs(text) == c
        assert serialize_costs(parse_costs(text)) == text
    with pytest.raises(FormatError):
        parse_costs("cliquematch-costs 1\ndel vertex -1\n")
    with pytest.raises(FormatError):
        parse_costs("cliquematch-costs 1\ndel vertex 1\ndel vertex 2\n")


def test_kappa_and_relation_round_trip(p2, p3):
    kappa = random_kappa_table(rng_for(4, "io"), p2, p3)
    text = serialize_kappa_table(kappa)
    again = parse_kappa_table(text, p2, p3)
    assert again.table == {k: v for k, v in kappa.table.items() if v}
    assert serialize_kappa_table(again) == text
    rel = standard_property("mono", p2, p3)
    text = serialize_relation(rel)
    assert parse_relation(text, p2, p3).pairs() == rel.pairs()
    with pytest.raises(FormatError):
        parse_kappa_table("cliquematch-kappa 1\nk 0 0 9 9 1\n", p2, p3)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_random_round_trips(seed):
    rng = rng_for(seed, "rt-io")
    g = random_graph(rng, rng.randint(0, 6), 3, 3, rng.random())
    if rng.random() < 0.5:
        g = dummy_extension(g, rng.randint(0, 2))
    else:
        g = null_extension(g)
    text = serialize_graph(g)
    assert parse_graph(text) == g and serialize_graph(parse_graph(text)) == text
    inst = random_clique_instance(rng, rng.randint(0, 8), rng.random())
    text = serialize_instance(inst)
    assert parse_instance(text) == inst and serialize_instance(parse_instance(text)) == text
    costs = random_costs(rng)
    assert parse_costs(serialize_costs(costs)) == costs


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=200))
def test_fuzzed_text_never_crashes(text):
    for parser in (parse_graph, parse_instance, parse_costs, parse_provenance):
        try:
            parser(text)
        except InputError:
            pass


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 200), st.text(alphabet="0123456789 -/:sym#\nevwn", max_size=6))
def test_mutated_documents_fail_cleanly(seed, pos, junk):
    g = random_graph(rng_for(seed, "mut"), 3, 2, 2, 0.5)
    text = serialize_graph(g)
    pos = pos % (len(text) + 1)
    mutated = text[:pos] + junk + text[pos:]
    try:
        parse_graph(mutated)
    except InputError:
        pass
