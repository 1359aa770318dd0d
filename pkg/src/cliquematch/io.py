"""Versioned line-oriented text formats.

Every document starts with a ``<format-tag> <version>`` header. Blank lines
and lines starting with ``#`` are ignored. Rationals are written ``p/q`` with
no decimals. Attributes are tagged literals:

``sym:<percent-encoded text>``, ``num:p/q``, ``dummy``, ``nullcolor``.

Serializers emit one canonical text per object, so ``parse`` and
``serialize`` are inverse on canonical documents.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Optional
from urllib.parse import quote, unquote

from .association import AssociationGraph, CompatibilityFunction
from .errors import FormatError, InputError
from .graph import DUMMY, NULL_COLOR, VOID, AttributedGraph, Item, ItemType, Special, as_attribute
from .morphism import ItemPairRelation
from .mwcp import CliqueInstance

GRAPH_TAG = "cliquematch-graph"
CLIQUE_TAG = "cliquematch-clique"
PROVENANCE_TAG = "cliquematch-provenance"
COSTS_TAG = "cliquematch-costs"
KAPPA_TAG = "cliquematch-kappa"
RELATION_TAG = "cliquematch-relation"
REPORT_TAG = "cliquematch-report"
VERSION = 1

_RATIONAL = re.compile(r"-?[0-9]+(/[0-9]+)?")
_INDEX = re.compile(r"[0-9]+")


def format_fraction(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_fraction(text: str, line=None, source=None) -> Fraction:
    """Parse ``p/q`` or an integer; decimals are rejected."""
    if not _RATIONAL.fullmatch(text):
        raise FormatError(f"expected a rational p/q, got {text!r}", line, source)
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise FormatError(f"zero denominator in {text!r}", line, source)
    return Fraction(int(num), int(den) if den else 1)


def format_attribute(a) -> str:
    if isinstance(a, Special):
        if a is VOID:
            raise InputError("the void attribute is never written explicitly")
        return a.value
    if isinstance(a, Fraction):
        return "num:" + format_fraction(a)
    return "sym:" + quote(a, safe="")


def parse_attribute(text: str, line=None, source=None):
    if text == DUMMY.value:
        return DUMMY
    if text == NULL_COLOR.value:
        return NULL_COLOR
    tag, sep, body = text.partition(":")
    if not sep:
        raise FormatError(f"untagged attribute {text!r}", line, source)
    if tag == "num":
        return parse_fraction(body, line, source)
    if tag == "sym":
        if not body:
            raise FormatError("empty symbol", line, source)
        try:
            sym = unquote(body, errors="strict")
        except UnicodeDecodeError:
            raise FormatError(f"bad percent-encoding in {text!r}", line, source) from None
        if quote(sym, safe="") != body:
            raise FormatError(f"non-canonical symbol encoding {text!r}", line, source)
        return as_attribute(sym)
    raise FormatError(f"unknown attribute tag {tag!r}", line, source)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield no, s.split()


def _header(rows, tag, source):
    try:
        no, words = next(rows)
    except StopIteration:
        raise FormatError(f"empty document, expected '{tag} {VERSION}'", None, source) from None
    if len(words) != 2 or words[0] != tag:
        raise FormatError(f"expected header '{tag} {VERSION}'", no, source)
    if words[1] != str(VERSION):
        raise FormatError(f"unsupported {tag} version {words[1]!r}", no, source)


def _index(text, limit, line, source, what="vertex"):
    if not _INDEX.fullmatch(text):
        raise FormatError(f"bad {what} index {text!r}", line, source)
    v = int(text)
    if limit is not None and v >= limit:
        raise FormatError(f"{what} index {v} out of range (< {limit})", line, source)
    return v


def _expect(words, count, line, source):
    if len(words) != count:
        raise FormatError(f"expected {count} fields, got {len(words)}", line, source)


def _count_line(rows, key, source):
    try:
        no, words = next(rows)
    except StopIteration:
        raise FormatError(f"missing '{key}' line", None, source) from None
    if words[0] != key:
        raise FormatError(f"expected '{key} <count>'", no, source)
    _expect(words, 2, no, source)
    return _index(words[1], None, no, source, "count")


# graphs


def serialize_graph(g: AttributedGraph) -> str:
    out = [f"{GRAPH_TAG} {VERSION}", f"order {g.order}"]
    for i in range(g.order):
        out.append(f"v {i} {format_attribute(g[i, i])}")
    for i, j, a in g.edges():
        out.append(f"e {i} {j} {format_attribute(a)}")
    return "\n".join(out) + "\n"


def parse_graph(text: str, source: Optional[str] = None) -> AttributedGraph:
    rows = _lines(text)
    _header(rows, GRAPH_TAG, source)
    n = _count_line(rows, "order", source)
    vattrs = [None] * n
    edges = {}
    for no, words in rows:
        kind = words[0]
        if kind == "v":
            _expect(words, 3, no, source)
            i = _index(words[1], n, no, source)
            if vattrs[i] is not None:
                raise FormatError(f"vertex {i} defined twice", no, source)
            vattrs[i] = parse_attribute(words[2], no, source)
        elif kind == "e":
            _expect(words, 4, no, source)
            i = _index(words[1], n, no, source)
            j = _index(words[2], n, no, source)
            if i == j:
                raise FormatError(f"loop at vertex {i}", no, source)
            key = (min(i, j), max(i, j))
            if key in edges:
                raise FormatError(f"edge {key} defined twice", no, source)
            edges[key] = parse_attribute(words[3], no, source)
        else:
            raise FormatError(f"unknown record {kind!r}", no, source)
    missing = [i for i, a in enumerate(vattrs) if a is None]
    if missing:
        raise FormatError(f"vertices without attributes: {missing}", None, source)
    try:
        return AttributedGraph.from_edges(vattrs, edges)
    except FormatError:
        raise
    except InputError as exc:
        raise FormatError(str(exc), None, source) from None


# clique instances


def serialize_instance(inst: CliqueInstance) -> str:
    out = [f"{CLIQUE_TAG} {VERSION}", f"n {inst.n}"]
    for v, w in enumerate(inst.weights):
        out.append(f"w {v} {format_fraction(w)}")
    for (u, v), w in inst.edges.items():
        out.append(f"e {u} {v} {format_fraction(w)}")
    return "\n".join(out) + "\n"


def parse_instance(text: str, source: Optional[str] = None) -> CliqueInstance:
    rows = _lines(text)
    _header(rows, CLIQUE_TAG, source)
    n = _count_line(rows, "n", source)
    weights = [None] * n
    edges = {}
    for no, words in rows:
        kind = words[0]
        if kind == "w":
            _expect(words, 3, no, source)
            v = _index(words[1], n, no, source)
            if weights[v] is not None:
                raise FormatError(f"weight of vertex {v} given twice", no, source)
            weights[v] = parse_fraction(words[2], no, source)
        elif kind == "e":
            _expect(words, 4, no, source)
            u = _index(words[1], n, no, source)
            v = _index(words[2], n, no, source)
            if u == v:
                raise FormatError(f"loop at vertex {u}", no, source)
            key = (min(u, v), max(u, v))
            if key in edges:
                raise FormatError(f"edge {key} given twice", no, source)
            edges[key] = parse_fraction(words[3], no, source)
        else:
            raise FormatError(f"unknown record {kind!r}", no, source)
    missing = [v for v, w in enumerate(weights) if w is None]
    if missing:
        raise FormatError(f"vertices without weights: {missing}", None, source)
    return CliqueInstance(weights, edges)


# provenance sidecar: association vertex -> (i, r)


def serialize_provenance(z: AssociationGraph) -> str:
    out = [f"{PROVENANCE_TAG} {VERSION}", f"source-order {z.x.order}", f"target-order {z.y.order}"]
    for v, (i, r) in enumerate(z.pairs):
        out.append(f"p {v} {i} {r}")
    return "\n".join(out) + "\n"


def parse_provenance(text: str, source: Optional[str] = None) -> tuple[int, int, tuple]:
    """Returns ``(source order, target order, pairs)``."""
    rows = _lines(text)
    _header(rows, PROVENANCE_TAG, source)
    n = _count_line(rows, "source-order", source)
    m = _count_line(rows, "target-order", source)
    pairs = []
    for no, words in rows:
        if words[0] != "p":
            raise FormatError(f"unknown record {words[0]!r}", no, source)
        _expect(words, 4, no, source)
        v = _index(words[1], None, no, source)
        if v != len(pairs):
            raise FormatError(f"expected vertex {len(pairs)}, got {v}", no, source)
        pair = (_index(words[2], n, no, source), _index(words[3], m, no, source))
        if pairs and pair <= pairs[-1]:
            raise FormatError("pairs must be strictly increasing", no, source)
        pairs.append(pair)
    return n, m, tuple(pairs)


# edit cost models


def serialize_costs(costs) -> str:
    out = [f"{COSTS_TAG} {VERSION}"]
    for t in ItemType:
        if t in costs.delete:
            out.append(f"del {t.value} {format_fraction(costs.delete[t])}")
    for t in ItemType:
        if t in costs.insert:
            out.append(f"ins {t.value} {format_fraction(costs.insert[t])}")
    for tx in ItemType:
        for ty in ItemType:
            if (tx, ty) in costs.substitute:
                same, diff = costs.substitute[tx, ty]
                out.append(f"sub {tx.value} {ty.value} {format_fraction(same)} {format_fraction(diff)}")
    for (ax, ay), v in sorted(costs.overrides.items(), key=lambda kv: (format_attribute(kv[0][0]), format_attribute(kv[0][1]))):
        out.append(f"subattr {format_attribute(ax)} {format_attribute(ay)} {format_fraction(v)}")
    return "\n".join(out) + "\n"


def _item_type(text, line, source):
    try:
        return ItemType(text)
    except ValueError:
        raise FormatError(f"unknown item type {text!r}", line, source) from None


def parse_costs(text: str, source: Optional[str] = None):
    from .problems import EditCostModel

    rows = _lines(text)
    _header(rows, COSTS_TAG, source)
    delete, insert, sub, over = {}, {}, {}, {}

    def put(table, key, value, no):
        if key in table:
            raise FormatError(f"duplicate cost entry {key}", no, source)
        table[key] = value

    for no, words in rows:
        kind = words[0]
        if kind in ("del", "ins"):
            _expect(words, 3, no, source)
            v = parse_fraction(words[2], no, source)
            if v < 0:
                raise FormatError("costs must be nonnegative", no, source)
            put(delete if kind == "del" else insert, _item_type(words[1], no, source), v, no)
        elif kind == "sub":
            _expect(words, 5, no, source)
            same, diff = parse_fraction(words[3], no, source), parse_fraction(words[4], no, source)
            if same < 0 or diff < 0:
                raise FormatError("costs must be nonnegative", no, source)
            key = (_item_type(words[1], no, source), _item_type(words[2], no, source))
            put(sub, key, (same, diff), no)
        elif kind == "subattr":
            _expect(words, 4, no, source)
            ax, ay = parse_attribute(words[1], no, source), parse_attribute(words[2], no, source)
            v = parse_fraction(words[3], no, source)
            if v < 0:
                raise FormatError("costs must be nonnegative", no, source)
            put(over, (ax, ay), v, no)
        else:
            raise FormatError(f"unknown record {kind!r}", no, source)
    return EditCostModel(delete, insert, sub, over)


# compatibility tables and explicit relations


def serialize_kappa_table(kappa: CompatibilityFunction) -> str:
    table = getattr(kappa, "table", None)
    if table is None:
        raise InputError("only table-backed compatibility functions can be written")
    out = [f"{KAPPA_TAG} {VERSION}"]
    for (a, b), v in sorted(table.items()):
        if v and (a, b) <= (Item(a.j, a.i), Item(b.j, b.i)):
            out.append(f"k {a.i} {a.j} {b.i} {b.j} {format_fraction(v)}")
    return "\n".join(out) + "\n"


def parse_kappa_table(text: str, x: AttributedGraph, y: AttributedGraph, source: Optional[str] = None) -> CompatibilityFunction:
    """Unlisted entries are 0; an entry also sets its transpose."""
    rows = _lines(text)
    _header(rows, KAPPA_TAG, source)
    table = {}
    for no, words in rows:
        if words[0] != "k":
            raise FormatError(f"unknown record {words[0]!r}", no, source)
        _expect(words, 6, no, source)
        i, j = (_index(w, x.order, no, source) for w in words[1:3])
        r, s = (_index(w, y.order, no, source) for w in words[3:5])
        key = ((i, j), (r, s))
        if key in table:
            raise FormatError(f"duplicate entry {key}", no, source)
        table[key] = parse_fraction(words[5], no, source)
    try:
        return CompatibilityFunction.from_table(x, y, table, name="table")
    except InputError as exc:
        raise FormatError(str(exc), None, source) from None


def serialize_relation(rel: ItemPairRelation) -> str:
    out = [f"{RELATION_TAG} {VERSION}"]
    for a, b in sorted(rel.pairs()):
        out.append(f"r {a.i} {a.j} {b.i} {b.j}")
    return "\n".join(out) + "\n"


def parse_relation(text: str, x: AttributedGraph, y: AttributedGraph, source: Optional[str] = None) -> ItemPairRelation:
    rows = _lines(text)
    _header(rows, RELATION_TAG, source)
    pairs = []
    for no, words in rows:
        if words[0] != "r":
            raise FormatError(f"unknown record {words[0]!r}", no, source)
        _expect(words, 5, no, source)
        i, j = (_index(w, x.order, no, source) for w in words[1:3])
        r, s = (_index(w, y.order, no, source) for w in words[3:5])
        pairs.append(((i, j), (r, s)))
    return ItemPairRelation.from_pairs(x, y, pairs, "explicit")


def read_text(path) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except UnicodeDecodeError as exc:
        raise FormatError(f"not UTF-8 text: {exc}", None, str(path)) from None


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def pairs_label(pairs: Iterable) -> str:
    """``{00,11}`` style label for vertex pairs."""
    return "{" + ",".join(f"{i}{r}" if i < 10 and r < 10 else f"{i}:{r}" for i, r in pairs) + "}"
