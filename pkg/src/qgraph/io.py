"""Strict JSON graph files.

Format::

    {"name": "Q",
     "vertices": [{"id": 1, "bc": "neumann"}, ...],
     "edges": [[u, v, length_units], ...],
     "leads": [vertex, ...]}          # channel order

Unknown keys, duplicate ids, and non-integer or non-positive lengths are
rejected with :class:`ParseError`; structural problems then surface as
:class:`ValidationError` from :func:`qgraph.graph.validate`.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import ParseError
from .graph import BoundaryCondition, Edge, MetricGraph, Vertex, validate

__all__ = ["parse_graph_file", "load_graph", "graph_to_json", "save_graph"]

_TOP_KEYS = {"name", "vertices", "edges", "leads"}
_VERTEX_KEYS = {"id", "bc"}


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _reject_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ParseError(f"duplicate key {k!r}")
        out[k] = v
    return out


def parse_graph_file(data) -> MetricGraph:
    """Parse and validate a graph document given as ``bytes`` or ``str``."""
    if isinstance(data, (bytes, bytearray)):
        try:
            data = bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"graph file is not UTF-8: {exc}") from None
    try:
        doc = json.loads(data, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None

    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")
    extra = set(doc) - _TOP_KEYS
    if extra:
        raise ParseError(f"unknown field(s) {sorted(extra)}")
    missing = _TOP_KEYS - set(doc)
    if missing:
        raise ParseError(f"missing field(s) {sorted(missing)}")
    if not isinstance(doc["name"], str):
        raise ParseError("name: expected a string")

    if not isinstance(doc["vertices"], list):
        raise ParseError("vertices: expected a list")
    vertices, seen = [], set()
    for n, v in enumerate(doc["vertices"]):
        where = f"vertices[{n}]"
        if not isinstance(v, dict):
            raise ParseError(f"{where}: expected an object")
        extra = set(v) - _VERTEX_KEYS
        if extra:
            raise ParseError(f"{where}: unknown field(s) {sorted(extra)}")
        if "id" not in v or not _is_int(v["id"]):
            raise ParseError(f"{where}.id: expected an integer")
        if v["id"] in seen:
            raise ParseError(f"{where}.id: duplicate vertex id {v['id']}")
        seen.add(v["id"])
        try:
            bc = BoundaryCondition.parse(v.get("bc", "neumann"))
        except ValueError as exc:
            raise ParseError(f"{where}.bc: {exc}") from None
        vertices.append(Vertex(v["id"], bc))

    if not isinstance(doc["edges"], list):
        raise ParseError("edges: expected a list")
    edges = []
    for n, e in enumerate(doc["edges"]):
        where = f"edges[{n}]"
        if not isinstance(e, list) or len(e) != 3:
            raise ParseError(f"{where}: expected [u, v, length_units]")
        for j, x in enumerate(e):
            if not _is_int(x):
                raise ParseError(f"{where}[{j}]: expected an integer, got {x!r}")
        if e[2] < 1:
            raise ParseError(f"{where}[2]: length_units must be >= 1, got {e[2]}")
        edges.append(Edge(*e))

    if not isinstance(doc["leads"], list):
        raise ParseError("leads: expected a list")
    for n, w in enumerate(doc["leads"]):
        if not _is_int(w):
            raise ParseError(f"leads[{n}]: expected an integer, got {w!r}")

    return validate(MetricGraph(doc["name"], vertices, edges, doc["leads"]))


def load_graph(path) -> MetricGraph:
    return parse_graph_file(Path(path).read_bytes())


def graph_to_json(graph: MetricGraph) -> str:
    """Canonical serialisation: vertices sorted by id, one edge per line."""
    def block(items):
        return "[\n    " + ",\n    ".join(items) + "\n  ]" if items else "[]"

    verts = [json.dumps({"id": v.id, "bc": v.bc.value}) for v in sorted(graph.vertices, key=lambda v: v.id)]
    edges = [json.dumps([e.u, e.v, e.length]) for e in graph.edges]
    return (
        "{\n"
        f'  "name": {json.dumps(graph.name)},\n'
        f'  "vertices": {block(verts)},\n'
        f'  "edges": {block(edges)},\n'
        f'  "leads": {json.dumps(list(graph.leads))}\n'
        "}\n"
    )


def save_graph(graph: MetricGraph, path) -> None:
    Path(path).write_text(graph_to_json(graph), encoding="utf-8")
