"""Metric graph data model: vertices with boundary conditions, integer-length
edges and leads (semi-infinite edges), plus per-vertex scattering amplitudes.

Lengths are integer multiples of a unit length, so the bond phase on an edge
of ``n`` units at wavenumber ``k`` is ``exp(1j * k * n)``.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BadLength,
    DanglingReference,
    DirichletDegreeMismatch,
    DirichletOnInternalVertex,
    Disconnected,
    DuplicateVertex,
    NoLeads,
    SelfLoop,
    UnknownVertex,
    ValidationError,
)

__all__ = [
    "BoundaryCondition",
    "Vertex",
    "Edge",
    "MetricGraph",
    "VertexAmplitudes",
    "validate",
    "degree",
    "degrees",
    "vertex_amplitudes",
]


class BoundaryCondition(str, enum.Enum):
    NEUMANN = "neumann"
    DIRICHLET = "dirichlet"

    @classmethod
    def parse(cls, value) -> "BoundaryCondition":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown boundary condition {value!r}") from None


NEUMANN = BoundaryCondition.NEUMANN
DIRICHLET = BoundaryCondition.DIRICHLET


@dataclass(frozen=True)
class Vertex:
    id: int
    bc: BoundaryCondition = NEUMANN


@dataclass(frozen=True)
class Edge:
    """Undirected edge. Parallel edges are distinguished by their position
    in ``MetricGraph.edges``."""

    u: int
    v: int
    length: int = 1

    def other(self, w: int) -> int:
        return self.v if w == self.u else self.u


@dataclass(frozen=True)
class MetricGraph:
    """An open metric graph.

    ``leads`` lists the vertex each lead is attached to; the position in the
    tuple is the channel index minus one (channel 1 is ``leads[0]``).
    """

    name: str
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    leads: tuple[int, ...]
    _degree: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "leads", tuple(int(v) for v in self.leads))

    @classmethod
    def build(cls, name, n_vertices, edges, leads, bc=None) -> "MetricGraph":
        """Convenience constructor with vertices ``1..n_vertices``.

        ``edges`` holds ``(u, v)`` or ``(u, v, length)`` tuples; ``bc`` maps
        vertex id to a boundary condition (default Neumann).
        """
        bc = bc or {}
        verts = [Vertex(i, BoundaryCondition.parse(bc.get(i, NEUMANN))) for i in range(1, n_vertices + 1)]
        es = [Edge(*e) for e in edges]
        return cls(name, verts, es, leads)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_channels(self) -> int:
        return len(self.leads)

    def bc(self, v: int) -> BoundaryCondition:
        for vert in self.vertices:
            if vert.id == v:
                return vert.bc
        raise UnknownVertex(v)

    def degrees(self) -> dict[int, int]:
        if self._degree is None:
            deg = {vert.id: 0 for vert in self.vertices}
            for e in self.edges:
                for w in (e.u, e.v):
                    if w in deg:
                        deg[w] += 1
            for w in self.leads:
                if w in deg:
                    deg[w] += 1
            object.__setattr__(self, "_degree", deg)
        return dict(self._degree)

    def with_name(self, name: str) -> "MetricGraph":
        return MetricGraph(name, self.vertices, self.edges, self.leads)


def _violations(graph: MetricGraph):
    out = []
    ids = [vert.id for vert in graph.vertices]
    dup = [i for i, c in Counter(ids).items() if c > 1]
    if dup:
        out.append(DuplicateVertex(f"duplicate vertex ids {sorted(dup)}"))
    idset = set(ids)
    if idset != set(range(1, len(idset) + 1)):
        out.append(DanglingReference(f"vertex ids must be exactly 1..{len(idset)}, got {sorted(idset)}"))

    for n, e in enumerate(graph.edges):
        for w in (e.u, e.v):
            if w not in idset:
                out.append(DanglingReference(f"edge {n} references unknown vertex {w}"))
        if e.u == e.v:
            out.append(SelfLoop(f"edge {n} is a loop at vertex {e.u}"))
        if not isinstance(e.length, int) or isinstance(e.length, bool) or e.length < 1:
            out.append(BadLength(f"edge {n} has length {e.length!r}; need an integer >= 1"))
    for c, w in enumerate(graph.leads, start=1):
        if w not in idset:
            out.append(DanglingReference(f"lead {c} attached to unknown vertex {w}"))
    if not graph.leads:
        out.append(NoLeads("a scattering system needs at least one lead"))

    deg = graph.degrees()
    for vert in graph.vertices:
        d = deg.get(vert.id, 0)
        if d == 0:
            out.append(Disconnected(f"vertex {vert.id} has no edges or leads"))
        elif vert.bc is DIRICHLET and d != 1:
            out.append(DirichletOnInternalVertex(f"vertex {vert.id} has degree {d}; Dirichlet needs degree 1"))

    if idset and not _connected(idset, graph.edges):
        out.append(Disconnected("graph is not connected"))
    return out


def _connected(ids, edges) -> bool:
    adj = {i: [] for i in ids}
    for e in edges:
        if e.u in adj and e.v in adj:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
    start = next(iter(ids))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(ids)


def validate(graph: MetricGraph) -> MetricGraph:
    """Return ``graph`` unchanged if it is a legal scattering system.

    Raises :class:`ValidationError` listing every violated invariant.
    """
    problems = _violations(graph)
    if problems:
        raise ValidationError(problems)
    return graph


def degree(graph: MetricGraph, v: int) -> int:
    """Number of edge ends plus leads at ``v``."""
    deg = graph.degrees()
    if v not in deg:
        raise UnknownVertex(v)
    return deg[v]


def degrees(graph: MetricGraph) -> dict[int, int]:
    return graph.degrees()


@dataclass(frozen=True)
class VertexAmplitudes:
    r: float | Fraction
    t: float | Fraction


def vertex_amplitudes(bc, d: int, exact: bool = False) -> VertexAmplitudes:
    """Reflection and transmission amplitude of a vertex of degree ``d``.

    Neumann: ``r = 2/d - 1, t = 2/d`` for ``d >= 2`` and total reflection
    ``r = 1`` at a dead end. Dirichlet is defined for dead ends only, with
    ``r = -1``. With ``exact=True`` the values are :class:`Fraction`.
    """
    bc = BoundaryCondition.parse(bc)
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    if bc is DIRICHLET:
        if d != 1:
            raise DirichletDegreeMismatch(f"Dirichlet condition needs degree 1, got {d}")
        r, t = Fraction(-1), Fraction(0)
    elif d == 1:
        r, t = Fraction(1), Fraction(0)
    else:
        t = Fraction(2, d)
        r = t - 1
    if exact:
        return VertexAmplitudes(r, t)
    return VertexAmplitudes(float(r), float(t))
