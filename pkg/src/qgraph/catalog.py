"""Fixed graphs shipped as data files, plus the fishbone family.

The ladder-like graphs Q, X, IQ, IX, QQ, XQ, IXI and XX are chains of vertex
pairs between an entrance vertex 1 and an exit vertex 2. Consecutive pairs
are joined either by two parallel rails or by a full K_{2,2} crossing, and a
rung closes every pair that would otherwise have degree 2. Every vertex
ends up with degree 3 once the two leads are counted.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from importlib import resources

from .errors import StructureViolation, UnknownCatalogId
from .families import fishbone
from .graph import DIRICHLET, NEUMANN, MetricGraph
from .io import parse_graph_file

__all__ = [
    "CatalogEntry",
    "CATALOG",
    "QuarantinedGraph",
    "catalog_ids",
    "load_catalog_graph",
    "fishbone",
    "fig1a",
    "DATA_VERSION",
]

DATA_VERSION = "v1"


class QuarantinedGraph(UserWarning):
    """The data file loads but does not reproduce its reference entropy."""


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    n_vertices: int
    n_edges: int
    n_leads: int
    all_degree: int | None  # every lead-inclusive degree, when uniform
    reference_entropy: float | None
    quarantined: str | None = None


CATALOG: dict[str, CatalogEntry] = {
    e.id: e
    for e in [
        CatalogEntry("Q", 6, 8, 2, 3, 0.634882),
        CatalogEntry("X", 6, 8, 2, 3, 0.699852),
        CatalogEntry("IQ", 8, 11, 2, 3, 0.547333),
        CatalogEntry("IX", 8, 11, 2, 3, 0.778697),
        CatalogEntry("QQ", 10, 14, 2, 3, 0.493163),
        CatalogEntry("XQ", 10, 14, 2, 3, 0.572996),
        CatalogEntry("IXI", 10, 14, 2, 3, 0.582336),
        CatalogEntry(
            "XX",
            10,
            14,
            2,
            3,
            0.844156,
            quarantined=(
                "computes 0.841456; among 113 simple connected 10-vertex graphs of this degree type "
                "found by random sampling, none reaches 0.844156 and 0.841456 is the largest "
                "(the reference looks digit-transposed)"
            ),
        ),
    ]
}

_FISHBONE_RE = re.compile(r"^fishbone-(\d+)(-(neumann|dirichlet))?$")
_FIG1A_RE = re.compile(r"^fig1a-n(\d+)$")


def catalog_ids() -> list[str]:
    return list(CATALOG)


def fig1a(n: int) -> MetricGraph:
    """Two degree-3 vertices joined by edges of 1 and ``n - 1`` units, one lead each."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return MetricGraph.build(f"fig1a-n{n}", 2, [(1, 2, 1), (1, 2, n - 1)], [1, 2])


def _read(name: str) -> MetricGraph:
    path = resources.files("qgraph") / "data" / "catalog" / DATA_VERSION / f"{name}.json"
    if not path.is_file():
        raise UnknownCatalogId(name)
    return parse_graph_file(path.read_bytes())


def _check_structure(g: MetricGraph, e: CatalogEntry) -> None:
    problems = []
    if g.n_vertices != e.n_vertices:
        problems.append(f"{g.n_vertices} vertices, expected {e.n_vertices}")
    if g.n_edges != e.n_edges:
        problems.append(f"{g.n_edges} edges, expected {e.n_edges}")
    if g.n_channels != e.n_leads:
        problems.append(f"{g.n_channels} leads, expected {e.n_leads}")
    if any(l != 1 for l in {e.length for e in g.edges}):
        problems.append("non-unit edge length")
    if e.all_degree is not None:
        bad = {v: d for v, d in g.degrees().items() if d != e.all_degree}
        if bad:
            problems.append(f"degrees {bad} differ from {e.all_degree}")
    if problems:
        raise StructureViolation(f"catalog graph {e.id}: " + "; ".join(problems))


def load_catalog_graph(id: str) -> MetricGraph:
    """Load a shipped graph by id.

    Besides the fixed ids in :data:`CATALOG`, accepts ``fishbone-<i>``
    (optionally suffixed ``-dirichlet``) and ``fig1a-n<n>``.
    """
    m = _FISHBONE_RE.match(id)
    if m:
        return fishbone(int(m.group(1)), DIRICHLET if m.group(3) == "dirichlet" else NEUMANN)
    m = _FIG1A_RE.match(id)
    if m:
        return fig1a(int(m.group(1)))
    if id not in CATALOG:
        raise UnknownCatalogId(id)
    entry = CATALOG[id]
    g = _read(id)
    _check_structure(g, entry)
    if entry.quarantined:
        warnings.warn(f"catalog graph {id} is quarantined: {entry.quarantined}", QuarantinedGraph, stacklevel=2)
    return g
