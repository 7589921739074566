"""Parametric graph families: single vertex, star, cycle, wheel, complete,
and the fishbone chain of four-vertex stars."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .errors import ParameterOutOfRange
from .graph import NEUMANN, BoundaryCondition, MetricGraph, validate

__all__ = [
    "Family",
    "LeadMode",
    "FamilySpec",
    "expand_family",
    "single_vertex",
    "star",
    "cycle",
    "wheel",
    "complete",
    "fishbone",
    "parse_family",
    "parse_family_range",
    "place_leads",
    "spec_size",
]


class Family(str, enum.Enum):
    SINGLE_VERTEX = "single"
    STAR = "star"
    CYCLE = "cycle"
    WHEEL = "wheel"
    COMPLETE = "complete"
    FISHBONE = "fishbone"


class LeadMode(str, enum.Enum):
    TWO_LEADS = "two"
    LEAD_PER_VERTEX = "all"
    DEGREE_PARAMETER = "degree"


_MIN_SIZE = {
    Family.STAR: 3,
    Family.CYCLE: 2,
    Family.WHEEL: 3,
    Family.COMPLETE: 2,
}


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    n: int = 0
    lead_mode: LeadMode = LeadMode.TWO_LEADS
    degree_or_copies: int | None = None
    dead_end_bc: BoundaryCondition = NEUMANN

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "lead_mode", LeadMode(self.lead_mode))
        object.__setattr__(self, "dead_end_bc", BoundaryCondition.parse(self.dead_end_bc))

    def check(self):
        fam = self.family
        if fam is Family.SINGLE_VERTEX:
            d = self.degree_or_copies if self.degree_or_copies is not None else self.n
            if d < 1:
                raise ParameterOutOfRange(f"single vertex needs degree >= 1, got {d}")
        elif fam is Family.FISHBONE:
            i = self.degree_or_copies if self.degree_or_copies is not None else self.n
            if i < 1:
                raise ParameterOutOfRange(f"fishbone needs at least one copy, got {i}")
        else:
            lo = _MIN_SIZE[fam]
            if self.n < lo:
                raise ParameterOutOfRange(f"{fam.value} needs n >= {lo}, got {self.n}")
            if self.lead_mode is LeadMode.DEGREE_PARAMETER:
                raise ParameterOutOfRange(f"lead mode 'degree' only applies to the single-vertex family")


def _leads(n: int, mode: LeadMode) -> list[int]:
    return list(range(1, n + 1)) if mode is LeadMode.LEAD_PER_VERTEX else [1, 2]


def _dead_end_bcs(n, edges, leads, bc):
    if bc is NEUMANN:
        return {}
    deg = {v: 0 for v in range(1, n + 1)}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for v in leads:
        deg[v] += 1
    return {v: bc for v, d in deg.items() if d == 1}


def single_vertex(d: int) -> MetricGraph:
    """One Neumann vertex carrying ``d`` leads."""
    return expand_family(FamilySpec(Family.SINGLE_VERTEX, degree_or_copies=d, lead_mode=LeadMode.DEGREE_PARAMETER))


def star(n: int, leads="two", dead_end_bc=NEUMANN) -> MetricGraph:
    return expand_family(FamilySpec(Family.STAR, n, leads, dead_end_bc=dead_end_bc))


def cycle(n: int, leads="two") -> MetricGraph:
    return expand_family(FamilySpec(Family.CYCLE, n, leads))


def wheel(n: int, leads="two") -> MetricGraph:
    return expand_family(FamilySpec(Family.WHEEL, n, leads))


def complete(n: int, leads="two") -> MetricGraph:
    return expand_family(FamilySpec(Family.COMPLETE, n, leads))


def fishbone(i: int, dead_end_bc=NEUMANN) -> MetricGraph:
    return expand_family(FamilySpec(Family.FISHBONE, degree_or_copies=i, dead_end_bc=dead_end_bc))


def _fishbone_edges(i: int):
    # spine 1..i with two dead-end ribs per spine vertex; the exit vertex
    # i+1 hangs off the last spine vertex. i=1 numbers exactly like star(4).
    edges = [(s, s + 1) for s in range(1, i + 1)]
    rib = i + 2
    for s in range(1, i + 1):
        edges += [(s, rib), (s, rib + 1)]
        rib += 2
    return 3 * i + 1, edges, [1, i + 1]


def expand_family(spec: FamilySpec) -> MetricGraph:
    """Build the metric graph a family spec describes (unit edge lengths)."""
    spec.check()
    fam, n, mode = spec.family, spec.n, spec.lead_mode
    if fam is Family.SINGLE_VERTEX:
        d = spec.degree_or_copies if spec.degree_or_copies is not None else n
        return validate(MetricGraph.build(f"S1^{d}", 1, [], [1] * d))
    if fam is Family.FISHBONE:
        i = spec.degree_or_copies if spec.degree_or_copies is not None else n
        nv, edges, leads = _fishbone_edges(i)
        tag = "" if spec.dead_end_bc is NEUMANN else "-dirichlet"
        bcs = _dead_end_bcs(nv, edges, leads, spec.dead_end_bc)
        return validate(MetricGraph.build(f"fishbone-{i}{tag}", nv, edges, leads, bcs))

    leads = _leads(n, mode)
    if fam is Family.STAR:
        edges = [(1, v) for v in range(2, n + 1)]
    elif fam is Family.CYCLE:
        edges = [(v, v % n + 1) for v in range(1, n + 1)]
    elif fam is Family.WHEEL:
        rim = list(range(2, n + 1))
        edges = [(1, v) for v in rim]
        if len(rim) == 2:
            edges.append((2, 3))
        else:
            edges += [(rim[j], rim[(j + 1) % len(rim)]) for j in range(len(rim))]
    elif fam is Family.COMPLETE:
        edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    else:  # pragma: no cover
        raise ParameterOutOfRange(fam)
    sup = "n" if mode is LeadMode.LEAD_PER_VERTEX else "2"
    name = f"{fam.value}{n}^{sup}"
    if spec.dead_end_bc is not NEUMANN:
        name += "-dirichlet"
    bcs = _dead_end_bcs(n, edges, leads, spec.dead_end_bc)
    return validate(MetricGraph.build(name, n, edges, leads, bcs))


_SPEC_RE = re.compile(r"^([a-z_]+):(\d+)(?:\.\.(\d+))?(?::(neumann|dirichlet))?$")
_ALIASES = {
    "single": Family.SINGLE_VERTEX,
    "single_vertex": Family.SINGLE_VERTEX,
    "vertex": Family.SINGLE_VERTEX,
    "star": Family.STAR,
    "cycle": Family.CYCLE,
    "wheel": Family.WHEEL,
    "complete": Family.COMPLETE,
    "fishbone": Family.FISHBONE,
}
_SPEC_HELP = "expected e.g. 'star:4', 'cycle:2..30', 'single:3', 'fishbone:2:dirichlet'"


def _lead_mode(leads, size) -> LeadMode:
    key = str(leads).strip().lower()
    if key in ("2", "two"):
        return LeadMode.TWO_LEADS
    if key in ("all", "n") or key == str(size):
        return LeadMode.LEAD_PER_VERTEX
    raise ValueError(f"leads must be 2 or all for this family, got {leads!r}")


def _make_spec(fam, size, leads, bc) -> FamilySpec:
    if fam is Family.SINGLE_VERTEX:
        return FamilySpec(fam, lead_mode=LeadMode.DEGREE_PARAMETER, degree_or_copies=size, dead_end_bc=bc)
    if fam is Family.FISHBONE:
        return FamilySpec(fam, degree_or_copies=size, dead_end_bc=bc)
    return FamilySpec(fam, size, _lead_mode(leads, size), dead_end_bc=bc)


def _match(text: str):
    m = _SPEC_RE.match(text.strip().lower().replace(" ", ""))
    if not m or m.group(1) not in _ALIASES:
        raise ValueError(f"bad family spec {text!r}; {_SPEC_HELP}")
    fam = _ALIASES[m.group(1)]
    lo = int(m.group(2))
    hi = int(m.group(3)) if m.group(3) else lo
    bc = BoundaryCondition.parse(m.group(4) or NEUMANN)
    if hi < lo:
        raise ValueError(f"empty range in {text!r}")
    return fam, lo, hi, m.group(3) is not None, bc


def parse_family(text: str, leads: str = "2", dead_end_bc=None) -> FamilySpec:
    """Parse a single ``family:size[:bc]`` spec such as ``"star:4"``.

    ``leads`` is ``"2"`` or ``"all"`` and is ignored for the single-vertex
    and fishbone families, whose lead layout is fixed.
    """
    fam, lo, _, ranged, bc = _match(text)
    if ranged:
        raise ValueError(f"{text!r} is a range; use parse_family_range")
    return _make_spec(fam, lo, leads, BoundaryCondition.parse(dead_end_bc) if dead_end_bc else bc)


def parse_family_range(text: str, leads: str = "2", dead_end_bc=None) -> list[FamilySpec]:
    """Parse ``family:A..B[:bc]`` (or a single size) into one spec per size."""
    fam, lo, hi, _, bc = _match(text)
    bc = BoundaryCondition.parse(dead_end_bc) if dead_end_bc else bc
    return [_make_spec(fam, n, leads, bc) for n in range(lo, hi + 1)]


def spec_size(spec: FamilySpec) -> int:
    """The integer a family is indexed by (n, degree or copy count)."""
    return spec.degree_or_copies if spec.degree_or_copies is not None else spec.n


def place_leads(graph: MetricGraph, leads) -> MetricGraph:
    """Return ``graph`` with its leads replaced.

    ``leads`` is ``"all"`` (one per vertex), an integer ``N`` (vertices
    ``1..N``), or a comma-separated list of vertex ids, repeats allowed.
    """
    text = str(leads).strip().lower()
    if text == "all":
        where = [v.id for v in graph.vertices]
    elif "," in text:
        where = [int(x) for x in text.split(",") if x.strip()]
    else:
        where = list(range(1, int(text) + 1))
    return validate(MetricGraph(graph.name, graph.vertices, graph.edges, where))
