"""Scattering entropy of open quantum graphs.

Build a metric graph with leads, compute its scattering amplitudes with the
bond (path-sum) system and average the Shannon entropy of the exit-channel
distribution over one period of the wavenumber.

>>> from qgraph import star, average_entropy
>>> round(average_entropy(star(4), 1).average, 6)
0.557305
"""
from .catalog import catalog_ids, fig1a, load_catalog_graph
from .closed_form import closed_form_cycle_amplitude, closed_form_S1d_entropy, closed_form_star_amplitude
from .engine import assemble, scattering_amplitudes, scattering_matrix, secular_determinant, solve
from .entropy import average_entropy, entropy_at, entropy_curve, shannon_entropy, transmission_sweep
from .errors import QGraphError
from .families import complete, cycle, expand_family, fishbone, parse_family, single_vertex, star, wheel
from .graph import DIRICHLET, NEUMANN, BoundaryCondition, Edge, MetricGraph, Vertex
from .io import graph_to_json, load_graph, save_graph
from .reproduce import reproduce, target_ids

__version__ = "0.1.0"

__all__ = [
    "BoundaryCondition",
    "DIRICHLET",
    "Edge",
    "MetricGraph",
    "NEUMANN",
    "QGraphError",
    "Vertex",
    "assemble",
    "average_entropy",
    "catalog_ids",
    "closed_form_S1d_entropy",
    "closed_form_cycle_amplitude",
    "closed_form_star_amplitude",
    "complete",
    "cycle",
    "entropy_at",
    "entropy_curve",
    "expand_family",
    "fig1a",
    "fishbone",
    "graph_to_json",
    "load_catalog_graph",
    "load_graph",
    "parse_family",
    "reproduce",
    "save_graph",
    "scattering_amplitudes",
    "scattering_matrix",
    "secular_determinant",
    "shannon_entropy",
    "single_vertex",
    "solve",
    "star",
    "target_ids",
    "transmission_sweep",
    "wheel",
]
