"""Scattering amplitudes of open quantum graphs from the directed-bond system.

Every internal edge carries two directed bonds. For an exit channel ``f``
the bond amplitudes ``P`` solve ``(1 - U(k)) P = Z_f`` with ``U = D(k) S``:

* ``D(k)`` is diagonal, ``exp(1j k L_b)`` for a bond of ``L_b`` units;
* ``S[b, c]`` couples a bond ``b`` arriving at vertex ``j`` to a bond ``c``
  leaving ``j``: ``r_j`` when ``c`` runs back along the same edge and
  ``t_j`` for every other edge at ``j``;
* ``Z_f[b] = exp(1j k L_b) t_j`` when ``b`` ends at the exit vertex.

The amplitude from entrance ``i`` (vertex ``v_i``) to exit ``f`` is then
``delta_fi r + t * sum(P[b] for b leaving v_i)``, plus a direct ``t`` when
two distinct leads share a vertex.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import QGraphError, SingularAfterRetry, UnknownChannel
from .graph import MetricGraph, validate, vertex_amplitudes
from .linalg import lu_det, lu_factor, lu_solve

__all__ = [
    "DirectedBond",
    "BondSystem",
    "SolveDiagnostics",
    "ScatteringMatrix",
    "ProbabilityViolation",
    "enumerate_bonds",
    "assemble",
    "solve",
    "scattering_matrix",
    "scattering_amplitudes",
    "secular_determinant",
    "PIVOT_TOL",
    "RETRY_SHIFT",
]

PIVOT_TOL = 1e-12
RETRY_SHIFT = 1e-9 * 2 * np.pi
# max complex entries per chunk of stacked (B, B) matrices
_CHUNK_ENTRIES = 2_000_000

# Neighbour exclusion in the onward sum of the path-family recursion.
INCOMING = "incoming"
INCOMING_AND_EXIT = "incoming_and_exit"


class ProbabilityViolation(QGraphError, ArithmeticError):
    """A squared amplitude left [0, 1] by more than roundoff."""


@dataclass(frozen=True, order=True)
class DirectedBond:
    edge: int
    tail: int
    head: int
    length: int = field(compare=False)


def enumerate_bonds(graph: MetricGraph) -> list[DirectedBond]:
    """Both orientations of every edge, sorted by ``(edge, tail)``."""
    bonds = []
    for n, e in enumerate(graph.edges):
        a, b = sorted((e.u, e.v))
        bonds.append(DirectedBond(n, a, b, e.length))
        bonds.append(DirectedBond(n, b, a, e.length))
    return bonds


@dataclass(frozen=True)
class _Structure:
    """k-independent data of a graph's bond system."""

    bonds: tuple
    lengths: np.ndarray  # (B,)
    S: np.ndarray  # (B, B) real vertex scattering
    inject: np.ndarray  # (B, l): t_j on bonds ending at the channel's vertex
    launch: np.ndarray  # (B, l): t_i on bonds leaving the channel's vertex
    direct: np.ndarray  # (l, l): lead-to-lead term at a single vertex
    heads: np.ndarray
    edge_of: np.ndarray
    channel_vertex: np.ndarray
    # bonds into a lead-free dead end carry P[p] = z^L r P[reverse(p)] exactly;
    # the batched path eliminates them (Schur complement of an identity block)
    leaf: np.ndarray  # eliminated bond indices
    leaf_partner: np.ndarray  # their reverse bonds
    leaf_r: np.ndarray  # dead-end reflection amplitude
    keep: np.ndarray  # surviving bond indices, ascending
    reduced: tuple = field(default=(), compare=False)


def _amplitudes(graph: MetricGraph) -> dict[int, tuple[float, float]]:
    out = {}
    for v, d in graph.degrees().items():
        a = vertex_amplitudes(graph.bc(v), d)
        out[v] = (a.r, a.t)
    return out


@lru_cache(maxsize=256)
def _structure(graph: MetricGraph) -> _Structure:
    validate(graph)
    bonds = enumerate_bonds(graph)
    amp = _amplitudes(graph)
    B, l = len(bonds), graph.n_channels
    S = np.zeros((B, B))
    by_tail: dict[int, list[int]] = {}
    for q, c in enumerate(bonds):
        by_tail.setdefault(c.tail, []).append(q)
    for p, b in enumerate(bonds):
        r, t = amp[b.head]
        for q in by_tail.get(b.head, ()):
            S[p, q] = r if bonds[q].edge == b.edge else t

    chv = np.array(graph.leads, dtype=int)
    inject = np.zeros((B, l))
    launch = np.zeros((B, l))
    for p, b in enumerate(bonds):
        for c, v in enumerate(graph.leads):
            if b.head == v:
                inject[p, c] = amp[v][1]
            if b.tail == v:
                launch[p, c] = amp[v][1]
    direct = np.zeros((l, l))
    for f, vf in enumerate(graph.leads):
        for i, vi in enumerate(graph.leads):
            if f == i:
                direct[f, i] = amp[vi][0]
            elif vf == vi:
                direct[f, i] = amp[vi][1]
    deg = graph.degrees()
    lead_vertices = set(graph.leads)
    index = {(b.edge, b.tail): q for q, b in enumerate(bonds)}
    leaf = [p for p, b in enumerate(bonds) if deg[b.head] == 1 and b.head not in lead_vertices]
    partner = [index[(bonds[p].edge, bonds[p].head)] for p in leaf]
    keep = np.setdiff1d(np.arange(B), leaf)
    st = _Structure(
        bonds=tuple(bonds),
        lengths=np.array([b.length for b in bonds], dtype=float),
        S=S,
        inject=inject,
        launch=launch,
        direct=direct,
        heads=np.array([b.head for b in bonds], dtype=int),
        edge_of=np.array([b.edge for b in bonds], dtype=int),
        channel_vertex=chv,
        leaf=np.array(leaf, dtype=int),
        leaf_partner=np.array(partner, dtype=int),
        leaf_r=np.array([amp[bonds[p].head][0] for p in leaf], dtype=float),
        keep=keep,
    )
    object.__setattr__(st, "reduced", _reduced_coupling(st, S))
    return st


def _coupling(st: _Structure, exit_vertex: int | None) -> np.ndarray:
    """Vertex coupling matrix, optionally with onward transmission into the
    exit vertex removed (the literal two-vertex exclusion reading)."""
    if exit_vertex is None:
        return st.S
    S = st.S.copy()
    into_exit = st.heads == exit_vertex
    for p in range(len(st.bonds)):
        S[p, into_exit & (st.edge_of != st.edge_of[p])] = 0.0
    return S


def _channel(graph: MetricGraph, ch: int) -> int:
    if not 1 <= ch <= graph.n_channels:
        raise UnknownChannel(f"channel {ch} outside 1..{graph.n_channels}")
    return ch - 1


@dataclass
class BondSystem:
    """The linear system ``P = U P + Z`` at one wavenumber and exit channel."""

    graph: MetricGraph
    k: float
    exit: int
    bonds: list[DirectedBond]
    D: np.ndarray  # diagonal of D(k)
    S: np.ndarray
    Z: np.ndarray
    exclusion: str = INCOMING

    @property
    def U(self) -> np.ndarray:
        return self.D[:, None] * self.S

    def matrix(self) -> np.ndarray:
        return np.eye(len(self.bonds)) - self.U


def assemble(graph: MetricGraph, k: float, exit: int = 1, exclusion: str = INCOMING) -> BondSystem:
    """Assemble the bond system for exit channel ``exit`` (1-based).

    ``exclusion`` selects which neighbours are dropped from the onward
    transmission sum: only the vertex the bond came from (``"incoming"``,
    the default) or additionally the exit vertex (``"incoming_and_exit"``).
    The second reading is kept for comparison only; it breaks unitarity.
    """
    st = _structure(graph)
    f = _channel(graph, exit)
    if exclusion == INCOMING:
        S = st.S
    elif exclusion == INCOMING_AND_EXIT:
        S = _coupling(st, int(st.channel_vertex[f]))
    else:
        raise ValueError(f"unknown exclusion rule {exclusion!r}")
    D = np.exp(1j * k * st.lengths)
    return BondSystem(graph, float(k), exit, list(st.bonds), D, S, D * st.inject[:, f], exclusion)


@dataclass
class SolveDiagnostics:
    residual_norm: float
    perturbed: bool
    secular_value: complex
    k_used: float
    min_pivot: float
    exclusion: str = INCOMING


def solve(system: BondSystem) -> tuple[np.ndarray, SolveDiagnostics]:
    """Solve ``(1 - U) P = Z`` by LU with partial pivoting.

    A pivot below ``PIVOT_TOL`` triggers one retry at ``k + RETRY_SHIFT``;
    the returned diagnostics then carry ``perturbed=True``.
    """
    B = len(system.bonds)
    if B == 0:
        return np.zeros(0, complex), SolveDiagnostics(0.0, False, 1.0 + 0j, system.k, np.inf, system.exclusion)
    A = system.matrix()
    Z = system.Z
    k_used, perturbed = system.k, False
    fac = lu_factor(A)
    if fac.min_pivot[0] < PIVOT_TOL:
        k_used, perturbed = system.k + RETRY_SHIFT, True
        shifted = assemble(system.graph, k_used, system.exit, system.exclusion)
        A, Z = shifted.matrix(), shifted.Z
        fac = lu_factor(A)
        if fac.min_pivot[0] < PIVOT_TOL:
            raise SingularAfterRetry(system.k)
    P = lu_solve(fac, Z[None])[0]
    res = float(np.max(np.abs(A @ P - Z)))
    diag = SolveDiagnostics(res, perturbed, complex(lu_det(fac)[0]), k_used, float(fac.min_pivot[0]), system.exclusion)
    return P, diag


@dataclass
class ScatteringMatrix:
    """Amplitudes ``amplitudes[f-1, i-1]`` from entrance ``i`` to exit ``f``."""

    k: float
    amplitudes: np.ndarray
    probabilities: np.ndarray
    residual_norm: float = 0.0
    perturbed: bool = False
    secular_value: complex = 1.0 + 0j
    unitarity_error: float = 0.0
    reciprocity_error: float = 0.0

    @property
    def n_channels(self) -> int:
        return self.amplitudes.shape[0]

    def column(self, entrance: int) -> np.ndarray:
        return self.probabilities[:, entrance - 1]


@dataclass
class AmplitudeBatch:
    """Scattering matrices on a grid of wavenumbers."""

    k: np.ndarray  # requested wavenumbers (N,)
    k_used: np.ndarray  # after any singular-point shift
    amplitudes: np.ndarray  # (N, l, l)
    residual: np.ndarray  # (N,)
    perturbed: np.ndarray  # (N,) bool
    secular: np.ndarray  # (N,)


def _reduced_coupling(st: _Structure, S: np.ndarray):
    # S restricted to kept bonds, and the leaf columns folded onto their partners
    keep = st.keep
    S_kk = S[np.ix_(keep, keep)]
    fold = np.zeros((len(keep), len(keep)))
    col = np.searchsorted(keep, st.leaf_partner)
    fold[:, col] = S[np.ix_(keep, st.leaf)] * st.leaf_r[None]
    return S_kk, fold, col


def _factor_at(st: _Structure, ks: np.ndarray, S: np.ndarray):
    """Reduced system on the kept bonds: returns D, A, its LU and the leaf
    factors ``c = z^L r`` needed to rebuild the eliminated amplitudes."""
    D = np.exp(1j * ks[:, None] * st.lengths[None, :])
    S_kk, fold, col = st.reduced if S is st.S else _reduced_coupling(st, S)
    Dk = D[:, st.keep]
    zl = np.zeros_like(Dk)
    zl[:, col] = D[:, st.leaf]
    # row m of the full system holds -D_m S[m, p] P_p with P_p = z^L r P_partner
    A = -Dk[:, :, None] * (S_kk[None] + fold[None] * zl[:, None, :])
    idx = np.arange(len(st.keep))
    A[:, idx, idx] += 1.0
    return D, A, lu_factor(A), D[:, st.leaf] * st.leaf_r[None]


def _expand(st: _Structure, P: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Full bond amplitudes ``(N, B, l)`` from the reduced solution."""
    N, _, l = P.shape
    full = np.empty((N, len(st.lengths), l), complex)
    full[:, st.keep] = P
    full[:, st.leaf] = c[:, :, None] * full[:, st.leaf_partner]
    return full


def _solve_chunk(st: _Structure, ks: np.ndarray, exclusion: str):
    N, B, l = len(ks), len(st.lengths), st.inject.shape[1]
    if B == 0:
        amps = np.broadcast_to(st.direct.astype(complex), (N, l, l)).copy()
        return ks.copy(), amps, np.zeros(N), np.zeros(N, bool), np.ones(N, complex)

    keep = st.keep

    def run(kk):
        if exclusion == INCOMING:
            D, A, fac, c = _factor_at(st, kk, st.S)
            Z = D[:, keep, None] * st.inject[None, keep]
            P = lu_solve(fac, Z)
            res = np.max(np.abs(A @ P - Z), axis=(1, 2))
            return _expand(st, P, c), res, fac.min_pivot, lu_det(fac)
        P = np.empty((len(kk), len(keep), l), complex)
        res = np.zeros(len(kk))
        piv = np.full(len(kk), np.inf)
        for f in range(l):
            D, A, fac, c = _factor_at(st, kk, _coupling(st, int(st.channel_vertex[f])))
            Z = D[:, keep] * st.inject[None, keep, f]
            P[:, :, f] = lu_solve(fac, Z)
            res = np.maximum(res, np.max(np.abs(np.einsum("nij,nj->ni", A, P[:, :, f]) - Z), axis=1))
            piv = np.minimum(piv, fac.min_pivot)
        _, _, fac0, c = _factor_at(st, kk, st.S)
        return _expand(st, P, c), res, piv, lu_det(fac0)

    with np.errstate(all="ignore"):
        P, res, piv, det = run(ks)
    k_used = ks.copy()
    bad = piv < PIVOT_TOL
    if bad.any():
        k_used[bad] = ks[bad] + RETRY_SHIFT
        with np.errstate(all="ignore"):
            P2, res2, piv2, det2 = run(k_used[bad])
        if (piv2 < PIVOT_TOL).any():
            raise SingularAfterRetry(float(ks[bad][piv2 < PIVOT_TOL][0]))
        P[bad], res[bad], det[bad] = P2, res2, det2
    # sigma[n, f, i] = direct[f, i] + sum_b P[n, b, f] * launch[b, i]
    amps = st.direct[None] + np.einsum("nbf,bi->nfi", P, st.launch)
    return k_used, amps, res, bad, det


def scattering_amplitudes(graph: MetricGraph, ks, exclusion: str = INCOMING) -> AmplitudeBatch:
    """Vectorised scattering matrices for an array of wavenumbers."""
    st = _structure(graph)
    ks = np.atleast_1d(np.asarray(ks, dtype=float))
    B = max(len(st.lengths), 1)
    chunk = max(1, _CHUNK_ENTRIES // (B * B))
    parts = [_solve_chunk(st, ks[s : s + chunk], exclusion) for s in range(0, len(ks), chunk)]
    if not parts:
        l = graph.n_channels
        return AmplitudeBatch(ks, ks, np.zeros((0, l, l), complex), np.zeros(0), np.zeros(0, bool), np.zeros(0, complex))
    k_used, amps, res, bad, det = (np.concatenate(x) for x in zip(*parts))
    return AmplitudeBatch(ks, k_used, amps, res, bad, det)


def probabilities_from(amps: np.ndarray) -> np.ndarray:
    """Squared moduli clamped to [0, 1]; raises if the excess is not roundoff."""
    p = np.abs(amps) ** 2
    worst = float(np.max(p - 1.0, initial=0.0))
    if worst > 1e-6:
        raise ProbabilityViolation(f"probability exceeds 1 by {worst:.3g}; bond system is inconsistent")
    return np.clip(p, 0.0, 1.0)


def scattering_matrix(graph: MetricGraph, k: float, exclusion: str = INCOMING) -> ScatteringMatrix:
    """Full scattering matrix at one wavenumber, with unitarity and
    reciprocity defects reported alongside."""
    batch = scattering_amplitudes(graph, [k], exclusion)
    amps = batch.amplitudes[0]
    raw = np.abs(amps) ** 2
    probs = probabilities_from(amps)
    return ScatteringMatrix(
        k=float(k),
        amplitudes=amps,
        probabilities=probs,
        residual_norm=float(batch.residual[0]),
        perturbed=bool(batch.perturbed[0]),
        secular_value=complex(batch.secular[0]),
        unitarity_error=float(np.max(np.abs(raw.sum(axis=0) - 1.0))),
        reciprocity_error=float(np.max(np.abs(np.abs(amps) - np.abs(amps.T)))),
    )


def secular_determinant(graph: MetricGraph, k) -> complex | np.ndarray:
    """``det(1 - U(k))`` of the closed evolution map (lead-inclusive vertex
    degrees, no exit exclusion). Accepts a scalar or an array of ``k``."""
    st = _structure(graph)
    ks = np.asarray(k, dtype=float)
    flat = np.atleast_1d(ks)
    if len(st.lengths) == 0:
        out = np.ones(flat.shape, complex)
    else:
        _, _, fac, _ = _factor_at(st, flat, st.S)
        out = lu_det(fac)
    return complex(out[0]) if ks.ndim == 0 else out.reshape(ks.shape)
