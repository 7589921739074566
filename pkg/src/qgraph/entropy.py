"""Shannon entropy of scattering probabilities and its average over one
period of the wavenumber."""
from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field

import numpy as np

from .engine import probabilities_from, scattering_amplitudes
from .errors import InvalidDistribution, UnknownChannel
from .graph import MetricGraph
from .quadrature import integrate_doubling

__all__ = [
    "ChannelDistribution",
    "EntropyProfile",
    "SweepTable",
    "QuadratureNotConverged",
    "shannon_entropy",
    "entropy_bits",
    "entropy_at",
    "entropy_curve",
    "average_entropy",
    "transmission_sweep",
    "write_sweep_csv",
    "PERIOD",
]

PERIOD = 2 * np.pi
ZERO_PROB = 1e-300


class QuadratureNotConverged(UserWarning):
    pass


@dataclass
class ChannelDistribution:
    entrance: int
    probabilities: np.ndarray

    def __post_init__(self):
        self.probabilities = np.asarray(self.probabilities, dtype=float)


def _check(p: np.ndarray):
    if np.any(p < 0):
        raise InvalidDistribution(f"negative probability {p.min():.3g}")
    dev = float(np.max(np.abs(p.sum(axis=-1) - 1.0), initial=0.0))
    if dev > 1e-6:
        raise InvalidDistribution(f"probabilities sum to 1 {dev:+.3g}")


def entropy_bits(p: np.ndarray, axis: int = -1) -> np.ndarray:
    """``-sum(p log2 p)`` along ``axis`` with ``0 log 0 = 0``; no validation."""
    p = np.asarray(p, dtype=float)
    safe = np.where(p > ZERO_PROB, p, 1.0)
    return -np.sum(np.where(p > ZERO_PROB, p * np.log2(safe), 0.0), axis=axis)


def shannon_entropy(dist) -> float:
    """Entropy in bits of a probability vector or :class:`ChannelDistribution`."""
    p = dist.probabilities if isinstance(dist, ChannelDistribution) else np.asarray(dist, dtype=float)
    _check(p)
    return float(entropy_bits(p))


def _column(graph: MetricGraph, entrance: int) -> int:
    if not 1 <= entrance <= graph.n_channels:
        raise UnknownChannel(f"entrance channel {entrance} outside 1..{graph.n_channels}")
    return entrance - 1


def channel_probabilities(graph: MetricGraph, ks, entrance: int = 1):
    """Exit-channel probabilities ``(N, l)`` for entrance ``entrance`` plus the batch."""
    i = _column(graph, entrance)
    batch = scattering_amplitudes(graph, ks)
    return probabilities_from(batch.amplitudes[:, :, i]), batch


def entropy_curve(graph: MetricGraph, ks, entrance: int = 1) -> np.ndarray:
    p, _ = channel_probabilities(graph, ks, entrance)
    return entropy_bits(p)


def entropy_at(graph: MetricGraph, k: float, entrance: int = 1) -> float:
    p, _ = channel_probabilities(graph, [k], entrance)
    return shannon_entropy(ChannelDistribution(entrance, p[0]))


@dataclass
class EntropyProfile:
    samples: np.ndarray  # (N, 2): k, H(k) at the final quadrature level
    average: float
    period: float
    panels_used: int
    estimated_error: float
    converged: bool = True
    history: list = field(default_factory=list)

    def __float__(self):
        return self.average


def average_entropy(
    graph: MetricGraph,
    entrance: int = 1,
    tol: float = 1e-6,
    period: float = PERIOD,
    panels: int = 16,
    order: int = 32,
    max_panels: int = 2**14,
    mirror: bool = True,
) -> EntropyProfile:
    """Mean of the per-k entropy over ``[0, period]``.

    Integer edge lengths make every amplitude ``2*pi``-periodic, so the
    default period covers a whole number of true periods for any graph.
    If the panel cap is hit the best estimate is returned with
    ``converged=False`` and a :class:`QuadratureNotConverged` warning.

    Real vertex couplings give ``sigma(-k) = conj(sigma(k))``, hence
    ``H(period - k) = H(k)`` whenever the period is a multiple of ``2*pi``.
    With ``mirror=True`` only the lower half of the (symmetric) Gauss nodes
    is evaluated; the quadrature rule itself is unchanged.
    """
    _column(graph, entrance)
    use_mirror = mirror and _multiple_of_2pi(period)

    def integrand(k):
        if not use_mirror:
            return entropy_curve(graph, k, entrance)
        half = len(k) // 2
        y = entropy_curve(graph, k[:half], entrance)
        return np.concatenate([y, y[::-1]])

    res = integrate_doubling(
        integrand,
        0.0,
        period,
        tol=tol * period,
        panels=panels,
        order=order,
        max_panels=max_panels,
    )
    if not res.converged:
        warnings.warn(
            f"{graph.name}: average entropy not converged at {res.panels} panels (est. error {res.error / period:.2e})",
            QuadratureNotConverged,
            stacklevel=2,
        )
    return EntropyProfile(
        samples=np.column_stack([res.nodes, res.samples]),
        average=res.value / period,
        period=period,
        panels_used=res.panels,
        estimated_error=res.error / period,
        converged=res.converged,
        history=[(m, v / period) for m, v in res.history],
    )


def _multiple_of_2pi(period: float) -> bool:
    m = period / PERIOD
    return m >= 1 and abs(m - round(m)) < 1e-12


@dataclass
class SweepTable:
    k: np.ndarray
    probabilities: np.ndarray  # (N, l)
    entropy: np.ndarray
    perturbed: np.ndarray

    def __len__(self):
        return len(self.k)

    def rows(self):
        for n in range(len(self.k)):
            yield self.k[n], self.probabilities[n], self.entropy[n], bool(self.perturbed[n])


def transmission_sweep(graph: MetricGraph, entrance: int, k_min: float, k_max: float, n_samples: int) -> SweepTable:
    """Probabilities and entropy on ``n_samples`` equally spaced wavenumbers
    from ``k_min`` to ``k_max`` inclusive."""
    if not 0 < k_min < k_max:
        raise ValueError(f"need 0 < k_min < k_max, got {k_min}, {k_max}")
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    ks = np.linspace(k_min, k_max, n_samples)
    p, batch = channel_probabilities(graph, ks, entrance)
    return SweepTable(ks, p, entropy_bits(p), batch.perturbed.copy())


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def write_sweep_csv(table: SweepTable, stream) -> None:
    """CSV with header ``k,p_1,...,p_l,H,flags``."""
    l = table.probabilities.shape[1]
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["k", *(f"p_{j}" for j in range(1, l + 1)), "H", "flags"])
    for k, p, h, pert in table.rows():
        w.writerow([_fmt(k), *(_fmt(x) for x in p), _fmt(h), "perturbed" if pert else ""])


