"""Closed-form amplitudes and entropies for the simplest families, used as
independent oracles for the generic bond-system engine."""
from __future__ import annotations

import math

import numpy as np

from .errors import ParameterOutOfRange, SingularPoint

__all__ = [
    "closed_form_S1d_entropy",
    "closed_form_star_amplitude",
    "closed_form_star_secular",
    "closed_form_cycle_amplitude",
    "SINGULAR_TOL",
]

SINGULAR_TOL = 1e-14


def closed_form_S1d_entropy(d: int) -> float:
    """Average entropy of one Neumann vertex with ``d >= 3`` leads.

    The amplitudes are k-independent, so this is simply the entropy of one
    reflection ``(2/d - 1)**2`` and ``d - 1`` transmissions ``(2/d)**2``.
    """
    if d < 3:
        raise ParameterOutOfRange(f"closed form needs d >= 3, got {d}")
    d2 = d * d
    return 4 * (d - 1) / d2 * math.log2(d2 / 4) + (d - 2) ** 2 / d2 * math.log2(d2 / (d - 2) ** 2)


def _z(k):
    return np.exp(1j * np.asarray(k, dtype=float))


def _finish(num, den, k):
    den = np.asarray(den)
    if np.any(np.abs(den) < SINGULAR_TOL):
        bad = np.atleast_1d(np.asarray(k, dtype=float))[np.atleast_1d(np.abs(den) < SINGULAR_TOL)]
        raise SingularPoint(f"denominator vanishes at k={bad[0]!r}")
    out = num / den
    return complex(out) if np.ndim(out) == 0 else out


def closed_form_star_secular(n: int, k):
    """``det(1 - U)`` of the star with ``n`` vertices and leads at the centre
    and at one arm: ``[n - (n-4) z^2] (1 + z^2)^(n-3) / n``."""
    if n < 3:
        raise ParameterOutOfRange(f"star closed form needs n >= 3, got {n}")
    z = _z(k)
    out = (n - (n - 4) * z**2) * (1 + z**2) ** (n - 3) / n
    return complex(out) if np.ndim(out) == 0 else out


def closed_form_star_amplitude(n: int, k):
    """Transmission amplitude centre -> arm of the two-lead star,
    ``2 z (1 + z^2)^(n-2) / (n * det(1 - U))``."""
    if n < 3:
        raise ParameterOutOfRange(f"star closed form needs n >= 3, got {n}")
    z = _z(k)
    num = 2 * z * (1 + z**2) ** (n - 2)
    den = n * closed_form_star_secular(n, k)
    return _finish(num, den, k)


def closed_form_cycle_amplitude(n: int, k, literal_sign: bool = False):
    """Transmission amplitude between adjacent leads on the cycle ``C_n``.

    Equals ``4 z (z^n - 1)(z^n + z^2) / (z^4 + z^(2n) + 8 z^(n+2) - 9 z^2 - z^(2n+2))``.
    The expression is often quoted with the denominator's sign flipped,
    which only changes the overall phase; that form gives -1 instead of the
    required +1 as k -> 0 (zero-energy limit S = J - I for two leads).
    ``literal_sign=True`` returns that variant.
    """
    if n < 2:
        raise ParameterOutOfRange(f"cycle closed form needs n >= 2, got {n}")
    z = _z(k)
    num = 4 * z * (z**n - 1) * (z**n + z**2)
    den = 9 * z**2 - z**4 - z ** (2 * n) - 8 * z ** (n + 2) + z ** (2 * n + 2)
    if not literal_sign:
        den = -den
    return _finish(num, den, k)
