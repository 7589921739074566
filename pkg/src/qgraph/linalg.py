"""Stacked dense LU factorisation with partial pivoting (LAPACK getrf/getrs).

numpy's ``linalg.solve`` hides the pivots, and the scattering engine needs
the smallest pivot magnitude of every factorisation to decide whether a
wavenumber sits on (or next to) a singular point of the bond system.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg.lapack import zgetrf, zgetrs

__all__ = ["BatchedLU", "lu_factor", "lu_solve", "lu_det"]


@dataclass
class BatchedLU:
    lu: np.ndarray  # (N, n, n) packed L (unit diagonal) and U
    ipiv: np.ndarray  # (N, n) LAPACK row interchanges, 0-based
    min_pivot: np.ndarray  # (N,) smallest |U_kk| per matrix

    @property
    def swaps(self) -> np.ndarray:
        return np.count_nonzero(self.ipiv != np.arange(self.ipiv.shape[1]), axis=1)


def lu_factor(a: np.ndarray) -> BatchedLU:
    """Factor every matrix of the stack ``a`` (shape ``(N, n, n)``) as PA = LU.

    Exactly singular matrices do not raise; they show up as a zero in
    ``min_pivot``.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim == 2:
        a = a[None]
    N, n, m = a.shape
    if n != m:
        raise ValueError(f"expected square matrices, got {a.shape}")
    lu = np.empty_like(a)
    ipiv = np.empty((N, n), dtype=np.int32)
    for j in range(N):
        lu[j], ipiv[j], info = zgetrf(a[j])
        if info < 0:  # pragma: no cover
            raise ValueError(f"zgetrf: illegal argument {-info}")
    diag = np.abs(np.diagonal(lu, axis1=1, axis2=2))
    min_pivot = diag.min(axis=1) if n else np.full(N, np.inf)
    return BatchedLU(lu, ipiv, min_pivot)


def lu_solve(f: BatchedLU, b: np.ndarray) -> np.ndarray:
    """Solve ``A x = b`` for every factored matrix; ``b`` is ``(N, n)`` or ``(N, n, m)``."""
    b = np.asarray(b, dtype=np.complex128)
    vec = b.ndim == 2
    if vec:
        b = b[:, :, None]
    x = np.empty_like(b)
    for j in range(len(b)):
        x[j], info = zgetrs(f.lu[j], f.ipiv[j], b[j])
    return x[:, :, 0] if vec else x


def lu_det(f: BatchedLU) -> np.ndarray:
    diag = np.diagonal(f.lu, axis1=1, axis2=2)
    sign = np.where(f.swaps % 2 == 0, 1.0, -1.0)
    return sign * np.prod(diag, axis=1)
