"""Dense symmetric eigendecomposition, PSD testing, and pencil extremes.

The eigensolver is a cyclic Jacobi scheme (compiled kernel when available,
pure-Python fallback otherwise). It is intentionally self-contained: Hankel
type moment matrices at small orders benefit from Jacobi's high relative
accuracy, and nothing here depends on an external eigensolver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernel import BACKEND, jacobi_cyclic
from .exceptions import NotPsdError, RankDeficiencyError

#: off-diagonal convergence threshold, relative to the Frobenius norm
OFF_DIAGONAL_TOL = 1e-12
MAX_SWEEPS = 100
#: relative threshold below which pencil eigenvalues of B count as zero
DEFAULT_RANK_TOL = 1e-10


class SymMatrix:
    """Square real matrix, symmetrized on ingest and then read-only."""

    __slots__ = ("data",)

    def __init__(self, entries):
        arr = np.array(entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        arr = 0.5 * (arr + arr.T)
        arr.flags.writeable = False
        self.data = arr

    @property
    def order(self) -> int:
        return self.data.shape[0]

    def __repr__(self) -> str:
        return f"SymMatrix(order={self.order})"


def as_matrix(a) -> np.ndarray:
    """Symmetric ndarray view of a SymMatrix or array-like input."""
    if isinstance(a, SymMatrix):
        return a.data
    arr = np.array(a, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    return 0.5 * (arr + arr.T)


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class PsdVerdict:
    is_psd: bool
    min_eigenvalue: float
    tolerance_used: float


def sym_eig(a) -> EigenDecomposition:
    """Full eigendecomposition of a real symmetric matrix.

    Cyclic Jacobi sweeps run until the off-diagonal norm falls below
    ``1e-12 * ||A||_F``. Raises ValueError on non-finite entries and
    ArithmeticError if the sweep budget is exhausted without converging.
    """
    m = as_matrix(a)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    n = m.shape[0]
    work = np.array(m, dtype=float, order="C")
    vecs = np.eye(n, dtype=float, order="C")
    frob = float(np.linalg.norm(work))
    if n > 1 and frob > 0.0:
        tol_off = OFF_DIAGONAL_TOL * frob
        jacobi_cyclic(work, vecs, tol_off, MAX_SWEEPS)
        off = math.sqrt(2.0) * float(np.linalg.norm(work[np.triu_indices(n, 1)]))
        if off > tol_off:
            raise ArithmeticError(
                f"Jacobi sweeps did not converge: off-diagonal {off:.3e} > {tol_off:.3e}"
            )
    values = np.diag(work).copy()
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values[order], np.ascontiguousarray(vecs[:, order]))


def default_psd_tol(a) -> float:
    """Relative tolerance guarding against false negatives on ill-conditioned
    Hankel-type matrices: 1e-9 * (1 + max |entry|)."""
    m = as_matrix(a)
    peak = float(np.max(np.abs(m))) if m.size else 0.0
    return 1e-9 * (1.0 + peak)


def psd_check(a, tol: float | None = None) -> PsdVerdict:
    """PSD verdict: is the smallest eigenvalue at least ``-tol``?"""
    if tol is None:
        tol = default_psd_tol(a)
    if tol < 0:
        raise ValueError("tol must be >= 0")
    decomp = sym_eig(a)
    min_eig = float(decomp.eigenvalues[0]) if decomp.eigenvalues.size else 0.0
    return PsdVerdict(is_psd=min_eig >= -tol, min_eigenvalue=min_eig, tolerance_used=tol)


def pencil_extremes(
    a,
    b,
    rank_tol: float = DEFAULT_RANK_TOL,
    b_eig: EigenDecomposition | None = None,
) -> tuple[float, float, int]:
    """Extreme generalized eigenvalues of the pencil (A, B), B PSD.

    B may be singular: its eigenpairs with eigenvalue above
    ``rank_tol * max_eig(B)`` define the range, A is whitened on that range,
    and the extremes of the whitened matrix are returned together with the
    retained rank. Deflation, never regularization: the quotient out of
    B's null space is exact.

    Raises NotPsdError if B has an eigenvalue below ``-rank_tol * max_eig(B)``
    and RankDeficiencyError if nothing is retained (the form is zero at this
    truncation). A precomputed ``b_eig`` decomposition may be supplied.
    """
    am = as_matrix(a)
    bm = as_matrix(b)
    if am.shape != bm.shape:
        raise ValueError(f"pencil shape mismatch: {am.shape} vs {bm.shape}")
    if b_eig is None:
        b_eig = sym_eig(bm)
    values = b_eig.eigenvalues
    scale = max(float(values[-1]), 0.0) if values.size else 0.0
    if values.size and float(values[0]) < -rank_tol * scale:
        raise NotPsdError(
            f"pencil base matrix is not PSD: min eigenvalue {float(values[0]):.3e}"
        )
    keep = values > rank_tol * scale
    rank = int(np.count_nonzero(keep))
    if rank == 0:
        raise RankDeficiencyError(
            "pencil base matrix has zero effective rank", achievable=0
        )
    w = b_eig.eigenvectors[:, keep] / np.sqrt(values[keep])
    compressed = w.T @ am @ w
    inner = sym_eig(compressed)
    return float(inner.eigenvalues[0]), float(inner.eigenvalues[-1]), rank


__all__ = [
    "BACKEND",
    "DEFAULT_RANK_TOL",
    "EigenDecomposition",
    "PsdVerdict",
    "SymMatrix",
    "as_matrix",
    "default_psd_tol",
    "pencil_extremes",
    "psd_check",
    "sym_eig",
]
