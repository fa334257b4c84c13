"""Dense complex factorization kernels.

Thin wrappers around LAPACK (via scipy/numpy) that pin down the contracts
the rest of the package relies on: reconstruction residuals, numerical
rank determination, and eigenvalue backward error.  All kernels promote
inputs to complex and reject non-finite entries.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NumericalFailure, SingularMatrix

TOL_LU = 1e-12
TOL_SOLVE = 1e-12
TOL_PIVOT = 1e-14


def as_dense(a):
    """Validate and promote an array to a contiguous complex matrix.

    Layout is C-contiguous (row-major) throughout the package.
    """
    a = np.ascontiguousarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def default_rank_tol(n_rows, n_cols):
    """Default relative tolerance for numerical rank decisions."""
    return max(n_rows, n_cols) * np.finfo(float).eps * 16


@dataclass(frozen=True)
class LUFactors:
    """Combined L/U storage with row pivots, as returned by LAPACK getrf."""

    lu: np.ndarray
    piv: np.ndarray
    near_singular: bool
    growth: float  # max |U_ii| / min |U_ii|, inf when a pivot underflows

    @property
    def n(self):
        return self.lu.shape[0]


@dataclass(frozen=True)
class RRQRFactors:
    """Column-pivoted QR truncated at the numerical rank."""

    q1: np.ndarray  # n x k, orthonormal columns
    r1: np.ndarray  # k x n_cols, upper trapezoidal (of the permuted matrix)
    perm: np.ndarray  # column permutation indices
    rank: int


def lu_factor(a):
    """LU with partial pivoting; flags near-singular factors.

    Raises :class:`SingularMatrix` on an exactly zero pivot.
    """
    a = as_dense(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError("lu_factor requires a square matrix")
    with warnings.catch_warnings():
        # scipy warns on exact zero pivots; we raise SingularMatrix instead
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    diag = np.abs(np.diag(lu))
    if np.any(diag == 0.0):
        raise SingularMatrix("exact zero pivot in LU factorization")
    row_scale = np.max(np.abs(a), axis=1).max()
    near = bool(diag.min() < TOL_PIVOT * row_scale)
    growth = float(diag.max() / diag.min())
    return LUFactors(lu, piv, near, growth)


def lu_solve(factors: LUFactors, rhs):
    """Triangular substitutions against a prior LU factorization."""
    rhs = np.asarray(rhs, dtype=complex)
    squeeze = rhs.ndim == 1
    if squeeze:
        rhs = rhs[:, None]
    if rhs.shape[0] != factors.n:
        raise ValueError("right-hand side dimension mismatch")
    x = scipy.linalg.lu_solve((factors.lu, factors.piv), rhs, check_finite=False)
    return x[:, 0] if squeeze else x


def qr_column_pivoted(u, rank_tol=None):
    """Rank-revealing QR by column pivoting.

    Numerical rank is the number of diagonal entries of R strictly above
    ``rank_tol * |R_11|``.  Larger tolerances can only reduce the rank.
    """
    u = as_dense(u)
    if rank_tol is None:
        rank_tol = default_rank_tol(*u.shape)
    q, r, perm = scipy.linalg.qr(u, mode="economic", pivoting=True, check_finite=False)
    diag = np.abs(np.diag(r))
    if diag.size == 0 or diag[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(diag > rank_tol * diag[0]))
    return RRQRFactors(q[:, :rank], r[:rank, :], perm, rank)


def qr_thin(u):
    """Thin Householder QR: u = q @ r with orthonormal q."""
    u = as_dense(u)
    q, r = scipy.linalg.qr(u, mode="economic", check_finite=False)
    return q, r


def eig_dense(m, vectors=False):
    """Eigenvalues (optionally right eigenvectors) of a small dense matrix.

    Backed by LAPACK's QR iteration on the Hessenberg form, which carries
    the backward-error guarantee the callers need.
    """
    m = as_dense(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("eig_dense requires a square matrix")
    if m.shape[0] == 0:
        w = np.zeros(0, dtype=complex)
        return (w, np.zeros((0, 0), dtype=complex)) if vectors else w
    try:
        if vectors:
            w, v = np.linalg.eig(m)
            return w, v
        return np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"dense eigenvalue iteration failed: {exc}") from exc
