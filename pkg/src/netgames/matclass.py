"""Matrix class tests and spectral summaries.

The uniqueness theory of linear best-reply games runs through the P-matrix
property of I + G (every principal minor strictly positive).  This module
provides the exact test with failure witnesses, the cheaper sufficient
classes used by closed-form certificates, and Schur complements for block
eliminations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import minor_scan
from .errors import InvalidParameterError, ShapeError, SingularBlockError

#: Matrices are treated as symmetric when max |m - m.T| is at most this.
SYM_TOL = 1e-12

#: Hard cap on exact minor enumeration for asymmetric matrices (2^d minors).
P_EXACT_CAP = 16

#: Condition-estimate ceiling above which block eliminations refuse to run.
COND_CAP = 1e12


def det_eps(m) -> float:
    """Determinant comparison threshold, scaled by the matrix magnitude."""
    m = np.asarray(m, dtype=np.float64)
    norm_inf = np.abs(m).sum(axis=1).max(initial=0.0)
    return 1e-9 * max(1.0, norm_inf)


def is_symmetric(m, tol: float = SYM_TOL) -> bool:
    m = np.asarray(m, dtype=np.float64)
    return bool(np.abs(m - m.T).max(initial=0.0) <= tol)


@dataclass
class SpectralSummary:
    """Eigenvalue extremes (ordered by real part) and spectral radius."""

    lambda_min_re: float
    lambda_max_re: float
    rho: float
    symmetric: bool


@dataclass
class ClassVerdict:
    """Outcome of a matrix-class test.

    ``holds`` is True/False when decided exactly or by a sufficient
    condition, None when no implemented route can decide.  ``witness`` is
    the 0-based index tuple of the first failing principal minor in
    (size, lexicographic) order, or the offending eigenvalue for the
    symmetric route.
    """

    holds: bool | None
    method: str
    witness: tuple | float | None = None


def _validated(m):
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise InvalidParameterError("matrix contains non-finite entries")
    return arr


def spectral(m) -> SpectralSummary:
    """Eigenvalue summary; symmetric input uses the symmetric solver."""
    arr = _validated(m)
    if arr.shape[0] == 0:
        raise ShapeError("spectral summary of an empty matrix is undefined")
    if is_symmetric(arr):
        vals = np.linalg.eigvalsh(arr)
        return SpectralSummary(
            float(vals[0]), float(vals[-1]), float(np.abs(vals).max()), True
        )
    vals = np.linalg.eigvals(arr)
    re = vals.real
    return SpectralSummary(
        float(re.min()), float(re.max()), float(np.abs(vals).max()), False
    )


def is_positive_definite(m, eps: float | None = None) -> bool:
    """Positive definiteness of the symmetric part (x'Mx > 0 for x != 0)."""
    arr = _validated(m)
    if eps is None:
        eps = det_eps(arr)
    sym = 0.5 * (arr + arr.T)
    return bool(np.linalg.eigvalsh(sym)[0] > eps)


def is_strictly_row_dd(m) -> bool:
    """Strict row diagonal dominance: |m_ii| > sum_{j != i} |m_ij|."""
    arr = _validated(m)
    diag = np.abs(np.diag(arr))
    off = np.abs(arr).sum(axis=1) - diag
    return bool(np.all(diag > off))


def is_b_matrix(m) -> bool:
    """Row-mean dominance: each row mean positive and above every
    off-diagonal entry of its row."""
    arr = _validated(m)
    d = arr.shape[0]
    means = arr.sum(axis=1) / d
    if np.any(means <= 0.0):
        return False
    off = arr + np.where(np.eye(d, dtype=bool), -np.inf, 0.0)
    return bool(np.all(means > off.max(axis=1)))


def is_p_matrix(m, eps: float | None = None) -> ClassVerdict:
    """P-matrix test: all principal minors strictly positive.

    Routes: symmetric matrices of any size through eigenvalues (exact);
    asymmetric matrices up to ``P_EXACT_CAP`` through the full minor scan
    (exact, with the first failing index set as witness); larger asymmetric
    matrices through sufficient conditions only, returning ``holds=None``
    when none applies.
    """
    arr = _validated(m)
    d = arr.shape[0]
    if d == 0:
        return ClassVerdict(True, "empty", None)
    if eps is None:
        eps = det_eps(arr)

    if is_symmetric(arr):
        lam_min = float(np.linalg.eigvalsh(arr)[0])
        if lam_min > eps:
            return ClassVerdict(True, "symmetric-eigen", None)
        return ClassVerdict(False, "symmetric-eigen", lam_min)

    if d <= P_EXACT_CAP:
        ok, witness = minor_scan(arr, eps)
        if ok:
            return ClassVerdict(True, "exact-minors", None)
        return ClassVerdict(False, "exact-minors", witness)

    if np.all(np.diag(arr) > 0.0) and is_strictly_row_dd(arr):
        return ClassVerdict(True, "sufficient-row-dominance", None)
    if is_positive_definite(arr, eps):
        return ClassVerdict(True, "sufficient-definiteness", None)
    if is_b_matrix(arr):
        return ClassVerdict(True, "sufficient-row-mean", None)
    return ClassVerdict(None, "unknown", None)


def schur_complement(m, keep, eliminate) -> np.ndarray:
    """Eliminate a block: m[keep,keep] - m[keep,elim] m[elim,elim]^-1 m[elim,keep].

    Solved through a factorization of the eliminated block, never an explicit
    inverse.  Raises :class:`SingularBlockError` when the eliminated block's
    condition estimate reaches ``COND_CAP``.
    """
    arr = _validated(m)
    keep = np.asarray(keep, dtype=np.intp).reshape(-1)
    elim = np.asarray(eliminate, dtype=np.intp).reshape(-1)
    if np.intersect1d(keep, elim).size:
        raise ShapeError("keep and eliminate index sets overlap")
    if elim.size == 0:
        return arr[np.ix_(keep, keep)].copy()
    a = arr[np.ix_(elim, elim)]
    cond = float(np.linalg.cond(a)) if a.size else 0.0
    if not np.isfinite(cond) or cond >= COND_CAP:
        raise SingularBlockError(
            f"eliminated block is numerically singular (cond estimate {cond:.3e})",
            cond=cond,
        )
    if keep.size == 0:
        return np.zeros((0, 0))
    solved = np.linalg.solve(a, arr[np.ix_(elim, keep)])
    return arr[np.ix_(keep, keep)] - arr[np.ix_(keep, elim)] @ solved
