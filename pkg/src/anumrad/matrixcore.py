# src/anumrad/matrixcore.py

"""Dense complex matrix primitives: validation, Hermitian eigendecomposition,
SVD, Moore-Penrose pseudoinverse, PSD square root and range basis.

All routines work on plain ``numpy.ndarray`` values with dtype complex128.
Matrices are desk-scale (n <= ~64); numpy/LAPACK is used throughout.
"""

from __future__ import annotations

from typing import NamedTuple, Tuple

import numpy as np

from .errors import NoConvergence, NotHermitian, NotPSD

DEFAULT_RANK_TOL = 1e-10


def as_cmatrix(a) -> np.ndarray:
    """Validate and coerce input to a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"matrix dimensions must be positive, got {m.shape}")
    if not (np.isfinite(m.real).all() and np.isfinite(m.imag).all()):
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return m


def as_cvector(a, dim: int | None = None) -> np.ndarray:
    """Validate and coerce input to a finite 1-D complex128 vector."""
    v = np.asarray(a, dtype=np.complex128).reshape(-1)
    if not (np.isfinite(v.real).all() and np.isfinite(v.imag).all()):
        raise ValueError("vector entries must be finite (no NaN/Inf)")
    if dim is not None and v.shape[0] != dim:
        raise ValueError(f"expected a vector of length {dim}, got {v.shape[0]}")
    return v


def frob(m) -> float:
    return float(np.linalg.norm(m, "fro"))


def spec_norm(m) -> float:
    """Spectral norm (largest singular value)."""
    if min(m.shape) == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def herm_part(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


class EigDecomp(NamedTuple):
    """Hermitian eigendecomposition H = V diag(lam) V*, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def herm_eig(h, tol: float = DEFAULT_RANK_TOL) -> EigDecomp:
    """Eigendecomposition of a Hermitian matrix.

    Requires ||H - H*||_F <= tol*(1 + ||H||_F); raises NotHermitian otherwise.
    Eigenvalues come back sorted ascending with orthonormal eigenvectors.
    """
    h = as_cmatrix(h)
    if h.shape[0] != h.shape[1]:
        raise NotHermitian(f"matrix is not square: {h.shape}")
    dev = frob(h - h.conj().T)
    if dev > tol * (1.0 + frob(h)):
        raise NotHermitian(f"Hermitian deviation {dev:.3e} exceeds tolerance")
    try:
        lam, v = np.linalg.eigh(herm_part(h))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    return EigDecomp(lam, v)


def svd(m) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Singular value decomposition M = U diag(s) V*, s descending.

    Returns (U, s, V); note V (not its conjugate transpose) is returned.
    """
    m = as_cmatrix(m)
    try:
        u, s, vh = np.linalg.svd(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NoConvergence(str(exc)) from exc
    return u, s, vh.conj().T


def singular_values(m) -> np.ndarray:
    m = as_cmatrix(m)
    try:
        return np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NoConvergence(str(exc)) from exc


def pinv(m, rel_rank_tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse with singular values below
    rel_rank_tol * sigma_max treated as zero."""
    if rel_rank_tol <= 0:
        raise ValueError("rel_rank_tol must be positive")
    m = as_cmatrix(m)
    return np.linalg.pinv(m, rcond=rel_rank_tol)


def psd_sqrt(a, rel_rank_tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Hermitian PSD square root via eigendecomposition.

    Eigenvalues below -rel_rank_tol * ||A|| raise NotPSD; small negative
    rounding dust is clamped to zero.
    """
    lam, v = herm_eig(a, tol=rel_rank_tol)
    scale = float(np.max(np.abs(lam))) if lam.size else 0.0
    if lam.size and float(lam[0]) < -rel_rank_tol * scale:
        raise NotPSD(f"eigenvalue {lam[0]:.3e} below -tol*||A||")
    root = np.sqrt(np.clip(lam, 0.0, None))
    s = (v * root) @ v.conj().T
    return herm_part(s)


def range_basis(a, rel_rank_tol: float = DEFAULT_RANK_TOL) -> Tuple[np.ndarray, int]:
    """Orthonormal basis of the range of a Hermitian PSD matrix.

    Returns (U, r) where the n x r columns of U span the eigenspaces with
    eigenvalue > rel_rank_tol * lambda_max; r is the numerical rank.
    Columns are ordered by descending eigenvalue (dominant direction first).
    """
    lam, v = herm_eig(a, tol=rel_rank_tol)
    scale = float(np.max(np.abs(lam))) if lam.size else 0.0
    if lam.size and float(lam[0]) < -rel_rank_tol * scale:
        raise NotPSD(f"eigenvalue {lam[0]:.3e} below -tol*||A||")
    mask = lam > rel_rank_tol * scale
    sel = np.nonzero(mask)[0]
    sel = sel[np.argsort(-lam[sel], kind="stable")]
    return v[:, sel], int(mask.sum())
