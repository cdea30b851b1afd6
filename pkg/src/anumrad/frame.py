# src/anumrad/frame.py

"""Metric frames: a validated positive operator A together with every derived
artifact the A-calculus needs (square root, pseudoinverses, range basis,
orthogonal projector). Frames are immutable and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotPSD
from .matrixcore import (
    DEFAULT_RANK_TOL,
    as_cmatrix,
    as_cvector,
    frob,
    herm_eig,
    herm_part,
    spec_norm,
)


@dataclass(frozen=True)
class AFrame:
    """A positive semidefinite metric A with precomputed derived matrices.

    Fields:
      dim               matrix dimension n
      a                 the metric itself (Hermitian PSD)
      sqrt_a            A^{1/2}
      pinv_sqrt_a       (A^{1/2})^dagger
      pinv_a            A^dagger
      range_u           n x r orthonormal basis of the range of A
      null_u            n x (n-r) orthonormal basis of the null space of A
      rank              numerical rank r
      projector         orthogonal projector onto the range of A (= U U*)
      strictly_positive r == n
      rank_tol          relative eigenvalue cutoff used throughout
    """

    dim: int
    a: np.ndarray
    sqrt_a: np.ndarray
    pinv_sqrt_a: np.ndarray
    pinv_a: np.ndarray
    range_u: np.ndarray
    null_u: np.ndarray
    rank: int
    projector: np.ndarray
    strictly_positive: bool
    rank_tol: float


def _freeze(*mats: np.ndarray) -> None:
    for m in mats:
        m.setflags(write=False)


def new_frame(a, rank_tol: float = DEFAULT_RANK_TOL) -> AFrame:
    """Validate a metric operator and eagerly compute its derived artifacts.

    Raises NotHermitian / NotPSD when A fails to be a positive operator.
    A single eigendecomposition feeds every derived matrix, so they are
    mutually consistent by construction.
    """
    a = as_cmatrix(a).copy()  # frames own (and freeze) their matrices
    n = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise NotHermitian(f"metric must be square, got {a.shape}")
    lam, v = herm_eig(a, tol=rank_tol)
    scale = float(np.max(np.abs(lam))) if n else 0.0
    if n and float(lam[0]) < -rank_tol * scale:
        raise NotPSD(f"eigenvalue {lam[0]:.3e} below -tol*||A||")
    mask = lam > rank_tol * scale
    r = int(mask.sum())
    # dominant eigendirection first (stable within ties), so compressions of
    # diagonal metrics keep the natural coordinate order
    sel = np.nonzero(mask)[0]
    sel = sel[np.argsort(-lam[sel], kind="stable")]
    u = v[:, sel]
    un = v[:, ~mask]
    pos = np.clip(lam[sel], 0.0, None)
    root = np.sqrt(pos)
    sqrt_a = herm_part((u * root) @ u.conj().T)
    pinv_sqrt_a = herm_part((u / root) @ u.conj().T) if r else np.zeros_like(a)
    pinv_a = herm_part((u / pos) @ u.conj().T) if r else np.zeros_like(a)
    projector = herm_part(u @ u.conj().T)
    _freeze(a, sqrt_a, pinv_sqrt_a, pinv_a, u, un, projector)
    return AFrame(
        dim=n,
        a=a,
        sqrt_a=sqrt_a,
        pinv_sqrt_a=pinv_sqrt_a,
        pinv_a=pinv_a,
        range_u=u,
        null_u=un,
        rank=r,
        projector=projector,
        strictly_positive=(r == n),
        rank_tol=rank_tol,
    )


def a_inner(f: AFrame, x, y) -> complex:
    """Semi-inner product <x, y>_A = <Ax, y>, conjugate-linear in y."""
    x = as_cvector(x)
    y = as_cvector(y)
    if x.shape[0] != f.dim or y.shape[0] != f.dim:
        raise DimensionMismatch(
            f"vectors of length {x.shape[0]}, {y.shape[0]} on a dim-{f.dim} frame"
        )
    return complex(np.vdot(y, f.a @ x))


def a_norm_vec(f: AFrame, x) -> float:
    """Seminorm ||x||_A = ||A^{1/2} x||; zero exactly on the null space of A."""
    x = as_cvector(x)
    if x.shape[0] != f.dim:
        raise DimensionMismatch(f"vector of length {x.shape[0]} on a dim-{f.dim} frame")
    return float(np.linalg.norm(f.sqrt_a @ x))


def in_null_space(f: AFrame, x) -> bool:
    """Scale-invariant numerical membership test for the null space of A."""
    x = as_cvector(x, f.dim)
    bound = f.rank_tol * (1.0 + float(np.linalg.norm(x)) * np.sqrt(spec_norm(f.a)))
    return a_norm_vec(f, x) <= bound


def direct_sum(f: AFrame) -> AFrame:
    """Doubled frame for the 2x2 diagonal metric diag(A, A) on H + H.

    Derived matrices are assembled blockwise from the parent frame, so the
    block structure of every artifact is exact.
    """
    n = f.dim

    def blk(m: np.ndarray) -> np.ndarray:
        out = np.zeros((2 * n, 2 * n), dtype=np.complex128)
        out[:n, :n] = m
        out[n:, n:] = m
        return out

    def stack_basis(u: np.ndarray) -> np.ndarray:
        k = u.shape[1]
        out = np.zeros((2 * n, 2 * k), dtype=np.complex128)
        out[:n, :k] = u
        out[n:, k:] = u
        return out

    a2 = blk(f.a)
    sqrt2 = blk(f.sqrt_a)
    pinv_sqrt2 = blk(f.pinv_sqrt_a)
    pinv2 = blk(f.pinv_a)
    proj2 = blk(f.projector)
    u2 = stack_basis(f.range_u)
    un2 = stack_basis(f.null_u)
    _freeze(a2, sqrt2, pinv_sqrt2, pinv2, proj2, u2, un2)
    return AFrame(
        dim=2 * n,
        a=a2,
        sqrt_a=sqrt2,
        pinv_sqrt_a=pinv_sqrt2,
        pinv_a=pinv2,
        range_u=u2,
        null_u=un2,
        rank=2 * f.rank,
        projector=proj2,
        strictly_positive=f.strictly_positive,
        rank_tol=f.rank_tol,
    )


def frame_scale(f: AFrame, t) -> float:
    """Common relative-tolerance scale 1 + ||T||_F * ||A||_F."""
    return 1.0 + frob(as_cmatrix(t)) * frob(f.a)
