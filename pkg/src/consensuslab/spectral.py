"""Eigendecomposition of symmetric weight matrices and eigenpair verification.

The solver is a cyclic-sweep Jacobi iteration: simple, robust, and fully
deterministic (fixed sweep order, fixed eigenvector sign convention), which
keeps every downstream analysis reproducible bit-for-bit on a given
machine. Network sizes here are small, so no sparse or Krylov machinery
is warranted.

Spectra of the 2n-by-2n stacked iteration matrix are never computed with a
general eigensolver. They come from the closed-form quadratic mapping in
`analysis`, and `verify_augmented_eigenpair` certifies each mapped pair by
an explicit residual against the block matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import build_augmented
from .errors import DominantNotSimple, NoConvergence, NotSymmetric
from .net import SYMMETRY_TOL, WeightedAdjacency

OFFDIAG_TARGET = 1e-14
MAX_SWEEPS = 100


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Real eigenvalues sorted descending with orthonormal eigenvectors.

    Column i of `eigenvectors` pairs with `eigenvalues[i]`. For a valid
    symmetric row-stochastic irreducible input the leading eigenvalue is 1
    and all others lie in [-1, 1).
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _offdiag_norm(M: np.ndarray) -> float:
    sq = M * M
    np.fill_diagonal(sq, 0.0)
    return math.sqrt(float(sq.sum()))


def _jacobi(W: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi sweeps; returns (diagonalized copy, rotation product)."""
    n = W.shape[0]
    M = W.copy()
    V = np.eye(n)
    for _ in range(MAX_SWEEPS):
        if _offdiag_norm(M) < OFFDIAG_TARGET:
            return M, V
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = M[p, q]
                if apq == 0.0:
                    continue
                diff = M[q, q] - M[p, p]
                if abs(apq) < 1e-36 * abs(diff):
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (
                        abs(theta) + math.hypot(theta, 1.0)
                    )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                cp, cq = M[:, p].copy(), M[:, q].copy()
                M[:, p] = c * cp - s * cq
                M[:, q] = s * cp + c * cq
                rp, rq = M[p, :].copy(), M[q, :].copy()
                M[p, :] = c * rp - s * rq
                M[q, :] = s * rp + c * rq
                # the rotation is built to annihilate this pivot exactly
                M[p, q] = 0.0
                M[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    off = _offdiag_norm(M)
    if off < OFFDIAG_TARGET:
        return M, V
    raise NoConvergence(MAX_SWEEPS, off)


def eigendecompose_symmetric(A: WeightedAdjacency) -> Spectrum:
    """Full eigendecomposition of a symmetric weight matrix.

    The input must be symmetric to 1e-12 entrywise. Eigenvalues come back
    sorted descending; eigenvectors are orthonormal columns with the first
    significant component of each made positive, so identical inputs give
    identical output arrays.
    """
    W = A.weights
    asym = float(np.max(np.abs(W - W.T)))
    if asym > SYMMETRY_TOL:
        raise NotSymmetric(f"matrix is asymmetric by {asym:.3e}")
    M, V = _jacobi(W)
    vals = np.diag(M).copy()
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vecs = V[:, order].copy()
    for i in range(vecs.shape[1]):
        col = vecs[:, i]
        sig = np.nonzero(np.abs(col) > 1e-8)[0]
        if sig.size and col[sig[0]] < 0.0:
            vecs[:, i] = -col
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return Spectrum(eigenvalues=vals, eigenvectors=vecs)


def rho_ess(spec: Spectrum) -> float:
    """Essential spectral radius: max modulus over non-dominant eigenvalues.

    Zero when the whole spectrum is 1. Raises DominantNotSimple when a
    second eigenvalue sits at 1, which signals a reducible network.
    """
    w = spec.eigenvalues
    if np.all(np.abs(w - 1.0) <= 1e-10):
        return 0.0
    if w.size >= 2 and w[1] > 1.0 - 1e-10:
        raise DominantNotSimple(
            f"second eigenvalue {w[1]!r} is within 1e-10 of 1"
        )
    return float(np.max(np.abs(w[1:])))


def augmented_eigenvector(lam_hat: complex, v) -> np.ndarray:
    """Eigenvector [lam_hat * v; v] of the stacked iteration matrix.

    v is the eigenvector of the weight matrix whose eigenvalue maps to
    lam_hat; the stacked vector is complex whenever lam_hat is.
    """
    v = np.asarray(v, dtype=float)
    lam_hat = complex(lam_hat)
    return np.concatenate([lam_hat * v, v.astype(complex)])


def verify_augmented_eigenpair(
    A: WeightedAdjacency,
    gamma: float,
    lam: float,
    lam_hat: complex,
    v,
) -> float:
    """Residual of the stacked eigenvector construction.

    Given an eigenpair (lam, v) of A and a mapped eigenvalue lam_hat of
    the stacked iteration matrix, builds [lam_hat * v; v] and returns
    the max-norm residual of the eigen-equation on the explicit block
    matrix. Callers treat residuals <= 1e-9 as a verified pair.
    """
    vhat = augmented_eigenvector(lam_hat, v)
    M = build_augmented(A, gamma).matrix
    resid = M @ vhat - complex(lam_hat) * vhat
    return float(np.max(np.abs(resid)))
