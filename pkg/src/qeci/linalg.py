"""Dense complex linear algebra for small composite quantum systems."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_EIG_TOL = 1e-10
MAX_JACOBI_SWEEPS = 100


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes or subsystem dimensions."""


class NotHermitian(ValueError):
    """Matrix deviates from its conjugate transpose beyond tolerance."""


class EigenConvergenceError(RuntimeError):
    """Jacobi sweeps exhausted before the off-diagonal mass dropped below tolerance."""


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    ``eigenvalues`` is real and sorted in non-increasing order; column i of
    ``eigenvectors`` is the orthonormal eigenvector paired with eigenvalue i.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def require_finite(a: np.ndarray, name: str = "matrix") -> None:
    """Reject NaN/Inf entries before they poison downstream arithmetic."""
    if not np.isfinite(np.asarray(a)).all():
        raise ValueError(f"{name} contains non-finite entries")


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product with an explicit inner-dimension check."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatch(
            f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1] if b.ndim > 1 else 1}"
        )
    return a @ b


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=complex).conj().T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, first factor on the coarse (row-major) index."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def frobenius_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(a)))


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eig(
    a: np.ndarray,
    eig_tol: float = DEFAULT_EIG_TOL,
    herm_tol: float = 1e-9,
    max_sweeps: int = MAX_JACOBI_SWEEPS,
) -> EigenDecomposition:
    """Eigendecompose a complex Hermitian matrix by cyclic Jacobi rotations.

    Each pivot is annihilated by a complex plane rotation (a phase factor
    composed with a real Givens rotation). Sweeps stop once the off-diagonal
    Frobenius mass falls below ``eig_tol`` times the matrix norm.

    Returns eigenvalues sorted descending, ties keeping sweep output order.
    Each eigenvector is rephased so its largest-magnitude component is real
    and positive, which pins the gauge for non-degenerate spectra.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    require_finite(a)
    n = a.shape[0]
    norm = frobenius_norm(a)
    if frobenius_norm(a - a.conj().T) > herm_tol * max(norm, 1.0):
        raise NotHermitian(
            f"hermiticity residual {frobenius_norm(a - a.conj().T):.3e} exceeds "
            f"{herm_tol:.1e} * norm"
        )

    # Average out the (already sub-tolerance) anti-Hermitian part.
    w = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    target = eig_tol * max(norm, np.finfo(float).tiny)

    converged = _offdiag_norm(w) <= target
    for _ in range(max_sweeps):
        if converged:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                beta = w[p, q]
                mag = abs(beta)
                if mag == 0.0:
                    continue
                phase = beta / mag
                tau = (w[q, q].real - w[p, p].real) / (2.0 * mag)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # Unitary G: G[p,p]=c, G[p,q]=s, G[q,p]=-s*conj(phase), G[q,q]=c*conj(phase).
                wp, wq = w[:, p].copy(), w[:, q].copy()
                w[:, p] = c * wp - s * np.conj(phase) * wq
                w[:, q] = s * wp + c * np.conj(phase) * wq
                wp, wq = w[p, :].copy(), w[q, :].copy()
                w[p, :] = c * wp - s * phase * wq
                w[q, :] = s * wp + c * phase * wq
                w[p, q] = 0.0
                w[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(phase) * vq
                v[:, q] = s * vp + c * np.conj(phase) * vq
        converged = _offdiag_norm(w) <= target
    if not converged:
        raise EigenConvergenceError(
            f"off-diagonal mass {_offdiag_norm(w):.3e} above target after {max_sweeps} sweeps"
        )

    values = np.diag(w).real.copy()
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = v[:, order]
    for j in range(n):
        k = int(np.argmax(np.abs(vectors[:, j])))
        pivot = vectors[k, j]
        if abs(pivot) > 0.0:
            vectors[:, j] *= np.conj(pivot) / abs(pivot)
    return EigenDecomposition(eigenvalues=values, eigenvectors=vectors)


def partial_trace(rho: np.ndarray, dim_a: int, dim_b: int, traced_side: str) -> np.ndarray:
    """Trace out one subsystem of a bipartite matrix on C^dim_a (x) C^dim_b.

    ``traced_side`` is "A" or "B"; the result lives on the remaining factor.
    """
    rho = np.asarray(rho, dtype=complex)
    d = dim_a * dim_b
    if rho.shape != (d, d):
        raise DimensionMismatch(
            f"matrix shape {rho.shape} incompatible with subsystem dims ({dim_a}, {dim_b})"
        )
    r = rho.reshape(dim_a, dim_b, dim_a, dim_b)
    if traced_side == "B":
        return np.einsum("ikjk->ij", r)
    if traced_side == "A":
        return np.einsum("ikil->kl", r)
    raise ValueError(f"traced_side must be 'A' or 'B', got {traced_side!r}")


def swap_subsystems(rho_ab: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    """Reorder a bipartite matrix from A(x)B to B(x)A index convention.

    Pure index permutation, hence an exact involution.
    """
    rho_ab = np.asarray(rho_ab, dtype=complex)
    d = dim_a * dim_b
    if rho_ab.shape != (d, d):
        raise DimensionMismatch(
            f"matrix shape {rho_ab.shape} incompatible with subsystem dims ({dim_a}, {dim_b})"
        )
    r = rho_ab.reshape(dim_a, dim_b, dim_a, dim_b)
    return np.ascontiguousarray(r.transpose(1, 0, 3, 2)).reshape(d, d)
