"""Dense Hermitian eigendecomposition with degenerate-block bookkeeping."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

HERMITIAN_TOL = 1e-10
DEGENERACY_TOL = 1e-8
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in descending order, eigenvectors as columns.

    ``blocks`` lists index ranges of numerically degenerate eigenvalues
    (consecutive values within ``DEGENERACY_TOL * ||H||``).
    """

    values: np.ndarray
    vectors: np.ndarray
    blocks: tuple[tuple[int, ...], ...]

    def block_of(self, index: int) -> tuple[int, ...]:
        for block in self.blocks:
            if index in block:
                return block
        raise IndexError(index)

    def projector(self, block: tuple[int, ...]) -> np.ndarray:
        v = self.vectors[:, list(block)]
        return v @ v.conj().T


def check_hermitian(h: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {h.shape}")
    scale = max(1.0, float(np.max(np.abs(h))) if h.size else 1.0)
    if np.max(np.abs(h - h.conj().T), initial=0.0) > tol * scale:
        raise ValidationError("matrix is not Hermitian")
    return h


def jacobi_eigh(h: np.ndarray, tol: float = JACOBI_TOL,
                max_sweeps: int = JACOBI_MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic complex Jacobi rotations.

    Each rotation first removes the phase of ``a[p, q]`` with a diagonal
    unitary, then applies the real symmetric Jacobi rotation. Stops when the
    off-diagonal Frobenius norm drops below ``tol * ||H||_F``.
    """
    a = np.array(h, dtype=complex)
    a = 0.5 * (a + a.conj().T)
    dim = a.shape[0]
    v = np.eye(dim, dtype=complex)
    norm = np.linalg.norm(a)
    if norm == 0.0 or dim == 1:
        return np.real(np.diag(a)).copy(), v
    threshold = tol * norm
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= threshold:
            break
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                apq = a[p, q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                phase = apq / r
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * r)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                v[:, idx] = v[:, idx] @ rot
    else:
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off > threshold:
            raise np.linalg.LinAlgError("Jacobi iteration did not converge")
    return np.real(np.diag(a)).copy(), v


def _blocks(values: np.ndarray, tol: float) -> tuple[tuple[int, ...], ...]:
    blocks: list[list[int]] = []
    for i, lam in enumerate(values):
        if blocks and abs(values[blocks[-1][-1]] - lam) <= tol:
            blocks[-1].append(i)
        else:
            blocks.append([i])
    return tuple(tuple(b) for b in blocks)


def hermitian_eig(h: np.ndarray, method: str = "lapack",
                  degeneracy_tol: float = DEGENERACY_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    ``method="lapack"`` uses ``numpy.linalg.eigh``; ``method="jacobi"`` runs
    the self-contained cyclic Jacobi solver.
    """
    h = check_hermitian(h)
    if method == "lapack":
        w, v = np.linalg.eigh(h)
    elif method == "jacobi":
        w, v = jacobi_eigh(h)
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    order = np.argsort(-w, kind="stable")
    w, v = w[order], v[:, order]
    scale = max(float(np.max(np.abs(w))), 1e-300) if w.size else 1.0
    return EigenDecomposition(w, v, _blocks(w, degeneracy_tol * scale))


def numerical_rank(values: np.ndarray, tol: float) -> int:
    return int(np.sum(np.abs(values) > tol))
