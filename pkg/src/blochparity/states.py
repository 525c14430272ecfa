"""Pure and mixed states of n qudits, partial traces and random sampling."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ValidationError

STATE_TOL = 1e-12
POSITIVITY_TOL = 1e-10
PHASE_CUTOFF = 1e-9


def canonical_phase(vec: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the first amplitude above 1e-9 in modulus is real positive."""
    vec = np.asarray(vec, dtype=complex)
    nz = np.flatnonzero(np.abs(vec) > PHASE_CUTOFF)
    if nz.size == 0:
        return vec.copy()
    lead = vec[nz[0]]
    return vec * (abs(lead) / lead)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


def _infer_parties(dim: int, d: int) -> int:
    n = 0
    rem = dim
    while rem > 1 and rem % d == 0:
        rem //= d
        n += 1
    if rem != 1 or n == 0:
        raise ValidationError(f"dimension {dim} is not a power of the local dimension {d}")
    return n


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Immutable state on ``n`` parties of local dimension ``d``.

    ``data`` is a unit vector for ``kind == "pure"`` (stored with the
    canonical global phase) and a density matrix for ``kind == "mixed"``.
    """

    n: int
    d: int
    kind: str
    data: np.ndarray

    @classmethod
    def pure(cls, vec, d: int = 2, tol: float = STATE_TOL) -> "QuantumState":
        vec = np.asarray(vec, dtype=complex).reshape(-1)
        if not np.all(np.isfinite(vec)):
            raise ValidationError("state vector contains NaN or Inf")
        n = _infer_parties(vec.size, d)
        norm = np.linalg.norm(vec)
        if abs(norm - 1.0) > tol:
            raise ValidationError(f"state vector has norm {norm!r}, expected 1")
        return cls(n, d, "pure", _frozen(canonical_phase(vec / norm)))

    @classmethod
    def normalized(cls, vec, d: int = 2) -> "QuantumState":
        vec = np.asarray(vec, dtype=complex).reshape(-1)
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise ValidationError("cannot normalize the zero vector")
        return cls.pure(vec / norm, d)

    @classmethod
    def mixed(cls, rho, d: int = 2, tol: float = STATE_TOL,
              positivity_tol: float = POSITIVITY_TOL) -> "QuantumState":
        rho = np.asarray(rho, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValidationError(f"density matrix must be square, got {rho.shape}")
        if not np.all(np.isfinite(rho)):
            raise ValidationError("density matrix contains NaN or Inf")
        n = _infer_parties(rho.shape[0], d)
        if np.max(np.abs(rho - rho.conj().T)) > tol:
            raise ValidationError("density matrix is not Hermitian")
        tr = np.trace(rho).real
        if abs(tr - 1.0) > tol:
            raise ValidationError(f"density matrix has trace {tr!r}, expected 1")
        lam_min = np.linalg.eigvalsh(rho).min()
        if lam_min < -positivity_tol:
            raise ValidationError(f"density matrix has negative eigenvalue {lam_min!r}")
        return cls(n, d, "mixed", _frozen(0.5 * (rho + rho.conj().T)))

    @property
    def dim(self) -> int:
        return self.d ** self.n

    @property
    def is_pure(self) -> bool:
        return self.kind == "pure"

    @property
    def vector(self) -> np.ndarray:
        if not self.is_pure:
            raise ValidationError("mixed state has no state vector")
        return self.data

    def density(self) -> np.ndarray:
        if self.is_pure:
            return np.outer(self.data, self.data.conj())
        return self.data

    def purity(self) -> float:
        if self.is_pure:
            return 1.0
        return float(np.real(np.vdot(self.data, self.data)))

    def as_mixed(self) -> "QuantumState":
        return QuantumState(self.n, self.d, "mixed", _frozen(self.density()))

    def fidelity(self, other: "QuantumState") -> float:
        """Overlap fidelity; defined when at least one argument is pure."""
        if self.is_pure and other.is_pure:
            return float(abs(np.vdot(self.data, other.data)) ** 2)
        if self.is_pure:
            return float(np.real(np.vdot(self.data, other.density() @ self.data)))
        if other.is_pure:
            return other.fidelity(self)
        raise ValidationError("fidelity of two mixed states is not supported")


def as_density(state) -> np.ndarray:
    if isinstance(state, QuantumState):
        return state.density()
    return np.asarray(state, dtype=complex)


def _keep_list(keep: Iterable[int], n: int) -> list[int]:
    keep = sorted(set(keep))
    if any(q < 1 or q > n for q in keep):
        raise ValidationError(f"party indices must lie in 1..{n}, got {keep}")
    return keep


def partial_trace_matrix(rho: np.ndarray, keep: Sequence[int], n: int, d: int = 2) -> np.ndarray:
    """Reduced matrix on the 1-based parties ``keep`` (kept in ascending order)."""
    keep = _keep_list(keep, n)
    rho = np.asarray(rho)
    if not keep:
        return np.array([[np.trace(rho)]])
    traced = [q - 1 for q in range(1, n + 1) if q not in keep]
    kept = [q - 1 for q in keep]
    t = rho.reshape([d] * (2 * n))
    perm = kept + traced + [n + q for q in kept] + [n + q for q in traced]
    t = t.transpose(perm)
    dk, dt = d ** len(kept), d ** len(traced)
    t = t.reshape(dk, dt, dk, dt)
    return np.einsum("ajbj->ab", t)


def partial_trace(state: QuantumState, keep: Iterable[int]) -> QuantumState:
    keep = _keep_list(keep, state.n)
    if state.is_pure and keep:
        psi = state.data.reshape([state.d] * state.n)
        traced = [q - 1 for q in range(1, state.n + 1) if q not in keep]
        kept = [q - 1 for q in keep]
        m = psi.transpose(kept + traced).reshape(state.d ** len(kept), -1)
        red = m @ m.conj().T
    else:
        red = partial_trace_matrix(state.density(), keep, state.n, state.d)
    if not keep:
        return red
    return QuantumState(len(keep), state.d, "mixed", _frozen(red))


def embed(op: np.ndarray, parties: Sequence[int], n: int, d: int = 2) -> np.ndarray:
    """Tensor ``op`` (acting on ``parties`` in ascending order) with identities elsewhere."""
    parties = _keep_list(parties, n)
    k = len(parties)
    rest = [q for q in range(1, n + 1) if q not in parties]
    full = np.kron(np.asarray(op), np.eye(d ** len(rest)))
    order = parties + rest  # current factor order
    t = full.reshape([d] * (2 * n))
    # axis i currently holds party order[i]; move to natural order
    inv = [order.index(q) for q in range(1, n + 1)]
    t = t.transpose(inv + [n + i for i in inv])
    return t.reshape(d ** n, d ** n)


def random_pure_state(n: int, seed: int | None = None, d: int = 2,
                      rng: np.random.Generator | None = None) -> QuantumState:
    """Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized."""
    rng = np.random.default_rng(seed) if rng is None else rng
    dim = d ** n
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return QuantumState.pure(vec / np.linalg.norm(vec), d)


def random_mixed_state(n: int, seed: int | None = None, d: int = 2, rank: int | None = None,
                       rng: np.random.Generator | None = None) -> QuantumState:
    """Induced-measure random density matrix ``G G^dag / Tr`` with ``G`` of shape dim x rank."""
    rng = np.random.default_rng(seed) if rng is None else rng
    dim = d ** n
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return QuantumState.mixed(0.5 * (rho + rho.conj().T), d)


def basis_state(bits: str) -> QuantumState:
    vec = np.zeros(2 ** len(bits), dtype=complex)
    vec[int(bits, 2)] = 1.0
    return QuantumState.pure(vec)


def tensor(*states: QuantumState) -> QuantumState:
    d = states[0].d
    if all(s.is_pure for s in states):
        vec = states[0].data
        for s in states[1:]:
            vec = np.kron(vec, s.data)
        return QuantumState.pure(vec, d, tol=1e-10)
    rho = states[0].density()
    for s in states[1:]:
        rho = np.kron(rho, s.density())
    return QuantumState.mixed(rho, d, tol=1e-10)
