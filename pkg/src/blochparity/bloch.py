"""Bloch (Pauli-basis) expansion of qubit operators and the even/odd split.

Coefficient extraction runs one fast Walsh-Hadamard transform per X-pattern:
for fixed ``x`` the trace ``Tr(P_{x,z} rho)`` over all ``z`` is the Hadamard
transform of the diagonal band ``rho[c, c ^ x]``. The full scan costs
``O(4^n n)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping

import numpy as np

from .errors import DimensionCapError, ValidationError
from .pauli import MATRIX_QUBIT_CAP, PauliString, apply
from .states import QuantumState, as_density

FULL_DECOMPOSITION_CAP = 8
COEFF_CUTOFF = 1e-12
REAL_TOL = 1e-10


def _popcounts(v: np.ndarray) -> np.ndarray:
    return np.bitwise_count(v).astype(np.int64)


def walsh_hadamard(a: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform along the last axis (length 2^n)."""
    a = np.array(a, dtype=complex)
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        a = a.reshape(*lead, size // (2 * h), 2, h)
        top, bot = a[..., 0, :], a[..., 1, :]
        a = np.stack((top + bot, top - bot), axis=-2)
        h *= 2
    return a.reshape(*lead, size)


def _key(p) -> tuple[int, int]:
    if isinstance(p, PauliString):
        return p.key
    if isinstance(p, str):
        return PauliString.from_label(p).key
    return tuple(p)


@dataclass(frozen=True)
class BlochVector:
    """Sparse real expansion ``sum_p c_p P`` keyed by the ``(x, z)`` bit pair.

    The identity coefficient is stored like any other term. Coefficients with
    modulus below ``1e-12`` are dropped on construction.
    """

    n: int
    terms: Mapping[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        mask = (1 << self.n) - 1
        clean = {}
        for k, c in self.terms.items():
            k = _key(k)
            if k[0] & ~mask or k[1] & ~mask:
                raise ValidationError(f"term {k} does not fit {self.n} qubits")
            c = float(c)
            if not np.isfinite(c):
                raise ValidationError("Bloch coefficient is NaN or Inf")
            if abs(c) >= COEFF_CUTOFF:
                clean[k] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def from_labels(cls, n: int, coeffs: Mapping[str, float]) -> "BlochVector":
        terms: dict[tuple[int, int], float] = {}
        for label, c in coeffs.items():
            p = PauliString.from_label(label)
            if p.n != n:
                raise ValidationError(f"label {label!r} does not have {n} qubits")
            if p.phase not in (0, 2):
                raise ValidationError(f"label {label!r} carries an imaginary phase")
            sign = -1.0 if p.phase == 2 else 1.0
            terms[p.key] = terms.get(p.key, 0.0) + sign * c
        return cls(n, terms)

    @classmethod
    def from_dense(cls, n: int, coeffs: np.ndarray) -> "BlochVector":
        """From a ``(2^n, 2^n)`` array indexed ``[x, z]``."""
        xs, zs = np.nonzero(np.abs(coeffs) >= COEFF_CUTOFF)
        return cls(n, {(int(x), int(z)): float(coeffs[x, z]) for x, z in zip(xs, zs)})

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[PauliString, float]]:
        for (x, z), c in self.terms.items():
            yield PauliString(self.n, x, z), c

    def coefficient(self, p) -> float:
        return self.terms.get(_key(p), 0.0)

    def labels(self) -> dict[str, float]:
        return {p.label(): c for p, c in self}

    def weights(self) -> set[int]:
        return {p.weight for p, _ in self}

    def dense(self) -> np.ndarray:
        out = np.zeros((1 << self.n, 1 << self.n))
        for (x, z), c in self.terms.items():
            out[x, z] = c
        return out

    def filter(self, predicate) -> "BlochVector":
        return BlochVector(self.n, {k: c for k, c in self.terms.items()
                                    if predicate(PauliString(self.n, *k))})

    def __add__(self, other: "BlochVector") -> "BlochVector":
        if other.n != self.n:
            raise ValidationError("size mismatch")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0.0) + c
        return BlochVector(self.n, terms)

    def __neg__(self) -> "BlochVector":
        return self.scaled(-1.0)

    def __sub__(self, other: "BlochVector") -> "BlochVector":
        return self + (-other)

    def scaled(self, factor: float) -> "BlochVector":
        return BlochVector(self.n, {k: factor * c for k, c in self.terms.items()})

    def max_abs_difference(self, other: "BlochVector") -> float:
        keys = set(self.terms) | set(other.terms)
        return max((abs(self.terms.get(k, 0.0) - other.terms.get(k, 0.0)) for k in keys),
                   default=0.0)

    def to_operator(self) -> np.ndarray:
        """Dense ``sum_p c_p P`` (no ``1/2^n`` normalization)."""
        return synthesize(self.n, self.dense())

    def norm_squared(self) -> float:
        return float(sum(c * c for c in self.terms.values()))


def _check_full_cap(n: int, cap: int) -> None:
    if n > cap:
        raise DimensionCapError(f"full Bloch scan of {n} qubits exceeds the cap of {cap}")


def pauli_coefficients(rho: np.ndarray) -> np.ndarray:
    """Complex ``Tr(P_{x,z} rho)`` for all strings, as a ``[x, z]`` array.

    Works for any square operator; Hermitian input gives real output.
    """
    rho = np.asarray(rho, dtype=complex)
    dim = rho.shape[0]
    c = np.arange(dim)
    xs = np.arange(dim)
    band = rho[c[None, :], c[None, :] ^ xs[:, None]]
    w = walsh_hadamard(band)
    ny = _popcounts(xs[:, None] & xs[None, :]) % 4
    return (1j ** ny) * w


def synthesize(n: int, coeffs: np.ndarray) -> np.ndarray:
    """Dense ``sum_{x,z} coeffs[x, z] P_{x,z}``; inverse of ``pauli_coefficients`` up to ``2^n``."""
    dim = 1 << n
    xs = np.arange(dim)
    ny = _popcounts(xs[:, None] & xs[None, :]) % 4
    u = walsh_hadamard(np.asarray(coeffs, dtype=complex) * (1j ** ny))
    out = np.zeros((dim, dim), dtype=complex)
    c = np.arange(dim)
    # u[x, c] is the entry at row c ^ x, column c
    out[c[None, :] ^ xs[:, None], c[None, :]] = u
    return out


def bloch_decompose(state, cap: int = FULL_DECOMPOSITION_CAP) -> BlochVector:
    """All ``4^n`` coefficients ``c_p = Tr(P rho)`` of a qubit state or Hermitian matrix."""
    if isinstance(state, QuantumState) and state.d != 2:
        raise ValidationError("Bloch decomposition is defined for qubits only")
    rho = as_density(state)
    n = _n_from_dim(rho.shape[0])
    _check_full_cap(n, cap)
    if np.max(np.abs(rho - rho.conj().T)) > REAL_TOL * max(1.0, np.max(np.abs(rho))):
        raise ValidationError("operator is not Hermitian")
    coeffs = pauli_coefficients(rho)
    if np.max(np.abs(coeffs.imag)) > REAL_TOL * max(1.0, np.max(np.abs(rho))) * rho.shape[0]:
        raise ValidationError("Bloch coefficients are not real")
    return BlochVector.from_dense(n, coeffs.real)


def bloch_coefficient(state, p: PauliString) -> float:
    """Single coefficient ``Tr(P rho)`` via the sparse Pauli action (cap 12 qubits)."""
    if p.n > MATRIX_QUBIT_CAP:
        raise DimensionCapError(f"{p.n} qubits exceeds the cap of {MATRIX_QUBIT_CAP}")
    if isinstance(state, QuantumState) and state.is_pure:
        return float(np.real(np.vdot(state.data, apply(p.unsigned(), state.data))))
    rho = as_density(state)
    return float(np.real(np.trace(apply(p.unsigned(), rho))))


def operator_bloch(op: np.ndarray, cap: int = FULL_DECOMPOSITION_CAP) -> BlochVector:
    """Coefficients ``c`` with ``op = sum_p c_p P``; inverse of ``BlochVector.to_operator``."""
    op = np.asarray(op, dtype=complex)
    return bloch_decompose(op, cap).scaled(1.0 / op.shape[0])


def bloch_reconstruct(b: BlochVector, as_state: bool = False):
    """``(1/2^n) sum_p c_p P``; a validated mixed ``QuantumState`` when ``as_state``."""
    op = b.to_operator() / (1 << b.n)
    if as_state:
        return QuantumState.mixed(op, tol=1e-10)
    return op


def weight_filter(b: BlochVector, j: int) -> BlochVector:
    if not 0 <= j <= b.n:
        raise ValidationError(f"weight {j} outside 0..{b.n}")
    return b.filter(lambda p: p.weight == j)


def _n_from_dim(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise ValidationError(f"dimension {dim} is not a power of two")
    return n


@dataclass(frozen=True)
class EvenOddSplit:
    """Even (weight 0 excluded) and odd parts of a state's Bloch expansion."""

    n: int
    even: BlochVector
    odd: BlochVector

    @cached_property
    def even_matrix(self) -> np.ndarray:
        return self.even.to_operator()

    @cached_property
    def odd_matrix(self) -> np.ndarray:
        return self.odd.to_operator()

    @cached_property
    def even_spectrum(self) -> np.ndarray:
        return np.sort(np.linalg.eigvalsh(self.even_matrix))[::-1]

    @cached_property
    def odd_spectrum(self) -> np.ndarray:
        return np.sort(np.linalg.eigvalsh(self.odd_matrix))[::-1]

    def reassemble(self) -> np.ndarray:
        """``(1 + P_e + P_o) / 2^n``."""
        dim = 1 << self.n
        return (np.eye(dim) + self.even_matrix + self.odd_matrix) / dim


def split_bloch(b: BlochVector) -> EvenOddSplit:
    even = b.filter(lambda p: p.weight > 0 and p.weight % 2 == 0)
    odd = b.filter(lambda p: p.weight % 2 == 1)
    return EvenOddSplit(b.n, even, odd)


def even_odd_split(state) -> EvenOddSplit:
    return split_bloch(bloch_decompose(state))
