"""Symplectic n-qubit Pauli strings.

A string is stored as two n-bit integers ``x`` and ``z`` plus a phase
exponent ``k`` (the operator is ``i**k`` times the tensor product). On each
qubit ``(x, z)`` selects ``I=(0,0)``, ``X=(1,0)``, ``Z=(0,1)`` and
``Y=(1,1)``; the Hermitian Y is used directly, so a string with even ``k``
is Hermitian.

Qubit 1 is the leftmost tensor factor and the most significant bit of a
computational basis index: qubit ``q`` (1-based) lives at bit ``n - q``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

import numpy as np

from .errors import DimensionCapError, ValidationError

MATRIX_QUBIT_CAP = 12

_LABELS = "IXZY"  # indexed by x + 2*z
_PHASE_PREFIX = {0: "", 1: "i", 2: "-", 3: "-i"}


def _popcount(v: int) -> int:
    return v.bit_count()


@dataclass(frozen=True, order=True)
class PauliString:
    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"qubit count must be positive, got {self.n}")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask or self.x < 0 or self.z < 0:
            raise ValidationError("bit vectors exceed the qubit count")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse ``"XIZ"``-style text, optionally prefixed by ``+``, ``-``, ``i`` or ``-i``."""
        s = label.strip()
        phase = 0
        if s.startswith("+"):
            s = s[1:]
        if s.startswith("-"):
            phase = 2
            s = s[1:]
        if s.startswith("i"):
            phase += 1
            s = s[1:]
        if not s:
            raise ValidationError(f"empty Pauli label {label!r}")
        x = z = 0
        for ch in s:
            x <<= 1
            z <<= 1
            if ch == "X":
                x |= 1
            elif ch == "Y":
                x |= 1
                z |= 1
            elif ch == "Z":
                z |= 1
            elif ch != "I":
                raise ValidationError(f"bad Pauli character {ch!r} in {label!r}")
        return cls(len(s), x, z, phase)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0, 0)

    @property
    def key(self) -> tuple[int, int]:
        return (self.x, self.z)

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    def label(self, with_phase: bool = False) -> str:
        chars = []
        for q in range(self.n):
            bit = self.n - 1 - q
            chars.append(_LABELS[((self.x >> bit) & 1) + 2 * ((self.z >> bit) & 1)])
        body = "".join(chars)
        return _PHASE_PREFIX[self.phase] + body if with_phase else body

    def support(self) -> tuple[int, ...]:
        """1-based indices of qubits carrying a non-identity factor."""
        m = self.x | self.z
        return tuple(q for q in range(1, self.n + 1) if (m >> (self.n - q)) & 1)

    def unsigned(self) -> "PauliString":
        return PauliString(self.n, self.x, self.z, 0)

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __str__(self) -> str:
        return self.label(with_phase=True)

    def to_matrix(self) -> np.ndarray:
        return to_matrix(self)


def weight(p: PauliString) -> int:
    return p.weight


def _check_sizes(p: PauliString, q: PauliString) -> None:
    if p.n != q.n:
        raise ValidationError(f"size mismatch: {p.n} vs {q.n} qubits")


def _product_phase(px: int, pz: int, qx: int, qz: int, mask: int) -> int:
    # Exponent g of i in sigma_p * sigma_q = i**g * sigma_{p^q}, summed over qubits.
    xp, yp, zp = px & ~pz & mask, px & pz, ~px & pz & mask
    xq, yq, zq = qx & ~qz & mask, qx & qz, ~qx & qz & mask
    return (
        _popcount(xp & yq) - _popcount(xp & zq)
        + _popcount(yp & zq) - _popcount(yp & xq)
        + _popcount(zp & xq) - _popcount(zp & yq)
    )


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Matrix product ``p @ q`` with the phase tracked exactly mod 4."""
    _check_sizes(p, q)
    mask = (1 << p.n) - 1
    g = _product_phase(p.x, p.z, q.x, q.z, mask)
    return PauliString(p.n, p.x ^ q.x, p.z ^ q.z, p.phase + q.phase + g)


def commutes(p: PauliString, q: PauliString) -> bool:
    _check_sizes(p, q)
    return _popcount((p.x & q.z) ^ (p.z & q.x)) % 2 == 0


def commutator(p: PauliString, q: PauliString) -> PauliString | None:
    """Return ``r`` with ``[p, q] = 2 r``, or ``None`` when the strings commute.

    Anticommuting strings satisfy ``pq - qp = 2 pq``, so ``r`` is just the
    product. Its weight has parity ``wt(p) + wt(q) + 1``.
    """
    if commutes(p, q):
        return None
    return multiply(p, q)


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise DimensionCapError(f"{n} qubits exceeds the cap of {cap}")


def _action(p: PauliString) -> tuple[np.ndarray, np.ndarray]:
    """Rows and values of the one-nonzero-per-column realization.

    Column ``b`` holds ``i**(phase + #Y) * (-1)**popcount(b & z)`` at row ``b ^ x``.
    """
    dim = 1 << p.n
    b = np.arange(dim, dtype=np.int64)
    signs = 1 - 2 * (np.bitwise_count(b & p.z) & 1).astype(np.int64)
    ny = _popcount(p.x & p.z)
    vals = (1j ** ((p.phase + ny) % 4)) * signs
    return b ^ p.x, vals.astype(complex)


def to_matrix(p: PauliString, cap: int = MATRIX_QUBIT_CAP) -> np.ndarray:
    _check_cap(p.n, cap)
    dim = 1 << p.n
    rows, vals = _action(p)
    mat = np.zeros((dim, dim), dtype=complex)
    mat[rows, np.arange(dim)] = vals
    return mat


def apply(p: PauliString, vec: np.ndarray) -> np.ndarray:
    """Apply ``p`` to a state vector (or to the columns of a matrix) in O(2^n)."""
    _check_cap(p.n, MATRIX_QUBIT_CAP)
    rows, vals = _action(p)
    vec = np.asarray(vec)
    out = np.empty_like(vec, dtype=complex)
    if vec.ndim == 1:
        out[rows] = vals * vec
    else:
        out[rows] = vals[:, None] * vec
    return out


def all_strings(n: int) -> Iterator[PauliString]:
    """All 4^n unsigned strings, ordered by label with I < X < Y < Z."""
    for chars in product("IXYZ", repeat=n):
        yield PauliString.from_label("".join(chars))


def strings_of_weight(n: int, weights) -> list[PauliString]:
    wanted = set(weights)
    return [p for p in all_strings(n) if p.weight in wanted]


def symplectic_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Arrays of all ``(x, z)`` pairs, for vectorized exhaustive scans."""
    codes = np.arange(4 ** n, dtype=np.int64)
    return codes >> n, codes & ((1 << n) - 1)
