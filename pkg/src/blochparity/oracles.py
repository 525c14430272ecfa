"""Slow, independent reference implementations and named test states.

Nothing here touches the symplectic machinery: Pauli strings are built by
explicit Kronecker products of 2x2 matrices and traces are taken densely.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import product

import numpy as np

from .errors import DimensionCapError, ValidationError
from .states import QuantumState, random_pure_state, tensor

ORACLE_CAP = 6

SIGMA = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense_pauli(label: str) -> np.ndarray:
    return reduce(np.kron, (SIGMA[c] for c in label))


def dense_weight(label: str) -> int:
    return sum(c != "I" for c in label)


def oracle_bloch(state, cap: int = ORACLE_CAP) -> dict[str, float]:
    """``{label: Tr(sigma_label rho)}`` over all 4^n labels, dropping |c| < 1e-12."""
    rho = state.density() if isinstance(state, QuantumState) else np.asarray(state)
    n = int(np.log2(rho.shape[0]))
    if n > cap:
        raise DimensionCapError(f"oracle Bloch scan limited to {cap} qubits")
    out = {}
    for chars in product("IXYZ", repeat=n):
        label = "".join(chars)
        c = np.trace(dense_pauli(label) @ rho)
        if abs(c) >= 1e-12:
            out[label] = float(c.real)
    return out


def oracle_reconstruct(coeffs: dict[str, float], n: int) -> np.ndarray:
    rho = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for label, c in coeffs.items():
        rho += c * dense_pauli(label)
    return rho / 2 ** n


def oracle_invert(rho: np.ndarray) -> np.ndarray:
    """``sigma_y^n rho^T sigma_y^n`` with a dense Kronecker power."""
    n = int(np.log2(rho.shape[0]))
    yy = dense_pauli("Y" * n)
    return yy @ rho.T @ yy


def oracle_partial_trace(rho: np.ndarray, keep, n: int) -> np.ndarray:
    """Reduced state via the Bloch expansion: keep only strings supported on ``keep``."""
    keep = sorted(keep)
    coeffs = oracle_bloch(rho)
    red = {}
    for label, c in coeffs.items():
        if all(label[q - 1] == "I" for q in range(1, n + 1) if q not in keep):
            red["".join(label[q - 1] for q in keep)] = c
    return oracle_reconstruct(red, len(keep))


def commutator_parity_table(n: int) -> list[tuple[str, str, str, int]]:
    """Dense check of every label pair: ``(S, T, support-of-[S,T], parity ok)``.

    The commutator's Bloch support is read off by tracing against all
    strings; a vanishing commutator is skipped.
    """
    labels = ["".join(c) for c in product("IXYZ", repeat=n)]
    mats = {lab: dense_pauli(lab) for lab in labels}
    rows = []
    for s in labels:
        for t in labels:
            comm = mats[s] @ mats[t] - mats[t] @ mats[s]
            if np.max(np.abs(comm)) < 1e-12:
                continue
            support = [lab for lab in labels if abs(np.trace(mats[lab] @ comm)) > 1e-9]
            expected = (dense_weight(s) + dense_weight(t) + 1) % 2
            ok = all(dense_weight(lab) % 2 == expected for lab in support)
            rows.append((s, t, "+".join(support), int(ok)))
    return rows


@dataclass(frozen=True)
class NamedState:
    """Recipe for a textbook state.

    ``name`` is one of ``ghz``, ``w``, ``bell``, ``product``,
    ``biseparable-random``. ``cut`` lists the 1-based parties of the first
    factor for the biseparable family.
    """

    name: str
    n: int = 2
    seed: int | None = None
    cut: tuple[int, ...] = field(default=())
    bits: str | None = None


def ghz(n: int) -> QuantumState:
    vec = np.zeros(2 ** n, dtype=complex)
    vec[0] = vec[-1] = 1 / np.sqrt(2)
    return QuantumState.pure(vec)


def w_state(n: int) -> QuantumState:
    vec = np.zeros(2 ** n, dtype=complex)
    for q in range(n):
        vec[1 << q] = 1 / np.sqrt(n)
    return QuantumState.pure(vec)


def bell_psi_plus() -> QuantumState:
    return QuantumState.pure(np.array([0, 1, 1, 0]) / np.sqrt(2))


def _permute_parties(vec: np.ndarray, order: list[int]) -> np.ndarray:
    """``vec`` has factors in ``order`` (1-based party labels); return natural order."""
    n = len(order)
    t = vec.reshape([2] * n)
    return t.transpose([order.index(q) for q in range(1, n + 1)]).reshape(-1)


def make_named(spec: NamedState) -> QuantumState:
    name = spec.name.lower()
    if name == "ghz":
        return ghz(spec.n)
    if name == "w":
        return w_state(spec.n)
    if name == "bell":
        if spec.n != 2:
            raise ValidationError("Bell state is a two-qubit state")
        return bell_psi_plus()
    if name == "product":
        if spec.bits is not None:
            vec = np.zeros(2 ** len(spec.bits), dtype=complex)
            vec[int(spec.bits, 2)] = 1
            return QuantumState.pure(vec)
        rng = np.random.default_rng(spec.seed)
        return tensor(*(random_pure_state(1, rng=rng) for _ in range(spec.n)))
    if name == "biseparable-random":
        cut = tuple(sorted(spec.cut))
        if not cut or len(cut) >= spec.n or any(q < 1 or q > spec.n for q in cut):
            raise ValidationError(f"invalid cut {spec.cut} for {spec.n} parties")
        rest = [q for q in range(1, spec.n + 1) if q not in cut]
        rng = np.random.default_rng(spec.seed)
        a = random_pure_state(len(cut), rng=rng)
        b = random_pure_state(len(rest), rng=rng)
        vec = np.kron(a.data, b.data)
        return QuantumState.pure(_permute_parties(vec, list(cut) + rest), tol=1e-10)
    raise ValidationError(f"unknown named state {spec.name!r}")
