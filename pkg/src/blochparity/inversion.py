"""State inversion (spin flip) and the overlap it induces.

Four routes to the inverted state are offered:

* ``invert_qubit``         -- ``Y^n rho^T Y^n`` in the computational basis,
* ``invert_via_reductions`` -- alternating sum of padded reduced states, any ``d``,
* ``invert_bloch_qudit``    -- rescaling of weight-resolved components,
* ``apply_general_flip``    -- per-qubit antiunitary ``F_alpha`` on pure states.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import ValidationError
from .pauli import PauliString, apply
from .states import QuantumState, embed, partial_trace_matrix

ALPHA_ZERO = 1e-8
ALPHA_ONE = 1.0 - 1e-8

_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def _all_y(n: int) -> PauliString:
    full = (1 << n) - 1
    return PauliString(n, full, full)


def _require_qubits(state: QuantumState) -> None:
    if state.d != 2:
        raise ValidationError(f"qubit inversion needs d = 2, got d = {state.d}")


def flip_vector(psi: np.ndarray) -> np.ndarray:
    """``F|psi> = (i sigma_y)^{(x) n} |psi*>`` for a qubit state vector."""
    psi = np.asarray(psi, dtype=complex)
    n = psi.size.bit_length() - 1
    # (i Y)^n = i^n Y^n
    return (1j ** n) * apply(_all_y(n), psi.conj())


def invert_matrix(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    n = rho.shape[0].bit_length() - 1
    yy = _all_y(n)
    # right multiplication by the Hermitian Y^n: M Y = (Y M^dag)^dag
    left = apply(yy, rho.T)
    return apply(yy, left.conj().T).conj().T


def invert_qubit(state: QuantumState) -> QuantumState:
    """``sigma_y^n rho^T sigma_y^n``; pure input stays pure."""
    _require_qubits(state)
    if state.is_pure:
        return QuantumState.pure(flip_vector(state.data), tol=1e-10)
    return QuantumState.mixed(invert_matrix(state.data), tol=1e-10)


def invert_via_reductions(state: QuantumState | np.ndarray, n: int | None = None,
                          d: int | None = None) -> np.ndarray:
    """Alternating sum ``1 - sum_i rho_i + sum_{i<j} rho_ij - ... +- rho``.

    Each reduced state is padded with identities on the traced-out parties.
    Returns an (unnormalized) positive operator; for qubits it coincides with
    ``invert_qubit``.
    """
    if isinstance(state, QuantumState):
        rho, n, d = state.density(), state.n, state.d
    else:
        rho = np.asarray(state, dtype=complex)
        if n is None or d is None:
            raise ValidationError("raw matrices need explicit n and d")
    dim = d ** n
    out = np.eye(dim, dtype=complex) * np.trace(rho).real
    for k in range(1, n + 1):
        sign = (-1) ** k
        for subset in combinations(range(1, n + 1), k):
            red = partial_trace_matrix(rho, subset, n, d)
            out += sign * embed(red, subset, n, d)
    return out


def weight_components(rho: np.ndarray, n: int, d: int) -> list[np.ndarray]:
    """Split ``rho`` into parts acting nontrivially on exactly ``j`` parties.

    Basis-free: the part supported on subset ``S`` is the Moebius inversion
    ``sum_{T <= S} (-1)^{|S - T|} rho_T (x) 1/d^{n-|T|}``. Returns
    ``[P_0, ..., P_n] / d^n`` so that the list sums to ``rho``.
    """
    rho = np.asarray(rho, dtype=complex)
    padded: dict[tuple[int, ...], np.ndarray] = {(): np.eye(d ** n) * np.trace(rho) / d ** n}
    for k in range(1, n + 1):
        for t in combinations(range(1, n + 1), k):
            red = partial_trace_matrix(rho, t, n, d)
            padded[t] = embed(red, t, n, d) / d ** (n - k)
    parts = [np.zeros_like(rho) for _ in range(n + 1)]
    for s in padded:
        comp = np.zeros_like(rho)
        for k in range(len(s) + 1):
            for t in combinations(s, k):
                comp += (-1) ** (len(s) - k) * padded[t]
        parts[len(s)] += comp
    return parts


def qudit_weight_factors(n: int, d: int) -> np.ndarray:
    """Multiplier of each weight class relative to ``rho = (1/d^n) sum_j P_j``.

    ``(d - 1)^n (1/(1 - d))^j``; for ``d = 2`` this is ``(-1)^j``.
    """
    j = np.arange(n + 1)
    return float(d - 1) ** n * (1.0 / (1.0 - d)) ** j


def invert_bloch_qudit(parts, d: int) -> list:
    """Rescale weight-resolved parts so that their sum is the inverted state.

    ``parts[j]`` is the weight-``j`` contribution to ``rho`` (i.e. ``P_j/d^n``),
    given as matrices or, for qubits, as ``BlochVector`` objects.
    """
    if d < 2:
        raise ValidationError("local dimension must be at least 2")
    n = len(parts) - 1
    factors = qudit_weight_factors(n, d)
    out = []
    for f, p in zip(factors, parts):
        out.append(p.scaled(f) if hasattr(p, "scaled") else f * np.asarray(p))
    return out


@dataclass(frozen=True)
class FlipSpec:
    """Unit 4-vector selecting the per-qubit antiunitary ``i C (i a0 1 + a.sigma)``."""

    alpha_vec: tuple[float, float, float, float]

    def __post_init__(self):
        vec = tuple(float(a) for a in self.alpha_vec)
        if len(vec) != 4:
            raise ValidationError("flip vector needs four components")
        if abs(np.linalg.norm(vec) - 1.0) > 1e-12:
            raise ValidationError(f"flip vector {vec} is not normalized")
        object.__setattr__(self, "alpha_vec", vec)

    def local_unitary(self) -> np.ndarray:
        a0, a1, a2, a3 = self.alpha_vec
        return 1j * (1j * a0 * np.eye(2) + a1 * _SX + a2 * _SY + a3 * _SZ)


def apply_general_flip(psi: QuantumState, spec: FlipSpec) -> QuantumState:
    """Conjugate the amplitudes, then apply the local unitary on every qubit."""
    _require_qubits(psi)
    if not psi.is_pure:
        raise ValidationError("generalized flip acts on pure states")
    u = spec.local_unitary()
    t = psi.data.conj().reshape([2] * psi.n)
    for axis in range(psi.n):
        t = np.moveaxis(np.tensordot(u, t, axes=([1], [axis])), 0, axis)
    vec = t.reshape(-1)
    return QuantumState.pure(vec / np.linalg.norm(vec), tol=1e-10)


@dataclass(frozen=True)
class OverlapData:
    """``alpha = |<psi~|psi>|`` and ``trace_form = Tr(rho rho~)``.

    ``phase`` is the argument of ``<psi~|psi>`` under the canonical global
    phase; it depends on that convention and carries no physical meaning.
    It is ``None`` for mixed input or vanishing overlap.
    """

    alpha: float
    trace_form: float
    phase: float | None

    @property
    def label(self) -> str:
        return alpha_class(self.alpha)


def alpha_class(alpha: float) -> str:
    if alpha < ALPHA_ZERO:
        return "alpha-zero"
    if alpha > ALPHA_ONE:
        return "alpha-one"
    return "generic"


def overlap_alpha(state: QuantumState) -> OverlapData:
    _require_qubits(state)
    if state.is_pure:
        psi = state.data
        amp = np.vdot(flip_vector(psi), psi)
        alpha = float(min(abs(amp), 1.0))
        phase = float(np.angle(amp) % (2 * np.pi)) if alpha > ALPHA_ZERO else None
        return OverlapData(alpha, alpha * alpha, phase)
    rho = state.data
    tf = float(np.real(np.trace(rho @ invert_matrix(rho))))
    return OverlapData(float(np.sqrt(max(tf, 0.0))), tf, None)


def even_odd_operators(state: QuantumState) -> tuple[np.ndarray, np.ndarray]:
    """``(1 + P_e, P_o) = 2^{n-1} (rho +- rho~)`` without a Bloch scan."""
    _require_qubits(state)
    rho = state.density()
    rho_t = invert_matrix(rho)
    scale = 2.0 ** (state.n - 1)
    return scale * (rho + rho_t), scale * (rho - rho_t)
