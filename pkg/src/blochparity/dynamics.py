"""Unitary evolution under Pauli Hamiltonians and the invariants it preserves.

Under a Hamiltonian built from odd-weight strings only, the inversion
commutes with the evolution, so ``Tr(rho rho~)`` is conserved and the
weight parity of any Heisenberg-evolved observable is fixed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bloch import BlochVector, operator_bloch
from .errors import InvariantError, ValidationError
from .inversion import overlap_alpha
from .linalg import hermitian_eig
from .oracles import ghz
from .pauli import PauliString, all_strings, commutator
from .states import QuantumState

INVARIANT_TOL = 1e-9
DEFAULT_STEPS = 50


def _parity_class(weights: set[int]) -> str:
    parities = {w % 2 for w in weights}
    if parities == {1}:
        return "odd-only"
    if parities <= {0}:
        return "even-only"
    return "mixed"


class PauliHamiltonian(BlochVector):
    """Real combination of Hermitian Pauli strings; the identity counts as even."""

    @property
    def parity_class(self) -> str:
        return _parity_class(self.weights())

    @classmethod
    def from_bloch(cls, b: BlochVector) -> "PauliHamiltonian":
        return cls(b.n, b.terms)


def random_hamiltonian(n: int, parity: str, max_body: int, seed: int | None = None,
                       rng: np.random.Generator | None = None) -> PauliHamiltonian:
    """Standard-normal coefficients on every string of the given weight parity up to ``max_body``."""
    if parity not in ("odd", "even"):
        raise ValidationError(f"parity must be 'odd' or 'even', got {parity!r}")
    if not 1 <= max_body <= n:
        raise ValidationError(f"max_body must lie in 1..{n}")
    want = 1 if parity == "odd" else 0
    candidates = [p for p in all_strings(n) if 1 <= p.weight <= max_body and p.weight % 2 == want]
    if not candidates:
        raise ValidationError(f"no {parity} strings of weight <= {max_body} on {n} qubits")
    rng = np.random.default_rng(seed) if rng is None else rng
    coeffs = rng.standard_normal(len(candidates))
    return PauliHamiltonian(n, {p.key: c for p, c in zip(candidates, coeffs)})


class Propagator:
    """Spectral form of ``exp(-iHt)``, computed once per Hamiltonian."""

    def __init__(self, h: BlochVector):
        self.n = h.n
        self.matrix = h.to_operator()
        eig = hermitian_eig(self.matrix)
        self.energies = eig.values
        self.vectors = eig.vectors

    @property
    def norm(self) -> float:
        return float(np.max(np.abs(self.energies)))

    def unitary(self, t: float) -> np.ndarray:
        return (self.vectors * np.exp(-1j * self.energies * t)) @ self.vectors.conj().T

    def evolve(self, state: QuantumState, t: float) -> QuantumState:
        if state.n != self.n or state.d != 2:
            raise ValidationError("state and Hamiltonian dimensions differ")
        u = self.unitary(t)
        if state.is_pure:
            return QuantumState.pure(u @ state.data, tol=1e-10)
        return QuantumState.mixed(u @ state.data @ u.conj().T, tol=1e-10)

    def heisenberg(self, op: np.ndarray, t: float) -> np.ndarray:
        """``exp(-iHt) P exp(iHt)``."""
        u = self.unitary(t)
        return u @ op @ u.conj().T

    def energy(self, state: QuantumState) -> float:
        if state.is_pure:
            return float(np.real(np.vdot(state.data, self.matrix @ state.data)))
        return float(np.real(np.trace(self.matrix @ state.data)))


def evolve(state: QuantumState, h: BlochVector, t: float) -> QuantumState:
    return Propagator(h).evolve(state, t)


def default_times(prop: Propagator, steps: int = DEFAULT_STEPS) -> np.ndarray:
    norm = prop.norm
    t_max = 2 * np.pi / norm if norm > 0 else 1.0
    return np.linspace(0.0, t_max, steps)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: tuple[QuantumState, ...]
    alpha_series: np.ndarray
    alpha_sq_series: np.ndarray
    energy_series: np.ndarray
    ghz_fidelity_series: np.ndarray | None = None

    @property
    def alpha_deviation(self) -> float:
        return float(np.max(np.abs(self.alpha_series - self.alpha_series[0])))

    @property
    def alpha_sq_deviation(self) -> float:
        return float(np.max(np.abs(self.alpha_sq_series - self.alpha_sq_series[0])))

    def rows(self) -> list[dict]:
        out = []
        for k, t in enumerate(self.times):
            row = {"t": float(t), "alpha": float(self.alpha_series[k]),
                   "energy": float(self.energy_series[k])}
            if self.ghz_fidelity_series is not None:
                row["ghz_fidelity"] = float(self.ghz_fidelity_series[k])
            out.append(row)
        return out


def ghz_fidelity(state: QuantumState) -> float:
    return ghz(state.n).fidelity(state)


def alpha_trajectory(state: QuantumState, h: BlochVector, times: Sequence[float] | None = None,
                     track_ghz: bool = False, check: bool = True) -> Trajectory:
    """Evolve and record alpha, energy and optionally GHZ fidelity.

    With ``check`` and an odd-only Hamiltonian, drift of ``Tr(rho rho~)``
    beyond ``1e-9`` raises ``InvariantError``.
    """
    prop = Propagator(h)
    times = default_times(prop) if times is None else np.asarray(times, dtype=float)
    if np.any(np.diff(times) <= 0):
        raise ValidationError("times must be strictly increasing")
    states, alphas, alpha_sq, energies, fids = [], [], [], [], []
    for t in times:
        s = prop.evolve(state, t)
        ov = overlap_alpha(s)
        states.append(s)
        alphas.append(ov.alpha)
        alpha_sq.append(ov.trace_form)
        energies.append(prop.energy(s))
        if track_ghz:
            fids.append(ghz_fidelity(s))
    traj = Trajectory(times, tuple(states), np.array(alphas), np.array(alpha_sq),
                      np.array(energies), np.array(fids) if track_ghz else None)
    parity = PauliHamiltonian.from_bloch(h).parity_class
    if check and parity == "odd-only" and traj.alpha_sq_deviation > INVARIANT_TOL:
        raise InvariantError(f"alpha^2 drifted by {traj.alpha_sq_deviation:.3g} under an odd Hamiltonian")
    return traj


# --------------------------------------------------------------------------- Heisenberg picture


def _pauli_sum_commutator(h: dict, p: dict, n: int) -> dict:
    """``[H, P]`` for sums keyed by ``(x, z)`` with complex coefficients."""
    out: dict[tuple[int, int], complex] = {}
    for hk, hc in h.items():
        hs = PauliString(n, *hk)
        for pk, pc in p.items():
            r = commutator(hs, PauliString(n, *pk))
            if r is None:
                continue
            out[r.key] = out.get(r.key, 0.0) + 2 * (1j ** r.phase) * hc * pc
    if not out:
        return out
    scale = max(abs(c) for c in out.values())
    return {k: c for k, c in out.items() if abs(c) > 1e-12 * scale}


def _weight(key: tuple[int, int]) -> int:
    return (key[0] | key[1]).bit_count()


@dataclass(frozen=True)
class ParityReport:
    parity: str
    evolved_leak: float
    commutator_parities: tuple[str, ...]
    ok: bool


def heisenberg_parity_check(h: BlochVector, p: BlochVector, t: float,
                            m_max: int = 4) -> ParityReport:
    """Check that an odd Hamiltonian preserves the weight parity of ``P``.

    ``P(t)`` is evolved exactly at matrix level; the nested commutators
    ``[H, P]_m`` for ``m <= m_max`` are formed symbolically.
    """
    h = PauliHamiltonian.from_bloch(h)
    if h.parity_class != "odd-only":
        raise ValidationError("Hamiltonian must contain odd-weight terms only")
    parity = _parity_class(p.weights())
    if parity == "mixed":
        raise ValidationError("observable mixes even and odd weights; parity is not asserted")
    want = 1 if parity == "odd-only" else 0
    evolved = operator_bloch(Propagator(h).heisenberg(p.to_operator(), t))
    leak = max((abs(c) for q, c in evolved if q.weight % 2 != want), default=0.0)
    nested = {k: complex(c) for k, c in p.terms.items()}
    hterms = {k: complex(c) for k, c in h.terms.items()}
    parities = []
    for _ in range(m_max + 1):
        parities.append(_parity_class({_weight(k) for k in nested}) if nested else "zero")
        nested = _pauli_sum_commutator(hterms, nested, p.n)
    ok = leak <= INVARIANT_TOL * max(1.0, p.norm_squared() ** 0.5) and all(
        c in (parity, "zero") for c in parities)
    return ParityReport(parity, float(leak), tuple(parities), ok)


# --------------------------------------------------------------------------- GHZ bound


@dataclass(frozen=True)
class GhzBound:
    ghz_fidelity: float
    cn: float
    bound_ok: bool


def ghz_bound(psi: QuantumState) -> GhzBound:
    """``C_n >= 2 F - 1`` with ``F`` the GHZ fidelity and ``C_n = alpha``."""
    if not psi.is_pure:
        raise ValidationError("GHZ bound is stated for pure states")
    f = ghz_fidelity(psi)
    cn = overlap_alpha(psi).alpha
    return GhzBound(f, cn, cn >= 2 * f - 1 - INVARIANT_TOL)
