"""Reconstructing one parity class of correlations from the other.

All routines work on dense ``2^n x 2^n`` matrices; ``BlochVector`` inputs
are materialized first. Writing ``rho~`` for the inverted state of a pure
``rho``,

    1 + P_e = 2^{n-1} (rho + rho~),      P_o = 2^{n-1} (rho - rho~),

so every reconstruction reduces to spectral statements about the rank-2
operators above.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bloch import BlochVector, EvenOddSplit, even_odd_split, operator_bloch
from .errors import SpectrumError, ValidationError
from .inversion import alpha_class, flip_vector, invert_matrix
from .linalg import hermitian_eig
from .states import QuantumState, canonical_phase

SPECTRUM_TOL = 1e-6
ASSEMBLY_TOL = 1e-9
PURITY_TOL = 1e-8
PARITY_TOL = 1e-7


def _matrix(p, n: int) -> np.ndarray:
    if isinstance(p, BlochVector):
        if p.n != n:
            raise ValidationError(f"operator acts on {p.n} qubits, expected {n}")
        return p.to_operator()
    m = np.asarray(p, dtype=complex)
    if m.shape != (2 ** n, 2 ** n):
        raise ValidationError(f"expected a {2 ** n}x{2 ** n} matrix, got {m.shape}")
    return m


def _require_parity(n: int, odd: bool) -> None:
    if n < 1 or (n % 2 == 1) != odd:
        raise ValidationError(f"n = {n} must be {'odd' if odd else 'even'}")


def assemble(p_e: np.ndarray, p_o: np.ndarray) -> np.ndarray:
    """``(1 + P_e + P_o) / 2^n``."""
    dim = p_e.shape[0]
    return (np.eye(dim) + p_e + p_o) / dim


def purity(rho: np.ndarray) -> float:
    return float(np.real(np.vdot(rho, rho)))


# --------------------------------------------------------------------------- spectra


@dataclass(frozen=True)
class SpectraReport:
    n: int
    alpha: float
    eig_Pe: np.ndarray
    eig_Po: np.ndarray
    commutator_norm: float
    case_label: str

    def expected(self) -> tuple[np.ndarray, np.ndarray]:
        """Predicted spectra of ``P_e`` and ``P_o`` (descending) for this case."""
        dim, half = 2 ** self.n, 2.0 ** (self.n - 1)
        if self.case_label == "odd-or-alpha0":
            top = (half, half)
            odd = (half, -half)
        elif self.case_label == "even-generic":
            a = self.alpha
            top = (half * (1 + a), half * (1 - a))
            s = half * np.sqrt(max(1 - a * a, 0.0))
            odd = (s, -s)
        else:
            top = (2.0 * half, 0.0)
            odd = (0.0, 0.0)
        eig_e = np.full(dim, -1.0)
        eig_e[0], eig_e[1] = top[0] - 1, top[1] - 1
        eig_o = np.zeros(dim)
        eig_o[0], eig_o[-1] = odd
        return np.sort(eig_e)[::-1], np.sort(eig_o)[::-1]

    def max_deviation(self) -> float:
        exp_e, exp_o = self.expected()
        return float(max(np.max(np.abs(self.eig_Pe - exp_e)),
                         np.max(np.abs(self.eig_Po - exp_o))))


def spectra_check(split: EvenOddSplit) -> SpectraReport:
    p_e, p_o = split.even_matrix, split.odd_matrix
    rho = assemble(p_e, p_o)
    if abs(purity(rho) - 1.0) > PURITY_TOL:
        raise ValidationError("spectra check needs the split of a pure state")
    dim = rho.shape[0]
    # 1 + P_e has eigenvalues 2^{n-1} (1 +- alpha); unlike sqrt(Tr rho rho~) this is linear in noise
    eig_e = split.even_spectrum
    alpha = float(min(max((eig_e[0] - eig_e[1]) / dim, 0.0), 1.0))
    if split.n % 2 == 1:
        label = "odd-or-alpha0"
    else:
        label = {"alpha-zero": "odd-or-alpha0", "generic": "even-generic",
                 "alpha-one": "even-alpha1"}[alpha_class(alpha)]
    comm = p_e @ p_o - p_o @ p_e
    return SpectraReport(
        n=split.n,
        alpha=alpha,
        eig_Pe=split.even_spectrum,
        eig_Po=split.odd_spectrum,
        commutator_norm=float(np.linalg.norm(comm)),
        case_label=label,
    )


# --------------------------------------------------------------------------- odd n


def _check_odd_spectrum(values: np.ndarray, n: int, tol: float) -> None:
    half = 2.0 ** (n - 1)
    expected = np.zeros_like(values)
    expected[0], expected[-1] = half, -half
    dev = float(np.max(np.abs(values - expected)))
    if dev > tol:
        raise SpectrumError(
            f"not odd correlations of any pure state: spectrum deviates by {dev:.3g} "
            f"from (+{half:g}, 0, ..., 0, -{half:g})")


def even_from_odd(p_o, n: int, tol: float = SPECTRUM_TOL) -> np.ndarray:
    """``P_e = P_o^2 / 2^{n-1} - 1`` for odd ``n``, after checking the spectrum of ``P_o``."""
    _require_parity(n, odd=True)
    m = _matrix(p_o, n)
    _check_odd_spectrum(hermitian_eig(m).values, n, tol)
    p_e = m @ m / 2.0 ** (n - 1) - np.eye(2 ** n)
    if abs(purity(assemble(p_e, m)) - 1.0) > PURITY_TOL:
        raise SpectrumError("reconstructed operator is not a pure state")
    return p_e


def uda_certify(p_o, n: int, tol: float = SPECTRUM_TOL) -> QuantumState:
    """The unique state (pure or mixed) with odd correlations ``P_o``, odd ``n``."""
    _require_parity(n, odd=True)
    m = _matrix(p_o, n)
    eig = hermitian_eig(m)
    _check_odd_spectrum(eig.values, n, tol)
    if len(eig.block_of(0)) != 1:
        raise SpectrumError("top eigenvalue of P_o is degenerate; input is not from a pure state")
    psi = canonical_phase(eig.vectors[:, 0])
    p_e = m @ m / 2.0 ** (n - 1) - np.eye(2 ** n)
    rho = assemble(p_e, m)
    if np.max(np.abs(rho - np.outer(psi, psi.conj()))) > max(ASSEMBLY_TOL, 10 * tol / 2 ** n):
        raise SpectrumError("reassembled state differs from the top eigenprojector")
    return QuantumState.pure(psi, tol=1e-10)


@dataclass(frozen=True)
class GroundStateReport:
    hamiltonian: BlochVector
    matrix: np.ndarray
    ground_energy: float
    gap: float
    ground_state: QuantumState
    unique: bool
    fidelity: float


def ground_hamiltonian_from_state(psi: QuantumState) -> GroundStateReport:
    """``H = -P_o(psi)``: an odd-body Hamiltonian with ``psi`` as unique ground state."""
    if not psi.is_pure:
        raise ValidationError("ground-state construction needs a pure state")
    _require_parity(psi.n, odd=True)
    h = -even_odd_split(psi).odd
    mat = h.to_operator()
    eig = hermitian_eig(mat)
    ground_block = eig.block_of(len(eig.values) - 1)
    ground = QuantumState.pure(canonical_phase(eig.vectors[:, -1]), tol=1e-10)
    gap = float(eig.values[ground_block[0] - 1] - eig.values[-1]) if ground_block[0] > 0 else 0.0
    return GroundStateReport(
        hamiltonian=h,
        matrix=mat,
        ground_energy=float(eig.values[-1]),
        gap=gap,
        ground_state=ground,
        unique=len(ground_block) == 1,
        fidelity=ground.fidelity(psi),
    )


# --------------------------------------------------------------------------- families


@dataclass(frozen=True, eq=False)
class ReconstructionFamily:
    """Set of correlation completions compatible with a given parity class.

    ``given`` is the fixed operator (``P_e`` or ``P_o``); ``basis`` holds the
    eigenvectors the parametrization is built on.
    """

    kind: str
    n: int
    given: np.ndarray
    basis: tuple[np.ndarray, ...]
    alpha: float = 0.0
    extras: dict = field(default_factory=dict)

    def assemble(self, member: np.ndarray) -> np.ndarray:
        if self.kind == "one-param-even":
            return assemble(member, self.given)
        return assemble(self.given, member)


def _two_space(values: np.ndarray, vectors: np.ndarray, target: tuple[float, float],
               n: int, tol: float, what: str) -> np.ndarray:
    expected = np.zeros_like(values)
    expected[0], expected[1] = target
    dev = float(np.max(np.abs(values - expected)))
    if dev > tol:
        raise SpectrumError(f"{what}: spectrum deviates by {dev:.3g} from the pure-state form")
    return vectors[:, :2]


def _reference_vector(space: np.ndarray) -> np.ndarray:
    """Unit vector of ``span(space)`` closest to the first basis state it overlaps."""
    for k in range(space.shape[0]):
        v = space @ space[k].conj()
        norm = np.linalg.norm(v)
        if norm > 1e-6:
            return canonical_phase(v / norm)
    raise SpectrumError("empty eigenspace")


class OddFamily(ReconstructionFamily):
    def member(self, theta: float, phi: float) -> np.ndarray:
        eta, eta_t = self.basis
        half = 2.0 ** (self.n - 1)
        diag = np.outer(eta, eta.conj()) - np.outer(eta_t, eta_t.conj())
        off = np.exp(1j * phi) * np.outer(eta_t, eta.conj())
        return half * (np.cos(theta) * diag + np.sin(theta) * (off + off.conj().T))

    def state_vector(self, theta: float, phi: float) -> np.ndarray:
        eta, eta_t = self.basis
        return np.cos(theta / 2) * eta + np.sin(theta / 2) * np.exp(1j * phi) * eta_t


def odd_family_from_even(p_e, n: int, tol: float = SPECTRUM_TOL) -> OddFamily:
    """Two-parameter family of odd parts completing ``P_e`` to a pure state (odd ``n``)."""
    _require_parity(n, odd=True)
    m = _matrix(p_e, n)
    one_plus = m + np.eye(2 ** n)
    eig = hermitian_eig(one_plus)
    half = 2.0 ** (n - 1)
    space = _two_space(eig.values, eig.vectors, (half, half), n, tol, "1 + P_e")
    eta = _reference_vector(space)
    eta_t = flip_vector(eta)
    if abs(np.vdot(eta, eta_t)) > 1e-8:
        raise SpectrumError("chosen eigenvector is not orthogonal to its inversion")
    return OddFamily("two-param-odd", n, m, (eta, eta_t))


class EvenFamily(ReconstructionFamily):
    def member(self, phi: float) -> np.ndarray:
        o_p, o_m = self.basis
        half = 2.0 ** (self.n - 1)
        a = self.alpha
        op = (np.outer(o_p, o_p.conj()) + np.outer(o_m, o_m.conj())
              + a * np.exp(-1j * phi) * np.outer(o_p, o_m.conj())
              + a * np.exp(1j * phi) * np.outer(o_m, o_p.conj()))
        return half * op - np.eye(2 ** self.n)

    def fit_phase(self, p_e_true) -> float:
        """Phase at which the family reproduces a given ``P_e``."""
        if self.alpha < 1e-12:
            return 0.0
        o_p, o_m = self.basis
        m = _matrix(p_e_true, self.n) + np.eye(2 ** self.n)
        return float(np.angle(np.vdot(o_m, m @ o_p)) % (2 * np.pi))


def even_family_from_odd_evenN(p_o, n: int, tol: float = SPECTRUM_TOL) -> EvenFamily:
    """One-parameter family of even parts compatible with ``P_o`` (even ``n``)."""
    _require_parity(n, odd=False)
    m = _matrix(p_o, n)
    eig = hermitian_eig(m)
    vals = eig.values
    half = 2.0 ** (n - 1)
    lam = 0.5 * (vals[0] - vals[-1])
    if np.max(np.abs(vals[1:-1]), initial=0.0) > tol or abs(vals[0] + vals[-1]) > tol:
        raise SpectrumError("P_o must have a symmetric rank-2 spectrum (+l, 0, ..., 0, -l)")
    if lam <= tol:
        raise SpectrumError("P_o vanishes: alpha-one class, P_e is unconstrained by P_o")
    if lam > half + tol:
        raise SpectrumError(f"|eigenvalue| {lam:.6g} exceeds 2^(n-1) = {half:g}")
    ratio = min(lam / half, 1.0)
    alpha = float(np.sqrt(max(1.0 - ratio * ratio, 0.0)))
    o_p = canonical_phase(eig.vectors[:, 0])
    o_m = canonical_phase(eig.vectors[:, -1])
    return EvenFamily("one-param-even", n, m, (o_p, o_m), alpha=alpha)


class SignPair(ReconstructionFamily):
    def member(self, which: int) -> np.ndarray:
        return self.extras["members"][which]

    @property
    def members(self) -> tuple[np.ndarray, np.ndarray]:
        return self.extras["members"]


def odd_from_even_evenN(p_e, n: int, tol: float = SPECTRUM_TOL) -> SignPair:
    """The two odd parts ``+-P_o`` compatible with ``P_e`` (even ``n``, ``0 < alpha < 1``).

    The relative phase of ``|e_+><e_-|`` is pinned by requiring the result to
    anticommute with the inversion, ``P_o + F P_o F^dag = 0``. With
    ``F|e_+><e_-|F^dag = e^{i L}|e_+><e_-|`` the admissible phases are
    ``(L +- pi) / 2``.
    """
    _require_parity(n, odd=False)
    m = _matrix(p_e, n)
    dim = 2 ** n
    eig = hermitian_eig(m + np.eye(dim))
    vals = eig.values
    if np.max(np.abs(vals[2:]), initial=0.0) > tol or abs(vals[0] + vals[1] - dim) > tol:
        raise SpectrumError("1 + P_e must have rank 2 with eigenvalues summing to 2^n")
    alpha = float((vals[0] - vals[1]) / dim)
    cls = alpha_class(alpha)
    if cls == "alpha-one":
        raise SpectrumError("alpha-one class: 1 + P_e has rank 1, only P_o = 0 is compatible")
    if cls == "alpha-zero":
        raise SpectrumError("alpha-zero class: degenerate eigenspace, use the two-parameter family")
    e_p = canonical_phase(eig.vectors[:, 0])
    e_m = canonical_phase(eig.vectors[:, 1])
    c_p = np.vdot(e_p, flip_vector(e_p))
    c_m = np.vdot(e_m, flip_vector(e_m))
    if abs(abs(c_p) - 1) > PARITY_TOL or abs(abs(c_m) - 1) > PARITY_TOL:
        raise SpectrumError("eigenvectors of 1 + P_e are not invariant under inversion")
    big_lambda = float(np.angle(c_p * np.conj(c_m)))
    lam_o = 2.0 ** (n - 1) * np.sqrt(max(1.0 - alpha * alpha, 0.0))
    cross = np.outer(e_p, e_m.conj())
    members = []
    for phi in ((big_lambda + np.pi) / 2, (big_lambda - np.pi) / 2):
        p_o = lam_o * (np.exp(1j * phi) * cross + np.exp(-1j * phi) * cross.conj().T)
        residual = np.max(np.abs(p_o + invert_matrix(p_o)))
        if residual > PARITY_TOL * max(1.0, lam_o):
            raise SpectrumError(f"no phase satisfies the odd-parity constraint (residual {residual:.3g})")
        if abs(purity(assemble(m, p_o)) - 1.0) > PURITY_TOL:
            raise SpectrumError("reconstructed pair does not assemble to a pure state")
        members.append(p_o)
    return SignPair("sign-pair", n, m, (e_p, e_m), alpha=alpha,
                    extras={"members": tuple(members), "Lambda": big_lambda})


# --------------------------------------------------------------------------- even-only rank-2 operators


@dataclass(frozen=True)
class KramersReport:
    eigenvalues: tuple[float, float]
    odd_leak: tuple[float, float]
    holds: bool


def _odd_mass(op: np.ndarray) -> float:
    b = operator_bloch(op)
    return max((abs(c) for p, c in b if p.weight % 2 == 1), default=0.0)


def kramers_check(p, n: int, tol: float = ASSEMBLY_TOL) -> KramersReport:
    """Eigenprojectors of a rank-2, even-only operator with distinct eigenvalues are even-only."""
    _require_parity(n, odd=False)
    m = _matrix(p, n)
    if _odd_mass(m) > tol:
        raise ValidationError("operator has odd-weight Bloch terms")
    eig = hermitian_eig(m)
    scale = max(float(np.max(np.abs(eig.values))), 1e-300)
    nz = [i for i, v in enumerate(eig.values) if abs(v) > 1e-8 * scale]
    if len(nz) != 2:
        raise SpectrumError(f"operator has rank {len(nz)}, the check needs rank 2")
    i, j = nz
    if abs(eig.values[i] - eig.values[j]) <= 1e-8 * scale:
        raise SpectrumError("the two nonzero eigenvalues are degenerate")
    leaks = []
    for k in (i, j):
        v = eig.vectors[:, k]
        leaks.append(_odd_mass(np.outer(v, v.conj())))
    return KramersReport(
        eigenvalues=(float(eig.values[i]), float(eig.values[j])),
        odd_leak=(leaks[0], leaks[1]),
        holds=max(leaks) <= tol,
    )
