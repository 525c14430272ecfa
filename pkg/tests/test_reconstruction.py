import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from blochparity.bloch import bloch_decompose, even_odd_split
from blochparity.errors import SpectrumError, ValidationError
from blochparity.inversion import invert_matrix, invert_qubit, overlap_alpha
from blochparity.oracles import ghz, w_state
from blochparity.reconstruction import (assemble, even_family_from_odd_evenN, even_from_odd,
                                        ground_hamiltonian_from_state, kramers_check,
                                        odd_family_from_even, odd_from_even_evenN, purity,
                                        spectra_check, uda_certify)
from blochparity.states import QuantumState, random_mixed_state, random_pure_state


def split_mats(state):
    sp = even_odd_split(state)
    return sp.even_matrix, sp.odd_matrix


# ---------------------------------------------------------------- spectra


@pytest.mark.parametrize("n", [3, 5])
def test_spectra_odd_n(n, rng):
    rep = spectra_check(even_odd_split(random_pure_state(n, rng=rng)))
    exp_e, exp_o = rep.expected()
    np.testing.assert_allclose(rep.eig_Pe, exp_e, atol=1e-9)
    np.testing.assert_allclose(rep.eig_Po, exp_o, atol=1e-9)
    assert exp_e[0] == exp_e[1] == 2 ** (n - 1) - 1 and exp_e[-1] == -1
    assert rep.commutator_norm <= 1e-9 * 4 ** n
    assert rep.case_label == "odd-or-alpha0"


def test_spectra_even_generic(rng):
    psi = random_pure_state(4, rng=rng)
    rep = spectra_check(even_odd_split(psi))
    a = overlap_alpha(psi).alpha
    assert rep.alpha == pytest.approx(a, abs=1e-10)
    assert rep.case_label == "even-generic"
    assert rep.max_deviation() <= 1e-9
    assert rep.eig_Po[0] == pytest.approx(8 * np.sqrt(1 - a * a), abs=1e-9)


def test_spectra_ghz4_alpha_one():
    rep = spectra_check(even_odd_split(ghz(4)))
    assert rep.case_label == "even-alpha1"
    np.testing.assert_allclose(rep.eig_Po, 0, atol=1e-12)
    assert rep.eig_Pe[0] == pytest.approx(15)


def test_spectra_rejects_mixed():
    with pytest.raises(ValidationError):
        spectra_check(even_odd_split(random_mixed_state(3, seed=1)))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(0, 2 ** 32 - 1))
def test_pure_state_identity(n, seed):
    """P_o^2 = 2^{n-1} (1 + P_e) for odd n."""
    p_e, p_o = split_mats(random_pure_state(n, seed=seed))
    resid = p_o @ p_o - 2 ** (n - 1) * (np.eye(2 ** n) + p_e)
    assert np.max(np.abs(resid)) <= 1e-9 * 2 ** n


# ---------------------------------------------------------------- odd n


@pytest.mark.parametrize("n", [3, 5])
def test_even_from_odd(n, rng):
    p_e, p_o = split_mats(random_pure_state(n, rng=rng))
    np.testing.assert_allclose(even_from_odd(p_o, n), p_e, atol=1e-10)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_uda_roundtrip(n, rng):
    psi = random_pure_state(n, rng=rng)
    _, p_o = split_mats(psi)
    assert uda_certify(p_o, n).fidelity(psi) >= 1 - 1e-10


def test_uda_accepts_bloch_input():
    psi = w_state(3)
    assert uda_certify(even_odd_split(psi).odd, 3).fidelity(psi) == pytest.approx(1.0)


def test_scaled_odd_part_rejected(rng):
    _, p_o = split_mats(random_pure_state(3, rng=rng))
    with pytest.raises(SpectrumError):
        even_from_odd(0.5 * p_o, 3)
    with pytest.raises(SpectrumError):
        uda_certify(0.5 * p_o, 3)


@pytest.mark.parametrize("p", [0.5, 0.3, 0.9])
def test_mixture_with_inverse_rejected(p, rng):
    """p rho + (1-p) rho~ shares P_e with rho; its odd part is scaled by 2p - 1."""
    psi = random_pure_state(3, rng=rng)
    rho = psi.density()
    mix = QuantumState.mixed(p * rho + (1 - p) * invert_matrix(rho))
    p_e_mix, p_o_mix = split_mats(mix)
    p_e, p_o = split_mats(psi)
    np.testing.assert_allclose(p_e_mix, p_e, atol=1e-12)
    np.testing.assert_allclose(p_o_mix, (2 * p - 1) * p_o, atol=1e-12)
    with pytest.raises(SpectrumError):
        uda_certify(p_o_mix, 3)


def test_wrong_parity_n():
    with pytest.raises(ValidationError):
        even_from_odd(np.zeros((16, 16)), 4)
    with pytest.raises(ValidationError):
        even_from_odd(np.zeros((4, 4)), 3)


@pytest.mark.parametrize("n", [3, 5])
def test_odd_family(n, rng):
    psi = random_pure_state(n, rng=rng)
    p_e, p_o = split_mats(psi)
    fam = odd_family_from_even(p_e, n)
    for theta, phi in rng.uniform(0, 2 * np.pi, size=(10, 2)):
        member = fam.member(theta, phi)
        rho = fam.assemble(member)
        assert purity(rho) == pytest.approx(1.0, abs=1e-10)
        vec = fam.state_vector(theta, phi)
        np.testing.assert_allclose(rho, np.outer(vec, vec.conj()), atol=1e-10)
        np.testing.assert_allclose(even_odd_split(QuantumState.pure(vec)).even_matrix, p_e,
                                   atol=1e-10)
    # the true odd part lies on the family
    eta, eta_t = fam.basis
    a, b = np.vdot(eta, psi.data), np.vdot(eta_t, psi.data)
    theta = 2 * np.arctan2(abs(b), abs(a))
    phi = np.angle(b) - np.angle(a)
    np.testing.assert_allclose(fam.member(theta, phi), p_o, atol=1e-9)


def test_ghz3_family_contains_ghz_variants():
    p_e, _ = split_mats(ghz(3))
    fam = odd_family_from_even(p_e, 3)
    rho = fam.assemble(fam.member(np.pi / 2, 0.0))
    assert purity(rho) == pytest.approx(1.0)


# ---------------------------------------------------------------- even n


@pytest.mark.parametrize("seed", range(5))
def test_sign_pair(seed):
    psi = random_pure_state(4, seed=seed)
    p_e, p_o = split_mats(psi)
    pair = odd_from_even_evenN(p_e, 4)
    diffs = [min(np.max(np.abs(m - p_o)), np.max(np.abs(m + p_o))) for m in pair.members]
    assert max(diffs) <= 1e-8
    np.testing.assert_allclose(pair.member(0), -pair.member(1), atol=1e-9)
    # each member is off-diagonal in the eigenbasis of 1 + P_e
    e_p, e_m = pair.basis
    for m in pair.members:
        assert abs(np.vdot(e_p, m @ e_p)) <= 1e-9
        assert abs(np.vdot(e_m, m @ e_m)) <= 1e-9
    assert pair.alpha == pytest.approx(overlap_alpha(psi).alpha, abs=1e-9)


def test_sign_pair_rejects_alpha_one():
    p_e, _ = split_mats(ghz(4))
    with pytest.raises(SpectrumError):
        odd_from_even_evenN(p_e, 4)


def test_sign_pair_rejects_alpha_zero():
    p_e, _ = split_mats(w_state(4))
    with pytest.raises(SpectrumError):
        odd_from_even_evenN(p_e, 4)


@pytest.mark.parametrize("seed", range(5))
def test_even_family(seed):
    psi = random_pure_state(4, seed=seed)
    p_e, p_o = split_mats(psi)
    fam = even_family_from_odd_evenN(p_o, 4)
    phi = fam.fit_phase(p_e)
    np.testing.assert_allclose(fam.member(phi), p_e, atol=1e-8)
    for phi in np.linspace(0, 2 * np.pi, 5):
        assert purity(fam.assemble(fam.member(phi))) == pytest.approx(1.0, abs=1e-9)


def test_even_family_rejects_ghz4():
    _, p_o = split_mats(ghz(4))
    with pytest.raises(SpectrumError):
        even_family_from_odd_evenN(p_o, 4)


def test_assemble_inverse_of_split(rng):
    s = random_mixed_state(4, rng=rng)
    p_e, p_o = split_mats(s)
    np.testing.assert_allclose(assemble(p_e, p_o), s.density(), atol=1e-12)
    np.testing.assert_allclose(assemble(p_e, -p_o), invert_qubit(s).density(), atol=1e-12)


# ---------------------------------------------------------------- ground states and rank-2 check


@pytest.mark.parametrize("state,n", [(ghz(3), 3), (w_state(5), 5)])
def test_ground_hamiltonian(state, n):
    rep = ground_hamiltonian_from_state(state)
    assert rep.unique
    assert rep.fidelity >= 1 - 1e-9
    assert rep.ground_energy == pytest.approx(-(2 ** (n - 1)), abs=1e-8)
    assert rep.gap == pytest.approx(2 ** (n - 1), abs=1e-8)
    assert all(w % 2 == 1 for w in rep.hamiltonian.weights())


def test_ground_hamiltonian_random(rng):
    psi = random_pure_state(5, rng=rng)
    assert ground_hamiltonian_from_state(psi).fidelity >= 1 - 1e-9


def test_kramers_check(rng):
    psi = random_pure_state(4, rng=rng)
    p_e, _ = split_mats(psi)
    rep = kramers_check(p_e + np.eye(16), 4)
    assert rep.holds
    with pytest.raises(ValidationError):
        kramers_check(split_mats(psi)[1], 4)
    with pytest.raises(SpectrumError):
        kramers_check(np.eye(16), 4)
