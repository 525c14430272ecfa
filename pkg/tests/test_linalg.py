import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from blochparity.bloch import even_odd_split
from blochparity.errors import ValidationError
from blochparity.linalg import hermitian_eig, jacobi_eigh
from blochparity.states import random_pure_state


def random_hermitian(rng, dim):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return a + a.conj().T


def test_sigma_z():
    eig = hermitian_eig(np.diag([1.0, -1.0]))
    np.testing.assert_allclose(eig.values, [1, -1])


def test_diagonal_identity_vectors():
    d = np.diag([3.0, -2.0, 0.5])
    for method in ("lapack", "jacobi"):
        eig = hermitian_eig(d, method=method)
        np.testing.assert_allclose(eig.values, [3, 0.5, -2])
        np.testing.assert_allclose(np.abs(eig.vectors), np.eye(3)[:, [0, 2, 1]], atol=1e-14)


def test_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        hermitian_eig(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        hermitian_eig(np.eye(2), method="qr")


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
@pytest.mark.parametrize("dim", [1, 2, 5, 16])
def test_residual_and_unitarity(method, dim, rng):
    h = random_hermitian(rng, dim)
    eig = hermitian_eig(h, method=method)
    norm = np.linalg.norm(h, 2)
    for lam, v in zip(eig.values, eig.vectors.T):
        assert np.linalg.norm(h @ v - lam * v) <= 1e-9 * norm
    np.testing.assert_allclose(eig.vectors.conj().T @ eig.vectors, np.eye(dim), atol=1e-9)
    assert np.all(np.diff(eig.values) <= 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(2, 12))
def test_jacobi_agrees_with_lapack(seed, dim):
    h = random_hermitian(np.random.default_rng(seed), dim)
    np.testing.assert_allclose(hermitian_eig(h, method="jacobi").values,
                               hermitian_eig(h).values, atol=1e-9 * np.linalg.norm(h))


def test_odd_part_spectrum_n3():
    p_o = even_odd_split(random_pure_state(3, seed=7)).odd_matrix
    for method in ("lapack", "jacobi"):
        eig = hermitian_eig(p_o, method=method)
        np.testing.assert_allclose(eig.values, [4, 0, 0, 0, 0, 0, 0, -4], atol=1e-9)
        # the six zero eigenvalues form a single degenerate block
        assert tuple(len(b) for b in eig.blocks) == (1, 6, 1)


def test_degenerate_projector():
    h = np.diag([2.0, 2.0 + 1e-12, -1.0])
    eig = hermitian_eig(h)
    assert eig.blocks == ((0, 1), (2,))
    np.testing.assert_allclose(eig.projector(eig.blocks[0]), np.diag([1, 1, 0]), atol=1e-12)
