import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from blochparity.errors import DimensionCapError, ValidationError
from blochparity.oracles import dense_pauli
from blochparity.pauli import (PauliString, all_strings, apply, commutator, commutes,
                               multiply, symplectic_tables, to_matrix, weight)

P = PauliString.from_label


def labels(n):
    return st.text(alphabet="IXYZ", min_size=n, max_size=n)


@pytest.mark.parametrize("label, expected", [("XYZ", 3), ("IIY", 1), ("III", 0), ("IZIX", 2)])
def test_weight(label, expected):
    assert weight(P(label)) == expected


def test_label_roundtrip_and_ordering():
    p = P("XIYZ")
    assert p.label() == "XIYZ"
    assert p.support() == (1, 3, 4)
    # qubit 1 is the most significant bit
    assert P("XI").x == 0b10 and P("IX").x == 0b01
    assert str(P("-iZZ")) == "-iZZ"


def test_bad_labels():
    with pytest.raises(ValidationError):
        P("XQ")
    with pytest.raises(ValidationError):
        P("")


def test_single_qubit_products():
    r = multiply(P("X"), P("Y"))
    assert r.label() == "Z" and r.phase == 1
    assert multiply(P("Y"), P("X")).phase == 3
    assert multiply(P("Z"), P("X")).label(with_phase=True) == "iY"


def test_disjoint_supports():
    r = P("XI") * P("IZ")
    assert r.label() == "XZ" and r.phase == 0


@pytest.mark.parametrize("label", ["XYZ", "IYI", "ZZXX"])
def test_involution(label):
    p = P(label)
    r = p * p
    assert r.weight == 0 and r.phase == 0


def test_size_mismatch():
    with pytest.raises(ValidationError):
        multiply(P("X"), P("XX"))
    with pytest.raises(ValidationError):
        commutator(P("X"), P("XX"))


def test_commutator_worked_example():
    # [S, T] with S = XYZ + IIY, T = IXZ: the two summands give -2i XZI and +2i IXX
    r1 = commutator(P("XYZ"), P("IXZ"))
    r2 = commutator(P("IIY"), P("IXZ"))
    assert (r1.label(), r1.phase) == ("XZI", 3)
    assert (r2.label(), r2.phase) == ("IXX", 1)
    s = dense_pauli("XYZ") + dense_pauli("IIY")
    t = dense_pauli("IXZ")
    expected = -2j * dense_pauli("XZI") + 2j * dense_pauli("IXX")
    np.testing.assert_allclose(s @ t - t @ s, expected, atol=1e-14)


def test_commuting_returns_none():
    assert commutator(P("Z"), P("Z")) is None
    assert commutator(P("XX"), P("ZZ")) is None
    assert commutes(P("XX"), P("YY"))


def test_matrix_examples():
    np.testing.assert_array_equal(to_matrix(P("Z")), np.diag([1, -1]))
    np.testing.assert_array_equal(to_matrix(P("XX")), np.fliplr(np.eye(4)))
    for p in all_strings(2):
        tr = np.trace(to_matrix(p))
        assert tr == (4 if p.weight == 0 else 0)


def test_matrix_cap():
    with pytest.raises(DimensionCapError):
        to_matrix(PauliString.identity(13))


def test_matrix_matches_dense_kron_n3():
    for p in all_strings(3):
        np.testing.assert_array_equal(to_matrix(p), dense_pauli(p.label()))


def test_products_exhaustive_n2():
    strings = [PauliString(2, x, z, k) for x in range(4) for z in range(4) for k in range(4)]
    for p, q in itertools.product(strings, repeat=2):
        np.testing.assert_allclose(to_matrix(p * q), to_matrix(p) @ to_matrix(q), atol=1e-15)


def test_orthogonality_n2():
    strings = list(all_strings(2))
    for p, q in itertools.product(strings, repeat=2):
        tr = np.trace(to_matrix(p) @ to_matrix(q))
        assert tr == (4 if p == q else 0)


def test_apply_matches_matrix(rng):
    p = P("YXZI")
    v = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    np.testing.assert_allclose(apply(p, v), to_matrix(p) @ v, atol=1e-14)
    m = rng.standard_normal((16, 3))
    np.testing.assert_allclose(apply(p, m), to_matrix(p) @ m, atol=1e-14)


@given(labels(4), labels(4), labels(4), st.integers(0, 3))
def test_associative(a, b, c, k):
    p, q, r = P(a), P(b), PauliString(4, P(c).x, P(c).z, k)
    assert (p * q) * r == p * (q * r)


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(labels(n), labels(n))))
def test_weight_parity_lemma_sampled(pair):
    p, q = P(pair[0]), P(pair[1])
    r = commutator(p, q)
    if r is not None:
        assert r.weight % 2 == (p.weight + q.weight + 1) % 2
        assert not r.is_hermitian  # [S, T] of Hermitian strings is anti-Hermitian


def test_weight_parity_lemma_exhaustive_n3():
    strings = list(all_strings(3))
    checked = 0
    for p, q in itertools.product(strings, repeat=2):
        r = commutator(p, q)
        if r is None:
            continue
        checked += 1
        assert r.weight % 2 == (p.weight + q.weight + 1) % 2
    assert checked > 0


def test_symplectic_tables():
    xs, zs = symplectic_tables(2)
    assert len(xs) == 16
    assert {(int(x), int(z)) for x, z in zip(xs, zs)} == {p.key for p in all_strings(2)}
