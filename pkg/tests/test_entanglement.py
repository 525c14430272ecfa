import numpy as np
import pytest

from blochparity.bloch import bloch_decompose
from blochparity.entanglement import (INCONSISTENT, SEPARABLE, bisep_scan, even_side_consistent,
                                      odd_correlation_data, pure_certificate, reduced_purity_test,
                                      restrict)
from blochparity.errors import ValidationError
from blochparity.oracles import NamedState, bell_psi_plus, ghz, make_named, w_state
from blochparity.states import basis_state, partial_trace, random_pure_state, tensor


def odd_data(state):
    return odd_correlation_data(bloch_decompose(state))


def test_reduced_purity_examples():
    verdict, length = reduced_purity_test(odd_data(w_state(3)), 1)
    assert verdict == INCONSISTENT and length == pytest.approx(1 / 3)
    verdict, length = reduced_purity_test(odd_data(tensor(basis_state("0"), bell_psi_plus())), 1)
    assert verdict == SEPARABLE and length == pytest.approx(1.0)
    with pytest.raises(ValidationError):
        reduced_purity_test(odd_data(w_state(3)), 4)


def test_restrict_matches_partial_trace(rng):
    psi = random_pure_state(5, rng=rng)
    b = bloch_decompose(psi)
    sub = (2, 4, 5)
    want = bloch_decompose(partial_trace(psi, sub))
    assert restrict(b, sub).max_abs_difference(want) <= 1e-12


def test_certificates(rng):
    a = random_pure_state(3, rng=rng)
    ok, dev = pure_certificate(bloch_decompose(a))
    assert ok and dev <= 1e-10
    b = random_pure_state(2, rng=rng)
    assert even_side_consistent(bloch_decompose(b))[0]
    mixed_red = partial_trace(random_pure_state(5, rng=rng), (1, 2, 3))
    assert not pure_certificate(bloch_decompose(mixed_red))[0]


def test_product_with_bell():
    rep = bisep_scan(odd_data(tensor(basis_state("0"), bell_psi_plus())))
    assert rep.consistent_cuts() == [(1,)]
    assert rep.verdict([2]) == INCONSISTENT


@pytest.mark.parametrize("state", [ghz(3), w_state(3), ghz(5), w_state(5)])
def test_genuinely_entangled_flagged(state):
    rep = bisep_scan(odd_data(state))
    assert rep.consistent_cuts() == []
    assert all(r["verdict"] == INCONSISTENT for r in rep.rows())


@pytest.mark.parametrize("cut", [(1,), (3,), (2, 4), (1, 5), (3, 4)])
def test_planted_cut_detected(cut):
    state = make_named(NamedState("biseparable-random", n=5, seed=sum(cut), cut=cut))
    rep = bisep_scan(odd_data(state))
    assert rep.verdict(cut) == SEPARABLE
    # a generic planted cut is the only consistent one
    assert rep.consistent_cuts() == [cut]


def test_full_product_consistent_everywhere(rng):
    state = tensor(*(random_pure_state(1, rng=rng) for _ in range(5)))
    rep = bisep_scan(odd_data(state))
    assert len(rep.consistent_cuts()) == 5 + 10


def test_scan_rejects_forbidden_input():
    full = bloch_decompose(w_state(3)).filter(lambda p: p.weight % 2 == 1)
    with pytest.raises(ValidationError):
        bisep_scan(full)
    with pytest.raises(ValidationError):
        bisep_scan(odd_data(ghz(4)))
    with pytest.raises(ValidationError):
        bisep_scan(bloch_decompose(w_state(3)).filter(lambda p: p.weight == 2))


def test_odd_correlation_data_filter():
    d = odd_data(ghz(5))
    assert d.weights() <= {1, 3}
    assert np.isclose(d.norm_squared(), 0.0)
