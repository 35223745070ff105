import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import chisquare

from hsplab import numtheory as nt
from hsplab.errors import DimensionMismatch, NotUnitary, RangeError
from hsplab.fourier import HADAMARD, apply_group_ft
from hsplab.groups import AbelianGroup, all_subgroups, subgroup_closure, whole_group
from hsplab.statevector import (
    RegisterLayout,
    apply_oracle,
    apply_shift,
    apply_unitary,
    basis_state,
    collapse,
    from_amplitudes,
    measure_register,
    measurement_distribution,
    prepare_coset_state,
    uniform_state,
)
from oracles import full_operator


def test_uniform_examples():
    assert np.allclose(uniform_state((4,)).amplitudes, 0.5)
    assert np.allclose(uniform_state((7,)).amplitudes, 1 / np.sqrt(7))
    st_ = uniform_state((2, 2))
    assert np.allclose(st_.amplitudes, [1 / np.sqrt(2), 0, 1 / np.sqrt(2), 0])
    padded = uniform_state((4, 2), 0, support=3)
    assert np.allclose(measurement_distribution(padded, 0), [1 / 3, 1 / 3, 1 / 3, 0])


def test_layout_validation():
    with pytest.raises(ValueError):
        RegisterLayout((1, 4))
    with pytest.raises(ValueError):
        RegisterLayout((1 << 12, 1 << 11))
    with pytest.raises(ValueError):
        from_amplitudes((2,), [1, 1])


def test_apply_unitary_examples():
    st_ = basis_state((2,), (0,))
    apply_unitary(st_, np.eye(2), 0)
    assert np.allclose(st_.amplitudes, [1, 0])
    apply_unitary(st_, HADAMARD, 0)
    assert np.allclose(st_.amplitudes, [1 / np.sqrt(2)] * 2)
    with pytest.raises(NotUnitary):
        apply_unitary(st_, np.array([[1, 1], [0, 1]]), 0)
    with pytest.raises(DimensionMismatch):
        apply_unitary(st_, np.eye(3), 0)


def _random_unitary(rng, d):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(2, 4), min_size=1, max_size=4), st.data())
def test_apply_unitary_matches_dense_operator(dims, data):
    dims = tuple(dims)
    if np.prod(dims) > 256:
        return
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    ntarg = data.draw(st.integers(1, min(2, len(dims))))
    targets = tuple(data.draw(st.permutations(range(len(dims))))[:ntarg])
    U = _random_unitary(rng, int(np.prod([dims[t] for t in targets])))
    v = rng.normal(size=int(np.prod(dims))) + 1j * rng.normal(size=int(np.prod(dims)))
    v /= np.linalg.norm(v)
    st_ = from_amplitudes(dims, v)
    apply_unitary(st_, U, targets)
    expected = full_operator(dims, U, targets) @ v
    assert np.abs(st_.amplitudes - expected).max() < 1e-10
    assert abs(st_.norm() - 1) < 1e-10


def test_oracle_examples():
    st_ = uniform_state((4, 3))
    before = st_.amplitudes.copy()
    apply_oracle(st_, lambda x: 0)
    assert np.array_equal(st_.amplitudes, before)
    st_ = uniform_state((2, 2))
    apply_oracle(st_, lambda x: x)
    assert np.allclose(st_.amplitudes, [1 / np.sqrt(2), 0, 0, 1 / np.sqrt(2)])
    assert st_.oracle_calls == 1
    with pytest.raises(RangeError):
        apply_oracle(uniform_state((2, 2)), lambda x: 2)


def test_modexp_oracle_state():
    st_ = uniform_state((256, 15))
    apply_oracle(st_, lambda x: nt.mod_exp(7, x, 15))
    t = st_.tensor()
    for x in range(256):
        row = np.zeros(15)
        row[pow(7, x, 15)] = 1 / 16
        assert np.allclose(t[x], row)
    # measuring the value register leaves a periodic comb on the input register
    y, _ = measure_register(st_, 1, np.random.default_rng(3))
    support = np.nonzero(np.abs(st_.tensor()[:, y]) > 1e-12)[0]
    x0 = support[0]
    assert list(support) == list(range(x0, 256, 4))
    assert np.allclose(np.abs(st_.tensor()[support, y]), 1 / 8)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(2, 5), min_size=2, max_size=3), st.data())
def test_oracle_preserves_norm(dims, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    v = rng.normal(size=int(np.prod(dims))) + 0j
    v /= np.linalg.norm(v)
    st_ = from_amplitudes(dims, v)
    f = rng.integers(0, dims[1], size=dims[0])
    apply_oracle(st_, f, 0, 1)
    assert abs(st_.norm() - 1) < 1e-12
    assert np.allclose(np.sort(np.abs(st_.amplitudes)), np.sort(np.abs(v)))


def test_measure_examples(rng):
    st_ = basis_state((5,), (3,))
    out, st2 = measure_register(st_, 0, rng)
    assert out == 3 and np.allclose(st2.amplitudes, np.eye(5)[3])
    plus = from_amplitudes((2,), [1 / np.sqrt(2)] * 2)
    assert np.allclose(measurement_distribution(plus, 0), [0.5, 0.5])
    prod_state = from_amplitudes((2, 3), np.kron([0.6, 0.8], [1, 0, 0]))
    assert np.allclose(measurement_distribution(prod_state, 0), [0.36, 0.64])
    with pytest.raises(ValueError):
        collapse(basis_state((2,), (0,)), 0, 1)


def test_post_ft_period_distribution():
    st_ = uniform_state((256, 15))
    apply_oracle(st_, lambda x: nt.mod_exp(7, x, 15))
    measure_register(st_, 1, np.random.default_rng(0))
    apply_group_ft(st_, AbelianGroup((256,)), 0)
    p = measurement_distribution(st_, 0)
    expected = np.zeros(256)
    expected[[0, 64, 128, 192]] = 0.25
    assert np.abs(p - expected).max() < 1e-12


def test_measurement_chi_square():
    rng = np.random.default_rng(11)
    draws = [measure_register(uniform_state((8,)), 0, rng)[0] for _ in range(10_000)]
    counts = np.bincount(draws, minlength=8)
    assert chisquare(counts).pvalue > 1e-3
    # non-uniform target
    amps = np.sqrt(np.arange(1, 7) / 21)
    draws = [measure_register(from_amplitudes((6,), amps), 0, rng)[0] for _ in range(10_000)]
    counts = np.bincount(draws, minlength=6)
    assert chisquare(counts, 10_000 * np.arange(1, 7) / 21).pvalue > 1e-3


def test_coset_state_examples():
    G = AbelianGroup((12,))
    K = subgroup_closure(G, [3])
    st_ = prepare_coset_state(G, K, 1)
    expected = np.zeros(12)
    expected[[1, 4, 7, 10]] = 0.5
    assert np.allclose(st_.amplitudes, expected)
    assert np.allclose(prepare_coset_state(G, whole_group(G), 5).amplitudes, 1 / np.sqrt(12))
    assert np.allclose(prepare_coset_state(G, K, 0).amplitudes[[0, 3, 6, 9]], 0.5)


@pytest.mark.parametrize("orders", [(12,), (2, 4), (3, 3), (2, 2, 2), (6, 2)])
def test_shift_covariance(orders):
    G = AbelianGroup(orders)
    for K in all_subgroups(G):
        base = prepare_coset_state(G, K, G.identity)
        ref = measurement_distribution(apply_group_ft(base.copy(), G), 0)
        for g in G.elements():
            shifted = apply_shift(base.copy(), G, g)
            assert np.abs(measurement_distribution(apply_group_ft(shifted, G), 0) - ref).max() < 1e-12
