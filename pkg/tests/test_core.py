"""Tensor storage, contractions and structural transforms."""

import itertools

import numpy as np
import pytest

from ptensor import (
    DegenerateInput,
    DimensionError,
    Tensor,
    all_ones_tensor,
    comparison_tensor,
    contract_full,
    contract_m1,
    contract_m1_jacobian,
    embed_vector,
    hadamard_power,
    identity_tensor,
    is_diagonal_index,
    outer_power,
    principal_subtensor,
    support,
    symmetrize,
    zero_tensor,
)
from oracles import brute_contract_full, brute_contract_m1


def test_tensor_validation():
    with pytest.raises(DimensionError):
        Tensor(np.zeros(3))  # order 1
    with pytest.raises(DimensionError):
        Tensor(np.zeros((2, 3)))  # not hypercubic
    with pytest.raises(DegenerateInput):
        Tensor(np.array([[np.nan, 0.0], [0.0, 0.0]]))


def test_tensor_is_immutable():
    A = identity_tensor(3, 2)
    with pytest.raises(ValueError):
        A.data[0, 0, 0] = 5.0


def test_values_row_major_linearization():
    data = np.arange(8.0).reshape(2, 2, 2)
    A = Tensor(data)
    # idx = i1*n^2 + i2*n + i3
    for idx in itertools.product(range(2), repeat=3):
        flat = idx[0] * 4 + idx[1] * 2 + idx[2]
        assert A.values[flat] == data[idx]


def test_is_diagonal_index():
    assert is_diagonal_index((1, 1, 1))
    assert not is_diagonal_index((0, 1, 1))


def test_contract_m1_identity_case():
    A = identity_tensor(3, 2)
    out = contract_m1(A, np.array([2.0, 3.0]))
    assert np.array_equal(out, np.array([4.0, 9.0]))


def test_contract_m1_reference_values(ref_tensor):
    y = np.array([0.0, 1.0, -1.0])
    out = contract_m1(ref_tensor, y)
    # second and third components are the known exact refutation values
    assert abs(out[1] - (-0.5)) <= 1e-12
    assert abs(out[2] - (-1.0)) <= 1e-12
    # first component from the loop oracle (= 2: the two pure off terms)
    oracle = brute_contract_m1(ref_tensor.data, y)
    assert abs(out[0] - 2.0) <= 1e-12
    assert np.allclose(out, oracle, atol=1e-12)


def test_contract_m1_dimension_mismatch(ref_tensor):
    with pytest.raises(DimensionError):
        contract_m1(ref_tensor, np.ones(4))


def test_contract_full_examples(ref_tensor):
    assert contract_full(zero_tensor(3, 3), np.array([1.0, -2.0, 0.5])) == 0.0
    assert contract_full(identity_tensor(4, 2), np.array([1.0, 1.0])) == 2.0
    y = np.array([0.0, 1.0, -1.0])
    val = contract_full(ref_tensor, y)
    assert abs(val - 0.5) <= 1e-12
    assert abs(val - brute_contract_full(ref_tensor.data, y)) <= 1e-12


def test_hadamard_power():
    assert np.array_equal(hadamard_power([2.0, -3.0], 2), [4.0, 9.0])
    assert np.array_equal(hadamard_power([2.0, -3.0], 3), [8.0, -27.0])
    x = np.array([0.3, -1.7, 2.0])
    assert np.array_equal(hadamard_power(x, 1), x)
    with pytest.raises(ValueError):
        hadamard_power(x, -1)


def test_principal_subtensor_identity_and_single(ref_tensor):
    n = ref_tensor.dim
    full = principal_subtensor(ref_tensor, range(n))
    assert np.array_equal(full.data, ref_tensor.data)
    single = principal_subtensor(ref_tensor, [0])
    assert single.dim == 1
    assert single.data.reshape(-1)[0] == 100.0


def test_principal_subtensor_reference_block(ref_tensor):
    sub = principal_subtensor(ref_tensor, [1, 2])
    # read off by brute-force index mapping
    s = [1, 2]
    for idx in itertools.product(range(2), repeat=3):
        mapped = tuple(s[i] for i in idx)
        assert sub.data[idx] == ref_tensor.data[mapped]
    assert sub.data[0, 0, 0] == 3.0
    assert sub.data[0, 0, 1] == 3.0
    assert sub.data[0, 1, 1] == 2.5
    assert sub.data[1, 1, 1] == 1.0
    assert sub.symmetric


def test_principal_subtensor_errors(ref_tensor):
    with pytest.raises(IndexError):
        principal_subtensor(ref_tensor, [0, 5])
    with pytest.raises(IndexError):
        principal_subtensor(ref_tensor, [1, 1])
    with pytest.raises(IndexError):
        principal_subtensor(ref_tensor, [])


def test_principal_subtensor_composes(rng):
    A = Tensor(rng.uniform(-1, 1, size=(4, 4, 4)))
    once = principal_subtensor(principal_subtensor(A, [0, 1, 3]), [0, 2])
    direct = principal_subtensor(A, [0, 3])
    assert np.array_equal(once.data, direct.data)


def test_comparison_tensor_examples():
    # nonnegative-diagonal Z-tensor maps to itself
    A = 5.0 * identity_tensor(3, 2) - all_ones_tensor(3, 2)
    assert np.array_equal(comparison_tensor(A).data, A.data)
    assert A.data[0, 0, 0] == 4.0 and A.data[0, 0, 1] == -1.0


def test_comparison_tensor_idempotent_and_sign_canonical(rng):
    for _ in range(5):
        A = Tensor(rng.uniform(-2, 2, size=(3, 3, 3)))
        M = comparison_tensor(A)
        assert np.array_equal(comparison_tensor(M).data, M.data)
        diag = M.diagonal()
        assert np.all(diag >= 0.0)
        off = M.data.copy()
        idx = np.arange(3)
        off[idx, idx, idx] = 0.0
        assert np.all(off <= 0.0)


def test_symmetrize_matrix_example():
    A = Tensor(np.array([[0.0, 1.0], [0.0, 0.0]]))
    S = symmetrize(A)
    assert np.array_equal(S.data, np.array([[0.0, 0.5], [0.5, 0.0]]))
    assert S.symmetric


def test_symmetrize_preserves_form_and_projects(rng):
    A = Tensor(rng.uniform(-1, 1, size=(2, 2, 2)))
    S = symmetrize(A)
    for _ in range(10):
        x = rng.uniform(-1, 1, size=2)
        assert abs(contract_full(A, x) - contract_full(S, x)) <= 1e-12
    SS = symmetrize(S)
    assert np.max(np.abs(SS.data - S.data)) <= 1e-15
    # symmetric input passes through
    assert symmetrize(S).symmetry_deviation() == 0.0


def test_outer_power_examples():
    e0 = np.array([1.0, 0.0])
    T = outer_power(e0, 3)
    expected = np.zeros((2, 2, 2))
    expected[0, 0, 0] = 1.0
    assert np.array_equal(T.data, expected)
    ones = outer_power(np.array([1.0, 1.0]), 3)
    assert np.array_equal(ones.data, np.ones((2, 2, 2)))
    U = outer_power(np.array([1.0, 2.0]), 3)
    assert U.data[1, 1, 0] == 4.0
    with pytest.raises(ValueError):
        outer_power(e0, 1)


def test_support_examples():
    assert np.array_equal(support(np.array([0.0, 1.0, -1.0])), [1, 2])
    assert np.array_equal(support(np.array([1e-20, 1.0])), [1])
    assert np.array_equal(support(np.array([3.0, 3.0, 3.0])), [0, 1, 2])
    with pytest.raises(DegenerateInput):
        support(np.zeros(3))


def test_embed_vector():
    z = embed_vector([1.0, -2.0], [0, 2], 4)
    assert np.array_equal(z, [1.0, 0.0, -2.0, 0.0])


def test_homogeneity_invariant(rng):
    A = Tensor(rng.uniform(-1, 1, size=(3, 3, 3)))
    x = rng.uniform(-1, 1, size=3)
    for _ in range(10):
        t = rng.uniform(-2, 2)
        if abs(t) < 1e-3:
            continue
        lhs = contract_m1(A, t * x)
        rhs = t ** (A.order - 1) * contract_m1(A, x)
        assert np.max(np.abs(lhs - rhs)) <= 1e-10 * max(1.0, np.max(np.abs(rhs)))


def test_inner_product_consistency(rng):
    for m in (2, 3, 4):
        A = Tensor(rng.uniform(-1, 1, size=(3,) * m))
        x = rng.uniform(-1, 1, size=3)
        lhs = float(np.dot(x, contract_m1(A, x)))
        assert abs(lhs - contract_full(A, x)) <= 1e-12


def test_jacobian_matches_finite_differences(rng):
    for m in (2, 3, 4):
        A = Tensor(rng.uniform(-1, 1, size=(3,) * m))
        x = rng.uniform(0.2, 1.0, size=3)
        J = contract_m1_jacobian(A, x)
        h = 1e-7
        for j in range(3):
            xp, xm = x.copy(), x.copy()
            xp[j] += h
            xm[j] -= h
            fd = (contract_m1(A, xp) - contract_m1(A, xm)) / (2 * h)
            assert np.max(np.abs(J[:, j] - fd)) <= 1e-5 * max(1.0, np.max(np.abs(J)))


def test_tensor_arithmetic():
    A = identity_tensor(3, 2)
    B = all_ones_tensor(3, 2)
    C = 5.0 * A - B
    assert C.data[0, 0, 0] == 4.0
    assert C.data[0, 1, 0] == -1.0
    assert (-C).data[0, 0, 0] == -4.0
    assert C.symmetric
