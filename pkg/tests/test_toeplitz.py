import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings
from hypothesis import strategies as st

from polyconv.errors import ContractViolation
from polyconv.special import lambda_sequence
from polyconv.toeplitz import embedding_length, toeplitz_apply, toeplitz_build

EPS = np.finfo(float).eps


def random_op(n, rng):
    col = rng.standard_normal(n)
    row = rng.standard_normal(n)
    row[0] = col[0]
    return toeplitz_build(col, row), sla.toeplitz(col, row)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 64, 257, 1000])
def test_fft_matches_dense(n):
    rng = np.random.default_rng(n)
    for _ in range(20):
        op, dense = random_op(n, rng)
        v = rng.standard_normal(n)
        bound = 50 * n * EPS * np.abs(dense).max() * np.abs(v).max()
        assert np.abs(toeplitz_apply(op, v) - dense @ v).max() <= bound


def test_random_n1000_relative_error():
    rng = np.random.default_rng(7)
    op, dense = random_op(1000, rng)
    v = rng.standard_normal(1000)
    exact = dense @ v
    assert np.linalg.norm(toeplitz_apply(op, v) - exact) <= 1e-12 * np.linalg.norm(exact)


def test_identity():
    e0 = np.zeros(6)
    e0[0] = 1.0
    v = np.arange(6.0)
    np.testing.assert_allclose(toeplitz_apply(toeplitz_build(e0, e0), v), v, atol=1e-15)


def test_row_sums_of_ones():
    n = 9
    op = toeplitz_build(np.ones(n), np.ones(n))
    np.testing.assert_allclose(toeplitz_apply(op, np.ones(n)), n * np.ones(n), rtol=1e-14)


def test_zero_vector():
    rng = np.random.default_rng(0)
    op, _ = random_op(17, rng)
    np.testing.assert_array_equal(toeplitz_apply(op, np.zeros(17)), np.zeros(17))


def test_shift_operator():
    n = 6
    col = np.zeros(n)
    row = np.zeros(n)
    row[1] = 1.0
    v = np.arange(1.0, n + 1)
    out = toeplitz_apply(toeplitz_build(col, row), v)
    np.testing.assert_allclose(out, np.r_[v[1:], 0.0], atol=1e-14)


def test_upper_triangular_conversion_column():
    n = 11
    row = lambda_sequence(n)
    row[1::2] = 0.0
    col = np.zeros(n)
    col[0] = row[0]
    e_last = np.zeros(n)
    e_last[-1] = 1.0
    out = toeplitz_apply(toeplitz_build(col, row), e_last)
    expected = np.array([row[n - 1 - j] for j in range(n)])
    np.testing.assert_allclose(out, expected, atol=1e-15)


def test_embedding_length_is_power_of_two():
    assert [embedding_length(n) for n in (1, 2, 3, 5, 64, 257)] == [1, 4, 8, 16, 128, 1024]
    op = toeplitz_build(np.ones(5), np.ones(5))
    assert op.m == 16 and op.symbol.size == 16 // 2 + 1


def test_stacked_vectors():
    rng = np.random.default_rng(3)
    op, dense = random_op(20, rng)
    vs = rng.standard_normal((3, 20))
    np.testing.assert_allclose(toeplitz_apply(op, vs), vs @ dense.T, atol=1e-13)


def test_contract_violations():
    with pytest.raises(ContractViolation):
        toeplitz_build([1.0, 2.0], [1.0])
    with pytest.raises(ContractViolation):
        toeplitz_build([1.0, 2.0], [0.5, 2.0])
    with pytest.raises(ContractViolation):
        toeplitz_build([], [])
    op = toeplitz_build([1.0, 2.0], [1.0, 3.0])
    with pytest.raises(ContractViolation):
        toeplitz_apply(op, np.ones(3))


def test_operator_is_immutable():
    op = toeplitz_build([1.0, 2.0], [1.0, 3.0])
    with pytest.raises(ValueError):
        op.symbol[0] = 0.0


@settings(max_examples=50, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=80),
    seed=st.integers(min_value=0, max_value=2**31),
    alpha=st.floats(min_value=-10, max_value=10),
    beta=st.floats(min_value=-10, max_value=10),
)
def test_linearity(n, seed, alpha, beta):
    rng = np.random.default_rng(seed)
    op, dense = random_op(n, rng)
    u, v = rng.standard_normal((2, n))
    lhs = toeplitz_apply(op, alpha * u + beta * v)
    rhs = alpha * toeplitz_apply(op, u) + beta * toeplitz_apply(op, v)
    scale = np.abs(dense).max() * n * (abs(alpha) * np.abs(u).max() + abs(beta) * np.abs(v).max())
    assert np.abs(lhs - rhs).max() <= 50 * EPS * scale + 1e-300
