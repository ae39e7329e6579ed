import math

import numpy as np
import pytest

from conftest import decaying, quad_cheb2leg, quad_jacobi, quad_laguerre, quad_leg2cheb, quad_ultra
from polyconv.errors import ContractViolation, InvalidParameter
from polyconv.oracle import DenseConversionSpec, dense_matrix, dense_row, direct_apply, dot2
from polyconv.special import lam

EPS = np.finfo(float).eps


def spec(kind, params=(), n=10):
    return DenseConversionSpec(kind, params, n)


def test_leg2cheb_3x3():
    np.testing.assert_allclose(
        dense_matrix(spec("leg2cheb", n=3)), [[1, 0, 0.25], [0, 1, 0], [0, 0, 0.75]], atol=2e-16
    )


def test_leg2cheb_row0():
    row = dense_row(spec("leg2cheb", n=12), 0)
    k = np.arange(12)
    expected = np.where(k % 2 == 0, lam(k / 2) ** 2 / np.pi, 0.0)
    np.testing.assert_allclose(row, expected, rtol=4e-16, atol=0)


def test_cheb2leg_diagonal():
    n = 50
    m = dense_matrix(spec("cheb2leg", n=n))
    j = np.arange(1, n)
    np.testing.assert_allclose(np.diag(m)[1:], math.sqrt(math.pi) / (2 * lam(j)), rtol=1e-15)
    assert m[0, 0] == 1.0


def test_leg2cheb_times_cheb2leg_is_identity():
    n = 257
    prod = dense_matrix(spec("leg2cheb", n=n)) @ dense_matrix(spec("cheb2leg", n=n))
    assert np.abs(prod - np.eye(n)).max() <= 1e-10


def test_leg_cheb_against_quadrature():
    n = 12
    np.testing.assert_allclose(dense_matrix(spec("leg2cheb", n=n)), quad_leg2cheb(n), atol=1e-13)
    np.testing.assert_allclose(dense_matrix(spec("cheb2leg", n=n)), quad_cheb2leg(n), atol=1e-13)


@pytest.mark.parametrize("params", [(0.25, 0.75), (1.0, 2.0), (2.0, 1.0), (0.3, 2.9), (1.5, 0.7)])
def test_ultraspherical_against_quadrature(params):
    n = 10
    exact = quad_ultra(*params, n)
    np.testing.assert_allclose(dense_matrix(spec("ultra2ultra", params, n)), exact, atol=1e-11 * np.abs(exact).max())


@pytest.mark.parametrize(
    "params",
    [
        (0.0, 0.3, 0.4, 0.3),
        (0.0, 2**-0.5, -0.25, 2**-0.5),
        (-0.6, -0.6, -0.9, -0.6),
        (0.1, 0.2, 2.3, 0.2),
        (0.0, 0.0, 1.0, 0.0),
        (0.0, 0.3, 0.4, 0.7),
        (0.1, 0.3, -0.5, -0.5),
    ],
)
def test_jacobi_against_quadrature(params):
    n = 10
    exact = quad_jacobi(*params, n)
    np.testing.assert_allclose(dense_matrix(spec("jac2jac", params, n)), exact, atol=1e-10 * np.abs(exact).max())


@pytest.mark.parametrize("params", [(0.7, 0.2), (0.0, 1.0), (0.3, 2.6), (1.5, -0.5)])
def test_laguerre_against_quadrature(params):
    n = 9
    exact = quad_laguerre(*params, n)
    np.testing.assert_allclose(dense_matrix(spec("lag2lag", params, n)), exact, atol=1e-11 * np.abs(exact).max())


def test_jac2cheb_of_legendre_equals_leg2cheb():
    n = 40
    np.testing.assert_allclose(
        dense_matrix(spec("jac2cheb", (0.0, 0.0), n)), dense_matrix(spec("leg2cheb", n=n)), atol=1e-14
    )


@pytest.mark.parametrize(
    "kind, params",
    [
        ("leg2cheb", ()),
        ("cheb2leg", ()),
        ("ultra2ultra", (0.3, 1.9)),
        ("jac2jac", (0.2, -0.4, -0.7, 0.6)),
        ("jac2cheb", (0.1, 0.3)),
        ("lag2lag", (0.7, 0.2)),
    ],
)
def test_matrices_are_upper_triangular(kind, params):
    m = dense_matrix(spec(kind, params, 60))
    assert np.abs(np.tril(m, -1)).max() == 0.0


@pytest.mark.parametrize("kind, params", [("jac2jac", (0.2, -0.4, -0.7, 0.6)), ("cheb2jac", (0.1, 0.3))])
def test_dense_row_of_composite_matches_matrix(kind, params):
    s = spec(kind, params, 30)
    m = dense_matrix(s)
    for j in (0, 7, 29):
        np.testing.assert_allclose(dense_row(s, j), m[j], atol=1e-14)


def test_direct_apply_examples():
    np.testing.assert_allclose(direct_apply(spec("leg2cheb", n=3), [0, 0, 1]), [0.25, 0, 0.75], atol=2e-16)
    v = decaying(17)
    np.testing.assert_array_equal(direct_apply(spec("identity", n=17), v), v)
    np.testing.assert_array_equal(direct_apply(spec("ultra2ultra", (0.4, 0.4), 17), v), v)


def test_direct_apply_streams_in_blocks():
    n = 3000
    v = decaying(n)
    s = spec("leg2cheb", n=n)
    rows = np.array([dense_row(s, j) @ v for j in (0, 1500, 2999)])
    np.testing.assert_allclose(direct_apply(s, v)[[0, 1500, 2999]], rows, rtol=1e-13, atol=1e-17)


def test_dot2_is_compensated():
    # Sum with massive cancellation; plain summation loses every digit.
    row = np.array([[1e16, 1.0, -1e16, 1.0]])
    assert dot2(row, np.ones(4))[0] == 2.0
    rng = np.random.default_rng(0)
    a = rng.standard_normal((5, 1000))
    v = rng.standard_normal(1000)
    exact = np.array([math.fsum(x) for x in a * v])
    # Each product is exact after the two-product split.
    assert np.abs(dot2(a, v) - exact).max() <= 2 * EPS * np.abs(exact).max()


def test_oracle_dot_error_bound():
    n = 513
    s = spec("cheb2leg", n=n)
    m = dense_matrix(s)
    v = decaying(n, 0.0)
    out = direct_apply(s, v)
    exact = np.array([math.fsum(x) for x in m * v])
    bound = 10 * n * EPS * np.linalg.norm(m, axis=1) * np.linalg.norm(v)
    assert np.all(np.abs(out - exact) <= bound)


def test_invalid_specs():
    with pytest.raises(InvalidParameter):
        spec("nope")
    with pytest.raises(InvalidParameter):
        spec("ultra2ultra", (0.0, 1.0))
    with pytest.raises(InvalidParameter):
        spec("jac2jac", (-1.0, 0.0, 0.0, 0.0))
    with pytest.raises(InvalidParameter):
        spec("lag2lag", (0.5,))
    with pytest.raises(InvalidParameter):
        DenseConversionSpec("leg2cheb", (), 0)
    with pytest.raises(InvalidParameter):
        dense_row(spec("leg2cheb", n=4), 4)
    with pytest.raises(ContractViolation):
        direct_apply(spec("leg2cheb", n=4), np.ones(3))
