import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dgdealias.spectral import (
    OperatorConstructionError,
    RuleKind,
    build_operators,
    derivative_matrix,
    gauss_rule,
    interpolation_matrix,
    lagrange_basis_eval,
    legendre,
    lgl_rule,
    orthonormal_legendre,
    vandermonde,
)


def exact_monomial(k):
    return 0.0 if k % 2 else 2.0 / (k + 1)


def test_lgl_low_orders():
    r = lgl_rule(1)
    assert r.kind is RuleKind.LGL
    np.testing.assert_allclose(r.nodes, [-1, 1])
    np.testing.assert_allclose(r.weights, [1, 1])
    r = lgl_rule(2)
    np.testing.assert_allclose(r.nodes, [-1, 0, 1], atol=1e-15)
    np.testing.assert_allclose(r.weights, [1 / 3, 4 / 3, 1 / 3], rtol=1e-14)


def test_lgl_n4_integrates_x6():
    r = lgl_rule(4)
    assert abs(r.integrate(r.nodes**6) - 2 / 7) < 1e-13


def test_gauss_low_orders():
    r = gauss_rule(1)
    np.testing.assert_allclose(r.nodes, [0.0], atol=1e-16)
    np.testing.assert_allclose(r.weights, [2.0])
    r = gauss_rule(2)
    np.testing.assert_allclose(r.nodes, [-1 / np.sqrt(3), 1 / np.sqrt(3)], rtol=1e-15)
    np.testing.assert_allclose(r.weights, [1, 1], rtol=1e-15)
    r = gauss_rule(5)
    assert abs(r.integrate(r.nodes**8) - 2 / 9) < 1e-13


def test_gauss_matches_numpy_leggauss():
    for Q in range(1, 25):
        x, w = np.polynomial.legendre.leggauss(Q)
        r = gauss_rule(Q)
        np.testing.assert_allclose(r.nodes, x, atol=1e-14)
        np.testing.assert_allclose(r.weights, w, atol=1e-14)


@pytest.mark.parametrize("N", range(1, 32))
def test_lgl_rule_invariants(N):
    r = lgl_rule(N)
    assert r.order == N + 1
    assert r.nodes[0] == -1.0 and r.nodes[-1] == 1.0
    assert np.all(np.diff(r.nodes) > 0)
    assert np.all(r.weights > 0)
    assert abs(r.weights.sum() - 2.0) < 1e-13
    # interior nodes are the roots of L_N'
    if N > 1:
        _, dL = legendre(N, r.nodes[1:-1])
        assert np.max(np.abs(dL)) < 1e-9 * N**2


@pytest.mark.parametrize("n", range(2, 20))
def test_quadrature_exactness_on_monomials(n):
    lgl = lgl_rule(n - 1)
    for k in range(2 * n - 2):
        assert abs(lgl.integrate(lgl.nodes**k) - exact_monomial(k)) < 1e-12 * max(1, exact_monomial(k))
    g = gauss_rule(n)
    for k in range(2 * n):
        assert abs(g.integrate(g.nodes**k) - exact_monomial(k)) < 1e-12 * max(1, exact_monomial(k))


def test_lgl_rule_is_not_exact_beyond_degree():
    r = lgl_rule(3)  # 4 nodes: exact to degree 5, not 6
    assert abs(r.integrate(r.nodes**6) - 2 / 7) > 1e-3


def test_rule_arguments_validated():
    with pytest.raises(ValueError):
        lgl_rule(0)
    with pytest.raises(ValueError):
        gauss_rule(0)


def test_lagrange_examples():
    assert lagrange_basis_eval([-1.0, 1.0], 0, 0.0) == pytest.approx(0.5)
    assert lagrange_basis_eval([-1.0, 0.0, 1.0], 1, 0.5) == pytest.approx(0.75)
    with pytest.raises(ValueError):
        lagrange_basis_eval([0.0, 0.0, 1.0], 0, 0.3)


@given(st.integers(1, 12), st.integers(0, 12))
def test_lagrange_cardinal_property(N, j):
    nodes = lgl_rule(N).nodes
    j = j % (N + 1)
    vals = [lagrange_basis_eval(nodes, i, nodes[j]) for i in range(N + 1)]
    np.testing.assert_allclose(vals, np.eye(N + 1)[j], atol=1e-14)


def test_n1_derivative_matrix():
    ops = build_operators(1)
    np.testing.assert_allclose(ops.D, [[-0.5, 0.5], [-0.5, 0.5]], atol=1e-15)
    np.testing.assert_allclose(ops.Q + ops.Q.T, np.diag([-1.0, 1.0]), atol=1e-15)


@pytest.mark.parametrize("N", range(1, 32))
def test_sbp_and_operator_invariants(N):
    ops = build_operators(N)
    assert ops.sbp_residual() < 1e-12
    B = np.zeros((N + 1, N + 1))
    B[0, 0], B[-1, -1] = -1, 1
    np.testing.assert_array_equal(ops.B, B)
    assert np.max(np.abs(ops.D.sum(axis=1))) < 1e-12 * max(1, N)
    assert np.max(np.abs(ops.V @ ops.Vinv - np.eye(N + 1))) < 1e-11


@pytest.mark.parametrize("N", range(1, 16))
def test_derivative_exact_on_monomials(N):
    ops = build_operators(N)
    x = ops.nodes
    for k in range(N + 1):
        expected = k * x ** (k - 1) if k else np.zeros_like(x)
        assert np.max(np.abs(ops.D @ x**k - expected)) < 1e-11


def test_operator_set_is_immutable():
    ops = build_operators(4)
    with pytest.raises(ValueError):
        ops.D[0, 0] = 1.0


def test_build_operators_range():
    for N in (0, 32):
        with pytest.raises(ValueError):
            build_operators(N)
    assert issubclass(OperatorConstructionError, RuntimeError)


def test_interpolation_examples():
    nodes = lgl_rule(5).nodes
    np.testing.assert_allclose(interpolation_matrix(nodes, nodes), np.eye(6), atol=1e-15)
    np.testing.assert_allclose(interpolation_matrix([-1.0, 1.0], [0.0]), [[0.5, 0.5]])
    src, dst = lgl_rule(3).nodes, gauss_rule(6).nodes
    np.testing.assert_allclose(interpolation_matrix(src, dst) @ src**2, dst**2, atol=1e-13)
    with pytest.raises(ValueError):
        interpolation_matrix([0.0, 0.0], [0.5])


@given(st.integers(1, 15), st.integers(1, 20), st.integers(0, 2**31 - 1))
def test_interpolation_reproduces_polynomials(N, Q, seed):
    rng = np.random.default_rng(seed)
    coeffs = rng.normal(size=N + 1)
    src, dst = lgl_rule(N).nodes, gauss_rule(Q).nodes
    p = np.polynomial.legendre.Legendre(coeffs)
    np.testing.assert_allclose(interpolation_matrix(src, dst) @ p(src), p(dst), atol=1e-11 * np.abs(coeffs).sum())


def test_derivative_matrix_on_gauss_nodes():
    x = gauss_rule(7).nodes
    np.testing.assert_allclose(derivative_matrix(x) @ x**5, 5 * x**4, atol=1e-12)


def test_vandermonde_is_orthonormal_under_exact_quadrature():
    r = gauss_rule(20)
    V = vandermonde(r.nodes, 10)
    np.testing.assert_allclose(V.T @ (r.weights[:, None] * V), np.eye(10), atol=1e-13)
    np.testing.assert_allclose(orthonormal_legendre(2, np.array([1.0])), [np.sqrt(5 / 2)])


@given(st.integers(1, 20), st.integers(0, 2**31 - 1))
def test_modal_nodal_round_trip(N, seed):
    qhat = np.random.default_rng(seed).normal(size=N + 1)
    ops = build_operators(N)
    np.testing.assert_allclose(ops.Vinv @ (ops.V @ qhat), qhat, atol=1e-10)
