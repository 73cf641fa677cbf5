import math

import numpy as np
import pytest

from dunklosc.hermite import (
    GridFunction,
    dunkl_apply,
    dunkl_laplacian,
    eigenvalue,
    enumerate_multiindices,
    enumerate_Neps,
    eps_decompose,
    hermite_fn,
    hermite_fn_1d,
    hermite_fn_1d_batch,
    hermite_fn_deriv,
)
from dunklosc.measure import fullspace_quad_rule, weighted_quad_rule


def test_orthonormality_1d():
    a = 0.7
    rule = fullspace_quad_rule((a,), 48)
    x = rule.nodes[:, 0]
    nmax = 10
    vals = hermite_fn_1d_batch(nmax, a, x)
    gram = (vals * rule.weights) @ vals.T
    np.testing.assert_allclose(gram, np.eye(nmax + 1), atol=5e-13)


def test_batch_matches_single():
    a = -0.2
    x = np.linspace(-3.0, 3.0, 21)
    batch = hermite_fn_1d_batch(8, a, x)
    for n in range(9):
        np.testing.assert_allclose(batch[n], hermite_fn_1d(n, a, x), rtol=1e-12)


def test_parity():
    a = 1.3
    x = np.linspace(0.1, 3.0, 11)
    for n in range(6):
        sign = 1.0 if n % 2 == 0 else -1.0
        np.testing.assert_allclose(
            hermite_fn_1d(n, a, -x), sign * hermite_fn_1d(n, a, x), rtol=1e-12
        )


def test_classical_limit():
    # at a = -1/2 the functions are the classical normalized Hermite functions
    x = np.linspace(-2.5, 2.5, 31)
    h0 = np.pi ** -0.25 * np.exp(-x ** 2 / 2.0)
    h1 = np.sqrt(2.0) * np.pi ** -0.25 * x * np.exp(-x ** 2 / 2.0)
    h2 = (2.0 * x ** 2 - 1.0) / np.sqrt(2.0) * np.pi ** -0.25 * np.exp(-x ** 2 / 2.0)
    np.testing.assert_allclose(hermite_fn_1d(0, -0.5, x), h0, atol=1e-13)
    np.testing.assert_allclose(hermite_fn_1d(1, -0.5, x), h1, atol=1e-13)
    np.testing.assert_allclose(hermite_fn_1d(2, -0.5, x), h2, atol=1e-13)


def test_tensor_product_and_eigenvalue():
    alpha = (0.3, 1.7)
    x = np.array([[0.5, 1.0], [1.2, -0.4]])
    n = (2, 3)
    v = hermite_fn(n, alpha, x)
    np.testing.assert_allclose(
        v,
        hermite_fn_1d(2, 0.3, x[:, 0]) * hermite_fn_1d(3, 1.7, x[:, 1]),
        rtol=1e-13,
    )
    assert eigenvalue(n, alpha) == pytest.approx(2 * 5 + 2 * 2.0 + 4.0)


def test_eigen_relation_via_operator():
    # (-Laplacian + |x|^2) h_n = lambda_n h_n at generic points
    alpha = (0.6, 0.1)
    n = (3, 2)
    lam = eigenvalue(n, alpha)
    f = lambda x: hermite_fn(n, alpha, np.atleast_2d(x)).item()
    rng = np.random.default_rng(5)
    for _ in range(5):
        x = rng.uniform(0.2, 1.5, size=2)
        lhs = -dunkl_laplacian(alpha, f, x) + float(np.sum(x ** 2)) * f(x)
        assert lhs == pytest.approx(lam * f(x), rel=5e-6)


def test_hermite_deriv_vs_finite_difference():
    alpha = (0.8,)
    n = (4,)
    x = np.array([[0.7], [1.4], [-0.9]])
    d = hermite_fn_deriv(n, alpha, x, 0)
    h = 1e-6
    xp = x.copy(); xp[:, 0] += h
    xm = x.copy(); xm[:, 0] -= h
    fd = (hermite_fn(n, alpha, xp) - hermite_fn(n, alpha, xm)) / (2.0 * h)
    np.testing.assert_allclose(d, fd, rtol=1e-8)


def test_dunkl_apply_lowers_to_known_action():
    # on even 1-d functions the operator reduces to d/dx; check on a Gaussian
    alpha = (0.9,)
    pts = np.linspace(-2.0, 2.0, 9).reshape(-1, 1)
    g = GridFunction.from_callable(
        lambda x: np.exp(-x[:, 0] ** 2),
        pts,
        grad=lambda x, j: -2.0 * x[:, 0] * np.exp(-x[:, 0] ** 2),
    )
    out = dunkl_apply(alpha, g, 0)
    np.testing.assert_allclose(
        out.values, -2.0 * pts[:, 0] * np.exp(-pts[:, 0] ** 2), atol=1e-13
    )


def test_dunkl_apply_odd_function():
    # T(x e^{-x^2}) = (1 + 2k) e^{-x^2} - 2 x^2 e^{-x^2} with k = a + 1/2
    a = 0.9
    k = a + 0.5
    pts = np.linspace(-2.0, 2.0, 9).reshape(-1, 1)
    g = GridFunction.from_callable(
        lambda x: x[:, 0] * np.exp(-x[:, 0] ** 2),
        pts,
        grad=lambda x, j: (1.0 - 2.0 * x[:, 0] ** 2) * np.exp(-x[:, 0] ** 2),
    )
    out = dunkl_apply((a,), g, 0)
    x = pts[:, 0]
    expected = (1.0 + 2.0 * k - 2.0 * x ** 2) * np.exp(-x ** 2)
    np.testing.assert_allclose(out.values, expected, atol=1e-12)


def test_enumerate_multiindices():
    idx = enumerate_multiindices(2, 3)
    assert (0, 0) in idx and (3, 0) in idx and (1, 2) in idx
    assert len(idx) == 10  # binomial(3 + 2, 2)
    assert all(sum(n) <= 3 for n in idx)


def test_enumerate_parity_class():
    idx = enumerate_Neps((1, 0), 5)
    assert all(n[0] % 2 == 1 and n[1] % 2 == 0 for n in idx)
    assert all(sum(n) <= 5 for n in idx)


def test_eps_decompose_projects_parity():
    f = lambda x: x[:, 0] * np.exp(-np.sum(x ** 2, axis=-1)) + 0.3
    x = np.array([[0.5, 0.7], [1.0, -0.2]])
    odd_even = eps_decompose(f, (1, 0), x)
    pure = lambda x: x[:, 0] * np.exp(-np.sum(x ** 2, axis=-1))
    np.testing.assert_allclose(odd_even, pure(x), atol=1e-14)
    even_even = eps_decompose(f, (0, 0), x)
    np.testing.assert_allclose(even_even, np.full(2, 0.3), atol=1e-14)


def test_coefficients_recover_function():
    # a finite combination of eigenfunctions is reproduced exactly by
    # spectral projection onto each parity class
    from dunklosc.hermite import hermite_coefficient

    alpha = (0.4,)
    rule = fullspace_quad_rule(alpha, 40)
    target = lambda x: (
        0.7 * hermite_fn((2,), alpha, x) - 1.2 * hermite_fn((5,), alpha, x)
    )
    fvals = target(rule.nodes)
    assert hermite_coefficient(alpha, fvals, (2,), rule) == pytest.approx(0.7, abs=1e-12)
    assert hermite_coefficient(alpha, fvals, (5,), rule) == pytest.approx(-1.2, abs=1e-12)
    assert hermite_coefficient(alpha, fvals, (3,), rule) == pytest.approx(0.0, abs=1e-12)
