import math

import mpmath
import numpy as np
import pytest

from dunklosc.imagpow import (
    BumpFunction,
    beta_factor,
    duality_check,
    imagpow_spectral,
    kernel_t_route,
    kernel_zeta_route,
)
from dunklosc.hermite import GridFunction, hermite_fn
from dunklosc.measure import fullspace_quad_rule


def _beta_mpmath(d, alpha_sum, gamma, zeta):
    """Independent high-precision evaluation of the zeta-form prefactor."""
    mpmath.mp.dps = 40
    z = mpmath.mpf(zeta)
    g = mpmath.mpf(gamma)
    one_minus = 1 - z * z
    pref = mpmath.power(2, 1 - d - 1j * g) / mpmath.gamma(1j * g)
    mid = mpmath.power(one_minus / (2 * z), d + alpha_sum) / one_minus
    tail = mpmath.power(2 * mpmath.atanh(z), 1j * g - 1)
    v = pref * mid * tail
    return complex(v)


def test_beta_factor_against_mpmath():
    for d, alpha_sum, gamma in [(1, 0.5, 1.0), (1, 2.5, 0.5), (2, 3.0, 3.0)]:
        for zeta in [0.05, 0.3, 0.7, 0.95]:
            got = beta_factor(d, alpha_sum, gamma, zeta)
            ref = _beta_mpmath(d, alpha_sum, gamma, zeta)
            assert got == pytest.approx(ref, rel=1e-11)


def test_spectral_action_is_unimodular():
    # on a single eigenfunction the operator multiplies by a unit-modulus
    # phase lam^{-i gamma}
    alpha = (0.4,)
    n = (3,)
    rule = fullspace_quad_rule(alpha, 40)
    pts = np.linspace(-2.0, 2.0, 15).reshape(-1, 1)
    f = GridFunction.from_callable(lambda x: hermite_fn(n, alpha, x), pts, rule=rule)
    out = imagpow_spectral(alpha, 1.3, f, 8, rule)
    lam = 2.0 * 3 + 2.0 * 0.4 + 2.0
    phase = np.exp(-1j * 1.3 * np.log(lam))
    np.testing.assert_allclose(out.values, phase * hermite_fn(n, alpha, pts), atol=1e-10)
    assert abs(phase) == pytest.approx(1.0, rel=1e-15)


def test_route_agreement_1d():
    for alpha, eps, gamma in [((-0.5,), (0,), 1.0), ((0.5,), (1,), 0.5), ((1.5,), (0,), 3.0)]:
        x, y = np.array([1.0]), np.array([2.0])
        kz = kernel_zeta_route(alpha, eps, gamma, x, y)
        kt = kernel_t_route(alpha, eps, gamma, x, y)
        assert kz.value == pytest.approx(kt.value, rel=1e-6)


def test_route_agreement_2d():
    alpha = (-0.5, 0.5)
    eps = (0, 1)
    x, y = np.array([1.0, 0.8]), np.array([2.0, 2.2])
    kz = kernel_zeta_route(alpha, eps, 1.0, x, y)
    kt = kernel_t_route(alpha, eps, 1.0, x, y)
    assert kz.value == pytest.approx(kt.value, rel=1e-6)


def test_kernel_symmetry():
    alpha = (0.7,)
    eps = (1,)
    a = kernel_zeta_route(alpha, eps, 2.0, np.array([0.9]), np.array([1.8])).value
    b = kernel_zeta_route(alpha, eps, 2.0, np.array([1.8]), np.array([0.9])).value
    assert a == pytest.approx(b, rel=1e-12)


def test_bump_function_support_and_smoothness():
    f = BumpFunction(box=((1.0, 2.0),))
    x = np.array([[0.9], [1.0], [1.5], [2.0], [2.5]])
    vals = f(x)
    assert vals[0] == 0.0 and vals[1] == 0.0 and vals[3] == 0.0 and vals[4] == 0.0
    assert vals[2] == pytest.approx(math.exp(-1.0), rel=1e-14)
    # values decay to zero smoothly toward the edges
    edge = f(np.array([[1.999999]]))
    assert 0.0 < edge[0] < 1e-100 or edge[0] == 0.0


def test_duality_pairing_quick():
    # truncated spectral form vs the double kernel integral for disjoint bumps
    f = BumpFunction(box=((1.0, 2.0),))
    g = BumpFunction(box=((3.0, 4.0),))
    lhs, rhs = duality_check((0.0,), (0,), 1.0, f, g, N=1500, npts=24, npts_s=32)
    assert abs(lhs - rhs) / abs(rhs) < 1e-3


def test_duality_rejects_overlapping_supports():
    f = BumpFunction(box=((1.0, 2.5),))
    g = BumpFunction(box=((2.0, 4.0),))
    with pytest.raises(ValueError):
        duality_check((0.0,), (0,), 1.0, f, g, N=10)
