import math

import numpy as np
import pytest

from dunklosc.measure import (
    HalfBallSpec,
    fullspace_quad_rule,
    half_ball_measure,
    pi_measure_rule,
    weight,
    weighted_quad_rule,
    zeta_rule,
)
from dunklosc.specfun import bessel_i_scaled


def test_weight_values():
    alpha = (0.5, 1.0)
    x = np.array([[2.0, 3.0], [1.0, 1.0]])
    expected = np.array([2.0 ** 2 * 3.0 ** 3, 1.0])
    np.testing.assert_allclose(weight(alpha, x), expected, rtol=1e-14)


def test_pi_measure_rule_total_mass():
    # total mass equals the kappa -> 0 limit of the exponential moment,
    # i.e. 1 / (2^a Gamma(a+1))
    for a in [-0.5, 0.0, 0.5, 1.7]:
        rule = pi_measure_rule(a, 24)
        assert np.all(rule.weights > 0)
        mass = 1.0 / (2.0 ** a * math.gamma(a + 1.0))
        assert float(rule.weights.sum()) == pytest.approx(mass, rel=1e-13)


def test_pi_measure_exponential_moment():
    # int e^{kappa s} dPi_a(s) = I_a(kappa) / kappa^a  (scaled Bessel)
    for a in [-0.5, 0.0, 0.5, 2.3]:
        rule = pi_measure_rule(a, 40)
        for kappa in [0.0, 0.3, 2.0, -5.0]:
            lhs = float(np.sum(rule.weights * np.exp(kappa * rule.nodes)))
            rhs = bessel_i_scaled(a, kappa)
            assert lhs == pytest.approx(rhs, rel=1e-12)


def test_pi_measure_atomic_case():
    rule = pi_measure_rule(-0.5, 10)
    np.testing.assert_allclose(rule.nodes, [-1.0, 1.0])
    np.testing.assert_allclose(rule.weights, [1.0, 1.0] / np.sqrt(2.0 * np.pi))


def test_pi_measure_polynomial_exactness():
    # moments of the symmetric beta-type density have a closed form:
    # int s^{2m} dPi_a = Gamma(m + 1/2) Gamma(a + 1/2)
    #                    / (sqrt(pi) Gamma(m + a + 1)) / (2^a Gamma(a + 1/2)) ...
    # simpler: compare a low-order rule against a high-order one
    a = 0.8
    coarse = pi_measure_rule(a, 6)
    fine = pi_measure_rule(a, 40)
    for m in range(0, 6):
        lo = float(np.sum(coarse.weights * coarse.nodes ** (2 * m)))
        hi = float(np.sum(fine.weights * fine.nodes ** (2 * m)))
        assert lo == pytest.approx(hi, rel=1e-13)
        assert float(np.sum(fine.weights * fine.nodes ** (2 * m + 1))) == pytest.approx(
            0.0, abs=1e-15
        )


def test_weighted_quad_rule_gaussian_moments():
    # int_0^inf x^{2m} e^{-x^2} x^{2a+1} dx = Gamma(m + a + 1) / 2
    a = 0.7
    rule = weighted_quad_rule((a,), 20)
    for m in range(0, 8):
        val = float(np.sum(rule.weights * rule.nodes[:, 0] ** (2 * m)
                           * np.exp(-rule.nodes[:, 0] ** 2)))
        assert val == pytest.approx(math.gamma(m + a + 1.0) / 2.0, rel=1e-12)


def test_fullspace_rule_symmetric_extension():
    alpha = (0.3, 1.1)
    half = weighted_quad_rule(alpha, 12)
    full = fullspace_quad_rule(alpha, 12)
    assert full.nodes.shape[0] == 4 * half.nodes.shape[0]
    f = lambda x: np.exp(-np.sum(x ** 2, axis=-1)) * (x[:, 0] ** 2 + 1.0)
    assert full.integrate(f) == pytest.approx(4.0 * half.integrate(f), rel=1e-13)


def test_half_ball_measure_1d_closed_form():
    a = 0.7
    e = 2.0 * a + 2.0
    for c, r in [(1.0, 0.5), (1.0, 3.0), (0.2, 0.1)]:
        lo = max(c - r, 0.0)
        expected = ((c + r) ** e - lo ** e) / e
        got = half_ball_measure((a,), HalfBallSpec(center=(c,), radius=r))
        assert got == pytest.approx(expected, rel=1e-12)


def test_half_ball_measure_2d_lebesgue():
    # for alpha = (-1/2, -1/2) the weight is 1; a ball well inside the orthant
    # has plain area pi r^2
    spec = HalfBallSpec(center=(3.0, 4.0), radius=1.25)
    got = half_ball_measure((-0.5, -0.5), spec)
    assert got == pytest.approx(math.pi * 1.25 ** 2, rel=1e-8)


def test_half_ball_measure_error_estimate():
    spec = HalfBallSpec(center=(1.0, 2.0), radius=1.5)
    val, err = half_ball_measure((0.3, 1.7), spec, return_error=True)
    assert err <= 1e-6 * abs(val)


def test_half_ball_measure_doubling_behaviour():
    # mass is monotone in the radius and grows at most like the max of the
    # two homogeneity exponents on a fixed center
    alpha = (0.5,)
    spec1 = HalfBallSpec(center=(2.0,), radius=0.5)
    spec2 = HalfBallSpec(center=(2.0,), radius=1.0)
    m1 = half_ball_measure(alpha, spec1)
    m2 = half_ball_measure(alpha, spec2)
    assert m1 < m2 < m1 * 2.0 ** (2.0 * 0.5 + 2.0)


def test_zeta_rule_basic_integrals():
    rule = zeta_rule(npts=16)
    assert np.all(rule.nodes > 0.0) and np.all(rule.nodes < 1.0)
    # int_0^1 1 dz = 1
    assert float(rule.weights.sum()) == pytest.approx(1.0, rel=1e-12)
    # int_0^1 (1 - z)^{-1/2} dz = 2 (worst admissible endpoint power)
    val = float(np.sum(rule.weights / np.sqrt(1.0 - rule.nodes)))
    assert val == pytest.approx(2.0, rel=1e-9)
    # int_0^1 log(2 artanh z)^0 ... use a decaying factor instead:
    # int_0^1 e^{-1/(2z)} dz against a reference from a fine rule
    fine = zeta_rule(npts=48)
    f = lambda z: np.exp(-1.0 / (2.0 * z))
    coarse_val = float(np.sum(rule.weights * f(rule.nodes)))
    fine_val = float(np.sum(fine.weights * f(fine.nodes)))
    assert coarse_val == pytest.approx(fine_val, rel=1e-10)


def test_zeta_rule_rejects_tiny_npts():
    with pytest.raises(ValueError):
        zeta_rule(npts=2)


def test_alpha_validation():
    with pytest.raises(ValueError):
        weighted_quad_rule((-0.6,), 10)
    with pytest.raises(ValueError):
        pi_measure_rule(-0.75, 10)
