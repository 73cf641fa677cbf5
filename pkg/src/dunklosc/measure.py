"""Weights, measures, and quadrature rules.

Contains the reflection-invariant weight, its half-space restriction, the
product measures on [-1,1]^d (Jacobi-type densities with an atomic limiting
case), half-ball measures, and the graded rule on (0,1) used for the
time-like integrals.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import roots_genlaguerre

__all__ = [
    "AlphaVec",
    "QuadRule",
    "HalfBallSpec",
    "weight",
    "pi_measure_rule",
    "weighted_quad_rule",
    "fullspace_quad_rule",
    "half_ball_measure",
    "zeta_rule",
    "tensor_rule",
]

ATOMIC_ORDER_TOL = 1e-14


@dataclass(frozen=True)
class AlphaVec:
    """Multiplicity parameter alpha in [-1/2, inf)^d."""

    alpha: tuple

    def __post_init__(self):
        a = tuple(float(v) for v in self.alpha)
        if len(a) < 1:
            raise ValueError("AlphaVec: dimension must be >= 1")
        if any(v < -0.5 for v in a):
            raise ValueError("AlphaVec: every component must be >= -1/2")
        object.__setattr__(self, "alpha", a)

    @property
    def dim(self):
        return len(self.alpha)

    @property
    def total(self):
        """|alpha| = sum of components (may be negative)."""
        return sum(self.alpha)

    @property
    def eigen_offset(self):
        """2|alpha| + 2d, the ground eigenvalue offset."""
        return 2.0 * self.total + 2.0 * self.dim

    def as_array(self):
        return np.array(self.alpha)


def as_alpha(alpha):
    if isinstance(alpha, AlphaVec):
        return alpha
    if np.isscalar(alpha):
        return AlphaVec((float(alpha),))
    return AlphaVec(tuple(alpha))


@dataclass(frozen=True)
class QuadRule:
    """Nodes and positive weights on a tagged domain.

    Immutable after construction; rules are freely shareable.
    """

    nodes: np.ndarray
    weights: np.ndarray
    domain: str

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if len(nodes) != len(weights):
            raise ValueError("QuadRule: nodes and weights must have equal length")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def dim(self):
        return 1 if self.nodes.ndim == 1 else self.nodes.shape[1]

    def integrate(self, f):
        """Apply the rule to a vectorized callable."""
        return np.dot(self.weights, f(self.nodes))

    def apply(self, values):
        return np.dot(self.weights, values)


@dataclass(frozen=True)
class HalfBallSpec:
    """A Euclidean ball centered in the open positive orthant."""

    center: tuple
    radius: float

    def __post_init__(self):
        c = tuple(float(v) for v in self.center)
        if any(v <= 0.0 for v in c):
            raise ValueError("HalfBallSpec: center must lie in the open positive orthant")
        if self.radius <= 0.0:
            raise ValueError("HalfBallSpec: radius must be positive")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))


def weight(alpha, x):
    """The reflection-invariant weight prod_j |x_j|^(2*alpha_j + 1).

    `x` has shape (d,) or (N, d); components with alpha_j = -1/2 contribute
    a factor 1 identically.
    """
    alpha = as_alpha(alpha)
    x = np.asarray(x, dtype=float)
    expo = 2.0 * alpha.as_array() + 1.0
    ax = np.abs(x)
    # |x|^0 must be exactly 1, including at x = 0
    factors = np.where(expo == 0.0, 1.0, ax ** expo)
    return factors.prod(axis=-1)


def _golub_welsch(diag, offdiag, mu0):
    """Gauss nodes/weights from the symmetric Jacobi matrix of a weight."""
    nodes, vecs = eigh_tridiagonal(diag, offdiag)
    w = mu0 * vecs[0, :] ** 2
    return nodes, w


def _gauss_jacobi(npts, a, b):
    """Gauss rule for the weight (1-s)^a (1+s)^b on (-1, 1)."""
    k = np.arange(npts, dtype=float)
    apb = a + b
    diag = np.empty(npts)
    with np.errstate(invalid="ignore"):
        diag = (b * b - a * a) / ((2 * k + apb) * (2 * k + apb + 2))
    diag[0] = (b - a) / (apb + 2.0)
    if npts > 1:
        j = np.arange(1, npts, dtype=float)
        with np.errstate(invalid="ignore", divide="ignore"):
            num = 4.0 * j * (j + a) * (j + b) * (j + apb)
            den = (2 * j + apb) ** 2 * (2 * j + apb + 1) * (2 * j + apb - 1)
            offdiag = np.sqrt(num / den)
        # j = 1 is a removable 0/0 when a + b = -1
        offdiag[0] = math.sqrt(
            4.0 * (a + 1.0) * (b + 1.0) / ((apb + 2.0) ** 2 * (apb + 3.0))
        )
    else:
        offdiag = np.empty(0)
    mu0 = (
        2.0 ** (apb + 1.0)
        * math.gamma(a + 1.0)
        * math.gamma(b + 1.0)
        / math.gamma(apb + 2.0)
    )
    return _golub_welsch(diag, offdiag, mu0)


def _gauss_genlaguerre(npts, a):
    """Gauss rule for the weight u^a e^{-u} on (0, inf).

    Delegates to scipy, whose implementation keeps the extreme weights
    (~e^{-u_max}) above the double-precision floor; the symmetric-tridiagonal
    eigensolver loses them to underflow for npts >~ 35.
    """
    return roots_genlaguerre(npts, a)


@lru_cache(maxsize=None)
def _gauss_legendre(npts):
    return np.polynomial.legendre.leggauss(npts)


def pi_measure_rule(a, npts):
    """Quadrature for the normalized interval measure of order `a`.

    For a > -1/2 the rule integrates f against the density
    (1-s^2)^(a-1/2) / (sqrt(pi) 2^a Gamma(a+1/2)) on (-1,1), exactly for
    polynomials up to degree 2*npts - 1.  For a = -1/2 the measure is the
    genuinely atomic pair of masses 1/sqrt(2*pi) at s = -1 and s = 1.
    """
    if a < -0.5:
        raise ValueError("pi_measure_rule: order must be >= -1/2")
    if npts < 1:
        raise ValueError("pi_measure_rule: npts must be positive")
    if abs(a + 0.5) <= ATOMIC_ORDER_TOL:
        mass = 1.0 / math.sqrt(2.0 * math.pi)
        return QuadRule(np.array([-1.0, 1.0]), np.array([mass, mass]), "atomic-pair")
    nodes, w = _gauss_jacobi(npts, a - 0.5, a - 0.5)
    norm = math.sqrt(math.pi) * 2.0 ** a * math.gamma(a + 0.5)
    return QuadRule(nodes, w / norm, "interval-jacobi")


def _halfline_weight_rule(a, npts, scale):
    """Rule integrating g -> int_0^inf g(x) x^(2a+1) dx for g of the form
    polynomial(x^2) * exp(-(x/scale)^2); exact up to degree 2*npts-1 in x^2.
    """
    u, v = _gauss_genlaguerre(npts, a)
    nodes = scale * np.sqrt(u)
    # combine in log space: the Laguerre weights decay like e^{-u}
    logw = np.log(v) + u + (2.0 * a + 2.0) * math.log(scale) - math.log(2.0)
    return nodes, np.exp(logw)


def tensor_rule(rules_1d, domain):
    """Tensor product of per-axis 1D rules."""
    grids = np.meshgrid(*[r[0] for r in rules_1d], indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=-1)
    w = np.ones(1)
    for _, wi in rules_1d:
        w = np.multiply.outer(w, wi).ravel()
    return QuadRule(nodes, w, domain)


def weighted_quad_rule(alpha, npts, scale=1.0):
    """Tensor rule on the positive orthant integrating against the
    half-space weight, accurate for integrands with Gaussian decay at the
    given scale."""
    alpha = as_alpha(alpha)
    if npts < 1:
        raise ValueError("weighted_quad_rule: npts must be positive")
    rules = [_halfline_weight_rule(a, npts, scale) for a in alpha.alpha]
    return tensor_rule(rules, "half-line-with-weight")


def fullspace_quad_rule(alpha, npts, scale=1.0):
    """Full-space rule obtained by reflecting the orthant rule through all
    2^d sign patterns (the weight is reflection invariant)."""
    alpha = as_alpha(alpha)
    base = weighted_quad_rule(alpha, npts, scale)
    d = alpha.dim
    nodes = []
    weights = []
    for bits in range(2 ** d):
        signs = np.array([1.0 if (bits >> i) & 1 == 0 else -1.0 for i in range(d)])
        nodes.append(base.nodes * signs)
        weights.append(base.weights)
    return QuadRule(np.concatenate(nodes), np.concatenate(weights), "full-space-with-weight")


def _axis_mass(a, lo, hi):
    """int_{max(lo,0)}^{hi} u^(2a+1) du (hi >= 0)."""
    lo = max(lo, 0.0)
    if hi <= lo:
        return 0.0
    p = 2.0 * a + 2.0
    return (hi ** p - lo ** p) / p


def _ball_orthant_mass(alphas, center, r, npts):
    """Weighted measure of B(center, r) intersected with the positive
    orthant, by nested angular quadrature.

    The last axis is parametrized as u_d = c_d + r sin(theta); the integrand
    is piecewise analytic in theta with kinks exactly where some inner axis
    range gets clipped at 0, so the theta domain is split there and each
    piece handled by Gauss-Legendre.
    """
    d = len(center)
    if d == 1:
        return _axis_mass(alphas[0], center[0] - r, center[0] + r)
    cd = center[-1]
    theta_lo = -0.5 * math.pi if cd - r >= 0.0 else math.asin(max(-1.0, -cd / r))
    splits = {theta_lo, 0.5 * math.pi}
    for ci in center[:-1]:
        if ci < r:
            ts = math.acos(ci / r)
            for t in (ts, -ts):
                if theta_lo < t < 0.5 * math.pi:
                    splits.add(t)
    # kink of the last-axis factor at u_d = 0 is already the lower limit
    pts = sorted(splits)
    gx, gw = _gauss_legendre(npts)
    total = 0.0
    ad = alphas[-1]
    for lo, hi in zip(pts[:-1], pts[1:]):
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        for xi, wi in zip(gx, gw):
            th = mid + half * xi
            rho = r * math.cos(th)
            ud = cd + r * math.sin(th)
            if ud <= 0.0 or rho <= 0.0:
                continue
            inner = _ball_orthant_mass(alphas[:-1], center[:-1], rho, npts)
            total += wi * half * inner * ud ** (2.0 * ad + 1.0) * r * math.cos(th)
    return total


def half_ball_measure(alpha, spec, npts=48, return_error=False):
    """Weighted measure of the ball-orthant intersection B+(x, r).

    Computed by nested 1D quadrature with exact innermost antiderivatives;
    the relative error target is 1e-6 and an error estimate (difference
    against a coarser rule) is available via `return_error`.
    """
    alpha = as_alpha(alpha)
    if alpha.dim != len(spec.center):
        raise ValueError("half_ball_measure: dimension mismatch")
    val = _ball_orthant_mass(alpha.alpha, spec.center, spec.radius, npts)
    if return_error:
        coarse = _ball_orthant_mass(alpha.alpha, spec.center, spec.radius, max(npts // 2, 8))
        return val, abs(val - coarse)
    return val


# Grading of the (0,1) rule: dyadic panels toward both endpoints resolve the
# essential decay at 0+ and the integrable power/log blow-up at 1- (the
# integrands behave like (1-zeta)^p with p >= -1/2 there).  A closing panel
# at 0 makes constants integrate exactly; the closing panel at 1 carries
# Gauss-Jacobi nodes for the weight (1-u)^(-1/2), exact for the worst
# admissible endpoint power, and is kept wide enough (2^-30) that 1 - node
# stays well above the double-precision spacing at 1.
ZETA_PANELS_LEFT = 48
ZETA_PANELS_RIGHT = 29


@lru_cache(maxsize=None)
def zeta_rule(npts=16, panels_left=ZETA_PANELS_LEFT, panels_right=ZETA_PANELS_RIGHT):
    """Composite endpoint-graded rule on (0, 1)."""
    if npts < 4:
        raise ValueError("zeta_rule: npts must be >= 4")
    edges = [0.0]
    edges += [2.0 ** (-k) for k in range(panels_left + 1, 0, -1)]
    edges += [1.0 - 2.0 ** (-k) for k in range(1, panels_right + 2)]
    edges = np.array(sorted(set(edges)))
    gx, gw = _gauss_legendre(npts)
    nodes = []
    weights = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        nodes.append(mid + half * gx)
        weights.append(half * gw)
    lo = edges[-1]
    half = 0.5 * (1.0 - lo)
    jx, jw = _gauss_jacobi(npts, -0.5, 0.0)
    nodes.append(lo + half * (jx + 1.0))
    weights.append(jw * half * np.sqrt(1.0 - jx))
    return QuadRule(np.concatenate(nodes), np.concatenate(weights), "unit-interval-zeta")
