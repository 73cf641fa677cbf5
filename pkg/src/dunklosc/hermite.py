"""Generalized Hermite eigensystem and the differential-difference operators
for the sign-change reflection group.

The one-dimensional eigenfunctions come in even/odd Laguerre form,

    h_{2m}(x)   = d_{2m}   e^{-x^2/2} L_m^{a}(x^2),
    h_{2m+1}(x) = d_{2m+1} e^{-x^2/2} x L_m^{a+1}(x^2),

with normalizers d chosen so the tensor products are orthonormal against
the weight; the d-dimensional functions are products of these.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .measure import AlphaVec, as_alpha, weight
from .specfun import laguerre

__all__ = [
    "MultiIndex",
    "ParityVec",
    "GridFunction",
    "HermiteEigenfunction",
    "hermite_fn",
    "hermite_fn_deriv",
    "hermite_fn_deriv2",
    "dunkl_apply",
    "dunkl_laplacian",
    "eigenvalue",
    "enumerate_Neps",
    "enumerate_multiindices",
    "eps_decompose",
    "parity_of",
    "spectral_project",
    "hermite_coefficient",
]


@dataclass(frozen=True)
class MultiIndex:
    n: tuple

    def __post_init__(self):
        n = tuple(int(v) for v in self.n)
        if any(v < 0 for v in n):
            raise ValueError("MultiIndex: components must be nonnegative")
        object.__setattr__(self, "n", n)

    @property
    def total(self):
        return sum(self.n)

    @property
    def parity(self):
        return tuple(v % 2 for v in self.n)


@dataclass(frozen=True)
class ParityVec:
    eps: tuple

    def __post_init__(self):
        eps = tuple(int(v) for v in self.eps)
        if any(v not in (0, 1) for v in eps):
            raise ValueError("ParityVec: components must be 0 or 1")
        object.__setattr__(self, "eps", eps)

    @property
    def total(self):
        return sum(self.eps)


def _as_index(n):
    if isinstance(n, MultiIndex):
        return n.n
    if np.isscalar(n):
        return (int(n),)
    return tuple(int(v) for v in n)


def _as_parity(eps):
    if isinstance(eps, ParityVec):
        return eps.eps
    if np.isscalar(eps):
        return (int(eps),)
    return tuple(int(v) for v in eps)


def parity_of(n):
    return tuple(v % 2 for v in _as_index(n))


@dataclass
class GridFunction:
    """Function samples on a point set, optionally with analytic backing.

    `fn` evaluates the function at arbitrary points (vectorized over an
    (N, d) array); `grad` evaluates a partial derivative, grad(x, axis).
    """

    points: np.ndarray
    values: np.ndarray
    fn: object = None
    grad: object = None
    rule: object = None

    def __post_init__(self):
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))
        self.values = np.asarray(self.values)
        if len(self.points) != len(self.values):
            raise ValueError("GridFunction: points and values must have equal length")
        if not np.all(np.isfinite(self.points)):
            raise ValueError("GridFunction: points must be finite")

    @classmethod
    def from_callable(cls, fn, points, grad=None, rule=None):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return cls(points, np.asarray(fn(points)), fn=fn, grad=grad, rule=rule)


def _norm_coef(n, a):
    """Normalizer d_{n,a} of the 1D eigenfunction (sign included)."""
    m = n // 2
    shift = 1.0 if n % 2 == 0 else 2.0
    lg = 0.5 * (math.lgamma(m + 1.0) - math.lgamma(m + a + shift))
    return (-1.0) ** m * math.exp(lg)


def _h1d_pieces(n, a):
    """(coef, parity, laguerre degree, laguerre order) of one factor."""
    m, parity = divmod(n, 2)
    order = a if parity == 0 else a + 1.0
    return _norm_coef(n, a), parity, m, order


def hermite_fn_1d(n, a, x):
    """One-dimensional eigenfunction h_n^a at x (vectorized)."""
    coef, parity, m, order = _h1d_pieces(n, a)
    x = np.asarray(x, dtype=float)
    u = x * x
    val = coef * np.exp(-u / 2.0) * laguerre(m, order, u)
    if parity:
        val = val * x
    return val


def _h1d_value_d1_d2(n, a, x):
    """Value, first and second derivative of h_n^a, in polynomial form
    (valid at x = 0)."""
    coef, parity, m, order = _h1d_pieces(n, a)
    x = np.asarray(x, dtype=float)
    u = x * x
    L = laguerre(m, order, u)
    L1 = -laguerre(m - 1, order + 1.0, u) if m >= 1 else np.zeros_like(u)
    L2 = laguerre(m - 2, order + 2.0, u) if m >= 2 else np.zeros_like(u)
    if parity == 0:
        P = L
        P1 = 2.0 * x * L1
        P2 = 2.0 * L1 + 4.0 * u * L2
    else:
        P = x * L
        P1 = L + 2.0 * u * L1
        P2 = 6.0 * x * L1 + 4.0 * x * u * L2
    e = coef * np.exp(-u / 2.0)
    val = e * P
    d1 = e * (P1 - x * P)
    d2 = e * (P2 - 2.0 * x * P1 + (u - 1.0) * P)
    return val, d1, d2


def hermite_fn_1d_batch(nmax, a, x):
    """All 1D eigenfunctions h_0 ... h_nmax at once, shape (nmax+1, len(x)).

    One Laguerre recurrence per parity; the normalizers are updated by the
    ratio d_{2m}/d_{2m-2} = -sqrt(m/(m+a+shift)) to avoid large factorials.
    """
    x = np.asarray(x, dtype=float)
    u = x * x
    e = np.exp(-u / 2.0)
    out = np.empty((nmax + 1, len(x)))
    for parity in (0, 1):
        if parity > nmax:
            break
        order = a + parity
        pref = e * (x if parity else 1.0) / math.sqrt(math.gamma(a + parity + 1.0))
        L_prev = np.ones_like(u)
        L = 1.0 + order - u
        coef = 1.0
        mmax = (nmax - parity) // 2
        for m in range(mmax + 1):
            if m == 0:
                Lm = L_prev
            elif m == 1:
                Lm = L
            else:
                L, L_prev = ((2 * m - 1 + order - u) * L - (m - 1 + order) * L_prev) / m, L
                Lm = L
            if m > 0:
                coef *= -math.sqrt(m / (m + order))
            out[2 * m + parity] = coef * pref * Lm
    return out


def hermite_fn(n, alpha, x):
    """The tensor-product eigenfunction at x, shape (d,) or (N, d)."""
    n = _as_index(n)
    alpha = as_alpha(alpha)
    x = np.asarray(x, dtype=float)
    squeeze = x.ndim == 1
    x = np.atleast_2d(x)
    out = np.ones(len(x))
    for i, (ni, ai) in enumerate(zip(n, alpha.alpha)):
        out *= hermite_fn_1d(ni, ai, x[:, i])
    return float(out[0]) if squeeze else out


def hermite_fn_deriv(n, alpha, x, axis):
    """Analytic partial derivative of hermite_fn along `axis` (0-based)."""
    n = _as_index(n)
    alpha = as_alpha(alpha)
    x = np.asarray(x, dtype=float)
    squeeze = x.ndim == 1
    x = np.atleast_2d(x)
    out = np.ones(len(x))
    for i, (ni, ai) in enumerate(zip(n, alpha.alpha)):
        if i == axis:
            _, d1, _ = _h1d_value_d1_d2(ni, ai, x[:, i])
            out *= d1
        else:
            out *= hermite_fn_1d(ni, ai, x[:, i])
    return float(out[0]) if squeeze else out


def hermite_fn_deriv2(n, alpha, x, axis):
    """Analytic second partial derivative along `axis`."""
    n = _as_index(n)
    alpha = as_alpha(alpha)
    x = np.asarray(x, dtype=float)
    squeeze = x.ndim == 1
    x = np.atleast_2d(x)
    out = np.ones(len(x))
    for i, (ni, ai) in enumerate(zip(n, alpha.alpha)):
        if i == axis:
            _, _, d2 = _h1d_value_d1_d2(ni, ai, x[:, i])
            out *= d2
        else:
            out *= hermite_fn_1d(ni, ai, x[:, i])
    return float(out[0]) if squeeze else out


class HermiteEigenfunction:
    """Eigenfunction with analytic derivatives, usable wherever an
    analytically backed function is required."""

    def __init__(self, n, alpha):
        self.n = _as_index(n)
        self.alpha = as_alpha(alpha)

    def __call__(self, x):
        return hermite_fn(self.n, self.alpha, x)

    def value(self, x):
        return hermite_fn(self.n, self.alpha, x)

    def partial(self, x, axis):
        return hermite_fn_deriv(self.n, self.alpha, x, axis)

    def partial2(self, x, axis):
        return hermite_fn_deriv2(self.n, self.alpha, x, axis)


class _FDWrapper:
    """Central finite-difference fallback for plain callables."""

    def __init__(self, fn, h=1e-5):
        self.fn = fn
        self.h = h

    def value(self, x):
        return self.fn(x)

    def _shift(self, x, axis, delta):
        x = np.array(x, dtype=float)
        x[..., axis] += delta
        return x

    def partial(self, x, axis):
        h = self.h
        return (self.fn(self._shift(x, axis, h)) - self.fn(self._shift(x, axis, -h))) / (2 * h)

    def partial2(self, x, axis):
        h = self.h
        return (
            self.fn(self._shift(x, axis, h))
            - 2.0 * self.fn(x)
            + self.fn(self._shift(x, axis, -h))
        ) / (h * h)


def _as_analytic(f):
    if hasattr(f, "partial2"):
        return f
    if isinstance(f, GridFunction):
        if f.fn is None:
            raise ValueError("analytic backing required: GridFunction has no fn")
        return _FDWrapper(f.fn)
    return _FDWrapper(f)


def _reflect(x, axis):
    x = np.array(x, dtype=float)
    x[..., axis] = -x[..., axis]
    return x


def dunkl_apply(alpha, f, axis):
    """Apply the first-order differential-difference operator along `axis`
    to an analytically backed GridFunction.

    At points on the reflection hyperplane the difference quotient is
    replaced by its analytic limit, which requires smooth backing.
    """
    alpha = as_alpha(alpha)
    if not isinstance(f, GridFunction):
        raise TypeError("dunkl_apply expects a GridFunction")
    if f.fn is None or f.grad is None:
        raise ValueError("dunkl_apply requires fn and grad backing")
    x = f.points
    k = alpha.alpha[axis] + 0.5
    xj = x[:, axis]
    vals = np.asarray(f.fn(x), dtype=float)
    dvals = np.asarray(f.grad(x, axis), dtype=float)
    out = dvals.copy()
    on_plane = xj == 0.0
    off = ~on_plane
    if np.any(off):
        refl_vals = np.asarray(f.fn(_reflect(x[off], axis)), dtype=float)
        out[off] += k * (vals[off] - refl_vals) / xj[off]
    if np.any(on_plane):
        # removable singularity: the quotient tends to twice the odd-part
        # derivative, i.e. 2 * d_j f at x_j = 0
        out[on_plane] += k * 2.0 * dvals[on_plane]
    return GridFunction(x, out, rule=f.rule)


def dunkl_laplacian(alpha, f, x):
    """The second-order operator at a point off the coordinate hyperplanes.

    `f` may be a plain callable (finite-difference derivatives) or expose
    value/partial/partial2.
    """
    alpha = as_alpha(alpha)
    g = _as_analytic(f)
    x = np.asarray(x, dtype=float)
    if np.any(x == 0.0):
        raise ValueError("dunkl_laplacian: point lies on a coordinate hyperplane")
    total = 0.0
    fx = g.value(x)
    for j, aj in enumerate(alpha.alpha):
        xj = x[..., j]
        refl = g.value(_reflect(x, j))
        total += (
            g.partial2(x, j)
            + (2.0 * aj + 1.0) / xj * g.partial(x, j)
            - (aj + 0.5) * (fx - refl) / (xj * xj)
        )
    return total


def eigenvalue(n, alpha):
    """2|n| + 2|alpha| + 2d."""
    n = _as_index(n)
    alpha = as_alpha(alpha)
    return 2.0 * sum(n) + alpha.eigen_offset


def enumerate_multiindices(d, maxdeg):
    """All multi-indices in d coordinates with total degree <= maxdeg."""
    out = []
    for total in range(maxdeg + 1):
        for comp in itertools.product(range(total + 1), repeat=d):
            if sum(comp) == total:
                out.append(comp)
    return out


def enumerate_Neps(eps, maxdeg):
    """Multi-indices with the given coordinate parities and |n| <= maxdeg."""
    eps = _as_parity(eps)
    if maxdeg < 0:
        raise ValueError("enumerate_Neps: maxdeg must be >= 0")
    return [n for n in enumerate_multiindices(len(eps), maxdeg) if parity_of(n) == eps]


def eps_decompose(f, eps, x):
    """The component of f with the given coordinate parities, evaluated at
    x: an average of f over the 2^d sign reflections."""
    eps = _as_parity(eps)
    d = len(eps)
    x = np.asarray(x, dtype=float)
    total = 0.0
    for signs in itertools.product((1.0, -1.0), repeat=d):
        chi = math.prod(s ** e for s, e in zip(signs, eps))
        total = total + chi * f(x * np.asarray(signs))
    return total / 2 ** d


def hermite_coefficient(alpha, fvals, n, rule):
    """Inner product of sampled values with an eigenfunction, by quadrature
    against the rule's weight measure."""
    hv = hermite_fn(n, alpha, rule.nodes)
    return np.dot(rule.weights, np.asarray(fvals) * hv)


def spectral_project(alpha, f, m, rule):
    """Projection onto the degree-m eigenspace, computed by quadrature.

    `rule` must integrate against the full-space weight measure (see
    fullspace_quad_rule); f needs evaluable backing or samples on the
    rule's nodes.
    """
    alpha = as_alpha(alpha)
    if f.fn is not None:
        fvals = np.asarray(f.fn(rule.nodes))
    elif f.points.shape == rule.nodes.shape and np.array_equal(f.points, rule.nodes):
        fvals = f.values
    else:
        raise ValueError("spectral_project: f must be evaluable on the rule nodes")
    out = np.zeros(len(f.points), dtype=np.result_type(fvals, float))
    for n in enumerate_multiindices(alpha.dim, m):
        if sum(n) != m:
            continue
        c = np.dot(rule.weights, fvals * hermite_fn(n, alpha, rule.nodes))
        out = out + c * hermite_fn(n, alpha, f.points)
    return GridFunction(f.points, out, rule=f.rule)
