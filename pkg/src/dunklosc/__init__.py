"""Numerics for the Dunkl harmonic oscillator with sign-change symmetry:
eigensystem, heat kernels, imaginary-power operators, and kernel-estimate
verification."""

from .measure import (
    AlphaVec,
    HalfBallSpec,
    QuadRule,
    fullspace_quad_rule,
    half_ball_measure,
    pi_measure_rule,
    weight,
    weighted_quad_rule,
    zeta_rule,
)
from .hermite import (
    GridFunction,
    HermiteEigenfunction,
    MultiIndex,
    ParityVec,
    dunkl_apply,
    dunkl_laplacian,
    eigenvalue,
    enumerate_Neps,
    eps_decompose,
    hermite_fn,
    hermite_fn_deriv,
    spectral_project,
)

__version__ = "0.1.0"
