"""Relativistic position-momentum uncertainty bounds for Dirac electrons.

The package computes the state-independent lower bound gamma(d) on the
dimensionless dispersion product of a free Dirac electron, where d is the
inverse localization scale in Compton units, together with the two physical
families the bound is compared against: hydrogen-like ground states and a
localized free-electron packet.

Layout:

    specfun             gamma function and modified Bessel K0, K1, K2
    quadrature          adaptive Gauss-Kronrod panels on [0, inf) and 2D
    radial_eigensolver  lowest eigenvalue of radial Schrodinger operators
    rel_uncertainty     the bound curve gamma(d) and its two limits
    dirac_states        bispinor fields and the dispersion functional
    hydrogen            hydrogen-like ions: closed form and oracle
    hopfion             the localized packet family gamma_H(a)
    kernels             compiled tridiagonal kernels with pure fallback
    cli                 the `relhur` command-line tool

Set REL_HUR_PURE=1 before import to force the pure-Python eigensolver
kernels; `relhur.BACKEND` reports which one is active.
"""

from .specfun import (
    SpecfunResult,
    gamma_fn,
    gamma_fn_detailed,
    bessel_k,
    bessel_k_detailed,
)
from .quadrature import (
    QuadConfig,
    QuadResult,
    QuadratureError,
    integrate_semi_infinite,
    integrate_2d,
)
from .radial_eigensolver import (
    RadialPotential,
    EigenDiagnostics,
    EigenResult,
    SolverError,
    ground_state,
    moment,
)
from .rel_uncertainty import (
    INFINITY,
    GAMMA_AT_0,
    GAMMA_AT_INF,
    ULTRA_EXPONENT,
    potential_v,
    singular_strength,
    make_potential,
    gamma_bound,
    gamma_bound_report,
    BoundReport,
    BoundCurve,
    sweep,
    gaussian_limit_residual,
    ultrarelativistic_limit_residual,
)
from .dirac_states import (
    MomentumPoint,
    Bispinor,
    AmplitudePair,
    DispersionReport,
    bispinor_u,
    bispinor_partials,
    dispersion_functional,
)
from .hydrogen import (
    ALPHA_FS,
    CoulombState,
    DivergenceError,
    ground_bispinor,
    uncertainty_product_closed,
    product_closed_gamma,
    d_parameter,
    d_parameter_gamma,
    quadrature_oracle,
    oracle_gamma,
    density_radial_moment,
    max_z_finite,
)
from .hopfion import (
    HopfionState,
    SweepTable,
    momentum_bispinor,
    density,
    norm_const,
    norm_bessel_ratio,
    amplitude_pair,
    gamma_h,
    gamma_h_curve,
)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "SpecfunResult", "gamma_fn", "gamma_fn_detailed",
    "bessel_k", "bessel_k_detailed",
    "QuadConfig", "QuadResult", "QuadratureError",
    "integrate_semi_infinite", "integrate_2d",
    "RadialPotential", "EigenDiagnostics", "EigenResult", "SolverError",
    "ground_state", "moment",
    "INFINITY", "GAMMA_AT_0", "GAMMA_AT_INF", "ULTRA_EXPONENT",
    "potential_v", "singular_strength", "make_potential",
    "gamma_bound", "gamma_bound_report", "BoundReport", "BoundCurve",
    "sweep", "gaussian_limit_residual", "ultrarelativistic_limit_residual",
    "MomentumPoint", "Bispinor", "AmplitudePair", "DispersionReport",
    "bispinor_u", "bispinor_partials", "dispersion_functional",
    "ALPHA_FS", "CoulombState", "DivergenceError", "ground_bispinor",
    "uncertainty_product_closed", "product_closed_gamma",
    "d_parameter", "d_parameter_gamma",
    "quadrature_oracle", "oracle_gamma", "density_radial_moment",
    "max_z_finite",
    "HopfionState", "SweepTable", "momentum_bispinor", "density",
    "norm_const", "norm_bessel_ratio", "amplitude_pair",
    "gamma_h", "gamma_h_curve",
    "BACKEND",
    "__version__",
]
