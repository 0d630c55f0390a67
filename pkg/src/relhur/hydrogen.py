"""Dirac Coulomb ground state: closed-form uncertainty product and oracle.

A point charge Z*e binds a Dirac electron; the ground-state wave function
(textbook result, Compton-length units) is

    psi = N r^(g-1) e^(-sqrt(1-g^2) r) (1, 0, i k cos(theta),
                                        -i k e^(i phi) sin(theta))

with g = sqrt(1 - (alpha Z)^2), k = sqrt((1-g)/(1+g)) and N fixed by unit
total probability.  Both dispersions have closed forms; their product

    sqrt(dr^2 dp^2) = sqrt((2g+1)(1+g)(2-g) / (2g(2g-1)))

is finite only for g > 1/2 (the wave-function singularity at the origin
makes dp^2 diverge at g = 1/2).  quadrature_oracle recomputes the product
from the wave function itself with this package's quadrature; it works in
units of the exponential decay length (the product is unit-free, and the
rescaling keeps every integrand O(1) for all g, so g -> 1 is regular).
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .dirac_states import Bispinor, DispersionReport
from .quadrature import QuadConfig, _integrate_2d_rows
from .specfun import gamma_fn

ALPHA_FS = 7.2973525693e-3  # CODATA 2018 fine-structure constant

__all__ = [
    "ALPHA_FS",
    "CoulombState",
    "DivergenceError",
    "ground_bispinor",
    "uncertainty_product_closed",
    "product_closed_gamma",
    "d_parameter",
    "d_parameter_gamma",
    "quadrature_oracle",
    "oracle_gamma",
    "density_radial_moment",
    "max_z_finite",
]


class DivergenceError(ValueError):
    """The momentum dispersion is infinite (gamma_c <= 1/2)."""


@dataclass(frozen=True)
class CoulombState:
    """Ground state of a hydrogen-like ion with nuclear charge Z.

    alpha is configurable because the largest Z with a finite uncertainty
    product depends on its value.  Requires alpha*Z < 1 so the ground-state
    exponent gamma_c = sqrt(1 - (alpha Z)^2) is real.
    """

    Z: int
    alpha: float = ALPHA_FS
    gamma_c: float = field(init=False)

    def __post_init__(self):
        if isinstance(self.Z, bool) or not isinstance(self.Z, int):
            raise ValueError("Z must be a positive integer")
        if self.Z < 1:
            raise ValueError("Z must be a positive integer")
        if not (self.alpha > 0.0) or not math.isfinite(self.alpha):
            raise ValueError("alpha must be a positive finite real")
        za = self.alpha * self.Z
        if za >= 1.0:
            raise ValueError(
                f"alpha*Z = {za:g} >= 1: no real ground-state exponent")
        object.__setattr__(self, "gamma_c",
                           math.sqrt((1.0 - za) * (1.0 + za)))

    @property
    def small_component_ratio(self) -> float:
        """sqrt((1-g)/(1+g)), the lower-spinor amplitude relative to the upper."""
        g = self.gamma_c
        return math.sqrt((1.0 - g) / (1.0 + g))

    @property
    def momentum_scale(self) -> float:
        """Exponential decay rate sqrt(1-g^2) = alpha*Z in Compton units."""
        return self.alpha * self.Z

    @property
    def norm_constant(self) -> float:
        """Normalization N of the Compton-unit wave function."""
        g = self.gamma_c
        n_sq = (2.0 ** (2.0 * g) * (1.0 + g) ** (g + 1.5)
                * (1.0 - g) ** (g + 0.5)) / (4.0 * math.pi * gamma_fn(1.0 + 2.0 * g))
        return math.sqrt(n_sq)


def ground_bispinor(state: CoulombState, r: float, theta: float,
                    phi: float) -> Bispinor:
    """Wave-function components at a point (Compton-length units).

    r must be strictly positive: the radial factor r^(g-1) is singular
    (though square-integrable) at the origin for g < 1.
    """
    if not (r > 0.0) or not math.isfinite(r):
        raise ValueError("r must be a positive finite real")
    if not (0.0 <= theta <= math.pi):
        raise ValueError("theta must lie in [0, pi]")
    if not math.isfinite(phi):
        raise ValueError("phi must be finite")
    g = state.gamma_c
    k = state.small_component_ratio
    common = state.norm_constant * r ** (g - 1.0) * math.exp(
        -state.momentum_scale * r)
    return Bispinor(components=np.array([
        common,
        0.0,
        1j * k * math.cos(theta) * common,
        -1j * k * math.sin(theta) * common * complex(math.cos(phi),
                                                     math.sin(phi)),
    ]))


def product_closed_gamma(gamma_c: float) -> float:
    """Closed-form uncertainty product as a function of the exponent g."""
    g = float(gamma_c)
    if not (0.0 < g <= 1.0):
        raise ValueError("gamma_c must lie in (0, 1]")
    if g <= 0.5:
        raise DivergenceError(
            "momentum dispersion is infinite for gamma_c <= 1/2")
    return math.sqrt((2.0 * g + 1.0) * (1.0 + g) * (2.0 - g)
                     / (2.0 * g * (2.0 * g - 1.0)))


def uncertainty_product_closed(state: CoulombState) -> float:
    """Closed-form sqrt(dr^2 dp^2) of the ground state (units hbar = 1)."""
    return product_closed_gamma(state.gamma_c)


def d_parameter_gamma(gamma_c: float) -> float:
    """Transition-scale parameter as a function of the exponent g."""
    g = float(gamma_c)
    if not (0.0 < g <= 1.0):
        raise ValueError("gamma_c must lie in (0, 1]")
    if g <= 0.5:
        raise DivergenceError(
            "momentum dispersion is infinite for gamma_c <= 1/2")
    return (2.0 * (1.0 + g) * (1.0 - g) ** 2 * (2.0 - g)
            / (g * (4.0 * g * g - 1.0))) ** 0.25


def d_parameter(state: CoulombState) -> float:
    """Scale parameter d = (dp^2/dr^2)^(1/4) of the ground state.

    0 in the weak-field limit (nonrelativistic regime), +inf as
    gamma_c -> 1/2 (ultrarelativistic regime).
    """
    return d_parameter_gamma(state.gamma_c)


def density_radial_moment(gamma_c: float, k: int) -> float:
    """<r^k> of the ground-state density in decay-length units.

    The normalized radial density is r^(2g) e^(-2r) dr (times a constant),
    so <r^k> = Gamma(2g+1+k) / (2^k Gamma(2g+1)).
    """
    g = float(gamma_c)
    if not (0.0 < g <= 1.0):
        raise ValueError("gamma_c must lie in (0, 1]")
    if k <= -(2.0 * g + 1.0):
        raise ValueError("moment diverges at the origin")
    return gamma_fn(2.0 * g + 1.0 + k) / (2.0 ** k * gamma_fn(2.0 * g + 1.0))


def oracle_gamma(gamma_c: float, cfg: QuadConfig = QuadConfig()) -> DispersionReport:
    """Quadrature evaluation of the dispersions for a given exponent g.

    Works in units of the decay length 1/(alpha Z): lengths scale by
    alpha*Z and momenta by 1/(alpha Z), so the product is unchanged and
    the integrands stay O(1) all the way to g = 1.  The substitution
    r = t^(1/(2g-1)) maps the r^(2g-2) origin singularity of the momentum
    integrand to exactly t^0, so the panels see a bounded integrand.

    <r> = 0 by spherical symmetry of the density and <p> = 0 by reality
    of the radial profile; both are recomputed and checked, not assumed.
    """
    g = float(gamma_c)
    if not (0.0 < g <= 1.0):
        raise ValueError("gamma_c must lie in (0, 1]")
    if g <= 0.5:
        raise DivergenceError(
            "momentum dispersion is infinite for gamma_c <= 1/2")
    cfg = cfg.validated()
    mu = 1.0 / (2.0 * g - 1.0)
    log_mu = math.log(mu)
    k = math.sqrt((1.0 - g) / (1.0 + g))
    k_sq = k * k
    # decay-length normalization; finite and positive for every g in (0, 1]
    n_sq = 2.0 ** (2.0 * g) * (1.0 + g) / (4.0 * math.pi * gamma_fn(1.0 + 2.0 * g))
    two_pi = 2.0 * math.pi

    # rows: 0 norm, 1 <r^2>, 2 momentum gradient integral, 3 <z>, 4 <p_z>
    def rows(t: float, thetas: np.ndarray) -> np.ndarray:
        out = np.zeros((5, thetas.size))
        if t <= 0.0:
            return out
        log_t = math.log(t)
        log_r = mu * log_t
        if log_r > math.log(500.0):
            # e^(-2r) underflows every row to exact zero out here
            return out
        r = math.exp(log_r)
        # b = r^(2g-2) e^(-2r) * dr/dt; the exponent of t cancels exactly
        b = math.exp(log_mu + (mu * (2.0 * g - 1.0) - 1.0) * log_t - 2.0 * r)
        st = np.sin(thetas)
        ct = np.cos(thetas)
        dens_ang = 1.0 + k_sq * ct * ct + k_sq * st * st
        wp = (g - 1.0) - r  # w' = wp * w / r

        out[0] = two_pi * n_sq * r * r * b * dens_ang * st
        out[1] = two_pi * n_sq * r ** 4 * b * dens_ang * st
        # sum over components of |d_r psi|^2 r^2 + |d_theta psi|^2
        #   + |d_phi psi|^2 / sin^2(theta), all times dr/dt e^(-2r)
        grad = (wp * wp * np.ones_like(st)      # upper component, radial
                + k_sq * ct * ct * wp * wp      # i k cos component, radial
                + k_sq * st * st                # i k cos component, polar
                + k_sq * st * st * wp * wp      # -i k sin e^(i phi), radial
                + k_sq * ct * ct                # -i k sin e^(i phi), polar
                + k_sq)                         # -i k sin e^(i phi), azimuthal
        out[2] = two_pi * n_sq * grad * b * st
        out[3] = two_pi * n_sq * r ** 3 * b * dens_ang * ct * st
        # Im(sum psi* d_z psi): complex angular amplitudes per unit radial w
        amp = np.array([np.ones_like(st) + 0.0j,
                        1j * k * ct,
                        -1j * k * st])
        damp = np.array([np.zeros_like(st) + 0.0j,
                         -1j * k * st,
                         -1j * k * ct])
        pz = (np.conj(amp) * (ct * wp * amp - st * damp)).sum(axis=0).imag
        out[4] = two_pi * n_sq * r * b * pz * st
        return out

    vals, errs, _ = _integrate_2d_rows(rows, cfg, 5, control_rows=[0, 1, 2])
    norm = float(vals[0])
    if not (norm > 0.0) or not math.isfinite(norm):
        raise ArithmeticError("normalization integral came out invalid")
    z1 = float(vals[3]) / norm
    pz1 = float(vals[4]) / norm
    if abs(z1) > 1e-8:
        raise ArithmeticError(
            f"<z> = {z1:.3e} violates the spherical-symmetry check")
    if abs(pz1) > 1e-8:
        raise ArithmeticError(
            f"<p_z> = {pz1:.3e} violates the reality check")
    delta_r_sq = float(vals[1]) / norm - z1 * z1
    delta_p_sq = float(vals[2]) / norm - pz1 * pz1
    return DispersionReport(
        norm_sq=norm,
        mean_r=np.array([0.0, 0.0, z1]),
        mean_p=np.array([0.0, 0.0, pz1]),
        delta_r_sq=delta_r_sq,
        delta_p_sq=delta_p_sq,
        gamma=math.sqrt(delta_r_sq * delta_p_sq),
    )


def quadrature_oracle(state: CoulombState,
                      cfg: QuadConfig = QuadConfig()) -> DispersionReport:
    """Dispersion report for the ground state, computed by quadrature.

    Independent of the closed forms: integrates the density and the
    position-space gradient sum of the actual wave-function components.
    Moments are in decay-length units; the product field `gamma` is
    unit-free and comparable to uncertainty_product_closed.
    """
    return oracle_gamma(state.gamma_c, cfg)


def max_z_finite(alpha: float = ALPHA_FS) -> int:
    """Largest integer Z whose uncertainty product is finite (g > 1/2).

    g > 1/2 means alpha*Z < sqrt(3)/2, so Z = ceil(sqrt(3)/(2 alpha)) - 1.
    Returns sys.maxsize as an overflow sentinel when the bound exceeds
    exact float integer range (alpha -> 0 limit).
    """
    if not (alpha > 0.0) or not math.isfinite(alpha):
        raise ValueError("alpha must be a positive finite real")
    limit = math.sqrt(3.0) / (2.0 * alpha)
    if limit >= 2.0 ** 53:
        return sys.maxsize
    z = math.floor(limit)
    if float(z) == limit:
        z -= 1  # boundary hit exactly: g would equal 1/2, not exceed it
    return max(z, 0)
