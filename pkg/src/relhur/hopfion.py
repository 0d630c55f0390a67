"""Localized free-electron wave packet with momentum profile e^{-a E}/E.

The state's four momentum-space components are

    (1, 0, (E - p_z)/m, -(p_x + i p_y)/m) * e^{-a E} / E,

with m = 1 internally and the width a in Compton-wavelength units.  Its
density simplifies to (2/m^2) e^{-2aE} (E - p_z)/E; the fast path using
that form is verified once per process against the component-wise sum at
seeded random points before first use.

Dispersions are computed from direct analytic momentum-gradients of the
explicit components (Parseval: <r^2> = integral of sum |grad_p psi|^2),
with <r> from the first-moment operator i grad_p and <p> from the density;
both means are subtracted.  An equivalent amplitude decomposition onto the
positive-energy bispinor basis is exported through amplitude_pair() so the
general dispersion functional can serve as an independent cross-check.

The azimuthal dependence of every integrand lives in explicit e^{i k phi}
factors with |k| <= 2, so an 8-node trapezoid in phi is exact and the
remaining (p, theta) integral goes to the adaptive 2D quadrature.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .dirac_states import AmplitudePair, Bispinor, DispersionReport, MomentumPoint
from .quadrature import QuadConfig, _integrate_2d_rows
from .specfun import bessel_k

_N_PHI = 8

A_MIN, A_MAX = 0.05, 100.0


@dataclass(frozen=True)
class HopfionState:
    """Width parameter a > 0 in Compton-wavelength units."""

    a: float

    def __post_init__(self):
        if not (self.a > 0.0) or not math.isfinite(self.a):
            raise ValueError("a must be a positive finite real")


@dataclass(frozen=True)
class SweepTable:
    """Ordered (a, gamma) rows with the large-a limit as metadata."""

    rows: tuple[tuple[float, float], ...]
    limit_gamma: float = 1.5


def _components(a: float, p: float, theta, phi: float):
    """The four components at (p, theta, phi); theta may be an array."""
    e = math.hypot(1.0, p)
    ct = np.cos(theta)
    st = np.sin(theta)
    h = math.exp(-a * e) / e
    eiphi = complex(math.cos(phi), math.sin(phi))
    c0 = h * np.ones_like(ct, dtype=complex)
    c1 = np.zeros_like(c0)
    c2 = h * (e - p * ct) + 0j
    c3 = -h * p * st * eiphi
    return np.array([c0, c1, c2, c3])


def momentum_bispinor(state: HopfionState, pt: MomentumPoint) -> Bispinor:
    """Unnormalized momentum-space components at a point."""
    comps = _components(state.a, pt.p, np.array([pt.theta]), pt.phi)
    return Bispinor(components=comps[:, 0])


def _density_direct(a: float, p: float, theta: float, phi: float) -> float:
    comps = _components(a, p, np.array([theta]), phi)
    return float(np.sum(np.abs(comps[:, 0]) ** 2))


def _density_fast(a: float, p: float, theta) -> np.ndarray | float:
    e = math.hypot(1.0, p)
    return 2.0 * math.exp(-2.0 * a * e) * (e - p * np.cos(theta)) / e


_fast_path_checked = False


def _check_fast_path() -> None:
    """One-time verification of the simplified density at random points."""
    global _fast_path_checked
    if _fast_path_checked:
        return
    rng = np.random.default_rng(20260814)
    for _ in range(100):
        a = rng.uniform(0.1, 5.0)
        p = rng.uniform(0.0, 8.0)
        theta = rng.uniform(0.0, math.pi)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        direct = _density_direct(a, p, theta, phi)
        fast = float(_density_fast(a, p, theta))
        if abs(fast - direct) > 1e-12 * max(direct, 1e-300):
            raise AssertionError(
                "simplified hopfion density disagrees with component sum")
    _fast_path_checked = True


def density(state: HopfionState, pt: MomentumPoint) -> float:
    """Momentum-space density summed over the four components."""
    _check_fast_path()
    return float(_density_fast(state.a, pt.p, pt.theta))


def norm_const(state: HopfionState, cfg: QuadConfig = QuadConfig()) -> float:
    """Squared norm integral of the unnormalized components (i.e. N^{-2})."""
    _check_fast_path()
    cfg = cfg.validated()
    a = state.a
    # the integral scales like e^{-2a}; shrink abs_tol with it so the
    # relative contract holds at large widths too
    abs_scale = max(math.exp(-2.0 * a), 1e-300)
    cfg = dataclasses.replace(cfg, decay_scale=_decay_scale(a),
                              abs_tol=cfg.abs_tol * min(1.0, abs_scale))

    def rows(p, thetas):
        return (p * p * np.sin(thetas) * _density_fast(a, p, thetas))[None, :]

    vals, errs, _ = _integrate_2d_rows(rows, cfg, 1)
    return float(2.0 * math.pi * vals[0])


def norm_bessel_ratio(state: HopfionState,
                      cfg: QuadConfig = QuadConfig()) -> float:
    """Quadrature norm divided by K_2(2a)/a.

    The testable content of the closed normalization form is that this
    ratio does not depend on a; the absolute constant is convention.
    """
    k2 = bessel_k(2, 2.0 * state.a)
    if k2 == 0.0:
        raise ValueError("K_2 underflows at this a; ratio undefined")
    return norm_const(state, cfg) / (k2 / state.a)


def amplitude_pair(state: HopfionState) -> AmplitudePair:
    """Decomposition onto the positive-energy bispinor basis.

    f_plus = (m + E - p_z) e^{-aE} / (m sqrt(E(E+m))),
    f_minus = -(p_x + i p_y) e^{-aE} / (m sqrt(E(E+m))), with analytic
    partial derivatives; feeding this into the general dispersion
    functional must reproduce gamma_h computed from direct gradients.
    """
    a = state.a

    def g(p: float) -> float:
        e = math.hypot(1.0, p)
        return math.exp(-a * e) / math.sqrt(e * (e + 1.0))

    def dg(p: float) -> float:
        e = math.hypot(1.0, p)
        ep = p / e
        return g(p) * (-a * ep - ep / (2.0 * e) - ep / (2.0 * (e + 1.0)))

    def f_plus(p, th, phi):
        return (1.0 + math.hypot(1.0, p) - p * np.cos(th)) * g(p) + 0j

    def f_minus(p, th, phi):
        return -p * np.sin(th) * np.exp(1j * phi) * g(p)

    def dp_plus(p, th, phi):
        e = math.hypot(1.0, p)
        return ((p / e - np.cos(th)) * g(p)
                + (1.0 + e - p * np.cos(th)) * dg(p)) + 0j

    def dt_plus(p, th, phi):
        return p * np.sin(th) * g(p) + 0j

    def df_plus(p, th, phi):
        return np.zeros_like(th, dtype=complex)

    def dp_minus(p, th, phi):
        return -np.sin(th) * np.exp(1j * phi) * (g(p) + p * dg(p))

    def dt_minus(p, th, phi):
        return -p * np.cos(th) * np.exp(1j * phi) * g(p)

    def df_minus(p, th, phi):
        return -1j * p * np.sin(th) * np.exp(1j * phi) * g(p)

    return AmplitudePair(
        f_plus=f_plus, f_minus=f_minus,
        partials_plus=(dp_plus, dt_plus, df_plus),
        partials_minus=(dp_minus, dt_minus, df_minus),
        phi_independent=False,
    )


def _decay_scale(a: float) -> float:
    # e^{-2aE} decays on the scale max of 1/(2a) (relativistic) and
    # 1/sqrt(2a) (Gaussian-like for p << 1); cover both regimes.
    return 1.0 / (2.0 * a) + 1.0 / math.sqrt(2.0 * a)


def gamma_h(state: HopfionState,
            cfg: QuadConfig = QuadConfig()) -> DispersionReport:
    """Full dispersion report from direct component gradients."""
    a = state.a
    if not (A_MIN <= a <= A_MAX):
        raise ValueError(f"a must lie in [{A_MIN}, {A_MAX}]")
    _check_fast_path()
    cfg = cfg.validated()
    cfg = dataclasses.replace(cfg, decay_scale=_decay_scale(a))

    phis = np.linspace(0.0, 2.0 * math.pi, _N_PHI, endpoint=False)
    w_phi = 2.0 * math.pi / _N_PHI

    def rows(p: float, thetas: np.ndarray) -> np.ndarray:
        e = math.hypot(1.0, p)
        ep = p / e
        ct, st = np.cos(thetas), np.sin(thetas)
        h = math.exp(-a * e) / e
        dh = -h * ep * (a + 1.0 / e)
        dens = _density_fast(a, p, thetas)

        # phi-independent gradient magnitudes, components 0, 2, 3:
        # |d_p|^2 + |d_theta|^2/p^2 + |d_phi|^2/(p st)^2, times p^2 here
        # because the measure row carries dp dtheta only.
        d_p0 = dh
        d_p2 = dh * (e - p * ct) + h * (ep - ct)
        d_t2 = h * p * st
        d_p3 = st * (dh * p + h)      # modulus of the e^{i phi} component
        d_t3 = h * p * ct
        d_f3 = h * p * st
        grad_sq = (p * p * (d_p0 * d_p0 + d_p2 * d_p2 + d_p3 * d_p3)
                   + d_t2 * d_t2 + d_t3 * d_t3
                   + (d_f3 * d_f3) / (st * st))

        out = np.zeros((9, thetas.size))
        out[0] = 2.0 * math.pi * p * p * st * dens
        out[1] = 2.0 * math.pi * p ** 4 * st * dens
        out[2] = 2.0 * math.pi * st * grad_sq
        out[5] = 2.0 * math.pi * p ** 3 * st * ct * dens
        # <p_x>, <p_y> vanish analytically (density phi-independent); the
        # 8-node phi sum below reproduces that to roundoff for <r>.
        for phi in phis:
            psi = _components(a, p, thetas, phi)
            eiphi = complex(math.cos(phi), math.sin(phi))
            dpsi_p = np.array([
                dh + 0j * ct,
                np.zeros_like(ct, dtype=complex),
                d_p2 + 0j,
                -st * eiphi * (dh * p + h),
            ])
            dpsi_t = np.array([
                np.zeros_like(ct, dtype=complex),
                np.zeros_like(ct, dtype=complex),
                d_t2 + 0j,
                -h * p * ct * eiphi,
            ])
            dpsi_f = np.array([
                np.zeros_like(ct, dtype=complex),
                np.zeros_like(ct, dtype=complex),
                np.zeros_like(ct, dtype=complex),
                -1j * h * p * st * eiphi,
            ])
            a_p = -np.sum(np.conj(psi) * dpsi_p, axis=0).imag
            a_t = -np.sum(np.conj(psi) * dpsi_t, axis=0).imag / p
            a_f = -np.sum(np.conj(psi) * dpsi_f, axis=0).imag / (p * st)
            cp, sp = math.cos(phi), math.sin(phi)
            out[6] += w_phi * p * p * st * (a_p * st * cp + a_t * ct * cp - a_f * sp)
            out[7] += w_phi * p * p * st * (a_p * st * sp + a_t * ct * sp + a_f * cp)
            out[8] += w_phi * p * p * st * (a_p * ct - a_t * st)
        return out

    vals, errs, _ = _integrate_2d_rows(rows, cfg, 9, control_rows=[0, 1, 2])
    norm_sq = float(vals[0])
    if not (norm_sq > 0.0) or not math.isfinite(norm_sq):
        raise ValueError("hopfion norm integral is invalid")
    mean_p = np.array(vals[3:6]) / norm_sq
    mean_r = np.array(vals[6:9]) / norm_sq
    delta_p_sq = float(vals[1]) / norm_sq - float(mean_p @ mean_p)
    delta_r_sq = float(vals[2]) / norm_sq - float(mean_r @ mean_r)
    if delta_p_sq <= 0.0 or delta_r_sq <= 0.0:
        raise ValueError("hopfion dispersions came out non-positive")
    return DispersionReport(
        norm_sq=norm_sq, mean_r=mean_r, mean_p=mean_p,
        delta_r_sq=delta_r_sq, delta_p_sq=delta_p_sq,
        gamma=math.sqrt(delta_r_sq * delta_p_sq),
    )


def gamma_h_curve(a_values: Sequence[float] | Iterable[float],
                  cfg: QuadConfig = QuadConfig()) -> SweepTable:
    """gamma_h over an ascending grid of width parameters."""
    avs = [float(a) for a in a_values]
    if not avs:
        raise ValueError("a_values must be non-empty")
    if any(b < a for a, b in zip(avs, avs[1:])):
        raise ValueError("a_values must be sorted ascending")
    for a in avs:
        if not (A_MIN <= a <= A_MAX):
            raise ValueError(f"a={a:g} outside [{A_MIN}, {A_MAX}]")
    rows = tuple((a, gamma_h(HopfionState(a), cfg).gamma) for a in avs)
    return SweepTable(rows=rows)
