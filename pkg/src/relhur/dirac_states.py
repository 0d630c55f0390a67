"""Positive-energy Dirac machinery: Weyl bispinors and dispersion functionals.

A positive-energy electron state is a pair of momentum-space amplitudes
f(p, theta, phi, s), s = +/-, attached to the orthonormal Weyl bispinors
u(p, s).  This module evaluates the norm, the momentum dispersion, and the
position dispersion of such a state as spherical-coordinate integrals.

With the measure dp dtheta dphi (sin(theta) and all p powers written into
the integrands) the position second moment about the origin reads, per spin,

    p^2 |d_p f|^2 + |d_theta f|^2 + csc^2(theta) |d_phi f|^2
      + (1 - m/E + m^2 p^2 / (4 E^4)) |f|^2
      + s (1 - m/E) Im(f* d_phi f)

plus one spin-mixing cross term

    (1 - m/E) Re[ (i cot(theta) f+* dA_phi f-  -  f+* dA_theta f-) e^{-i phi} ]

where dA is the antisymmetrized derivative f* dA g = f* dg - g df*.  The
relative minus between the two pieces follows from the bispinor connection
u(s)* . d_theta u(s') being antisymmetric in the spin indices while the
phi connection is Hermitian; it is checked in the tests against a
derivative-free evaluation of the same state.  First
moments <r> come from the identity r psi ~ i grad_p acting on the full
4-component momentum wave function sum_s u(p,s) f(p,s), which brings in the
analytic bispinor partials; <p> needs only the amplitude density.  Both
means are always computed and subtracted from the second moments.

Amplitudes independent of phi make every phi-carrying term vanish after the
analytic phi integral (factor 2 pi); otherwise a 64-point trapezoid handles
phi, which is spectrally accurate for smooth periodic integrands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .quadrature import QuadConfig, _integrate_2d_rows

_N_PHI_INDEP = 8
_N_PHI_GENERAL = 64

AmpFunc = Callable[[float, np.ndarray, float], np.ndarray]


@dataclass(frozen=True)
class MomentumPoint:
    """Spherical momentum coordinates; p in units of mc (m = 1 internally)."""

    p: float
    theta: float
    phi: float

    def __post_init__(self):
        if not (self.p >= 0.0) or not math.isfinite(self.p):
            raise ValueError("p must be a finite non-negative real")
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError("theta must lie in [0, pi]")

    @property
    def energy(self) -> float:
        return math.hypot(1.0, self.p)


@dataclass(frozen=True)
class Bispinor:
    components: np.ndarray  # shape (4,), complex

    def __post_init__(self):
        arr = np.asarray(self.components, dtype=complex)
        if arr.shape != (4,):
            raise ValueError("a bispinor has exactly 4 components")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("bispinor components must be finite")
        object.__setattr__(self, "components", arr)


def _check_spin(s: int) -> int:
    if s not in (+1, -1):
        raise ValueError("spin must be +1 or -1")
    return s


def _bispinor_block(p: float, theta: np.ndarray, phi: float, mass: float):
    """Weyl bispinors and their analytic partials, vectorized over theta.

    Returns (u, du_p, du_theta, du_phi) where each entry is a dict keyed by
    spin sign with arrays of shape (4, len(theta)).
    """
    e = math.hypot(mass, p)
    ct, st = np.cos(theta), np.sin(theta)
    pz = p * ct
    eiphi = complex(math.cos(phi), math.sin(phi))
    pxy = p * st * eiphi  # p_x + i p_y
    big = mass + e
    d = math.sqrt(4.0 * e * big)
    # d(ln D)/dp; E' = p/E
    dlnd = 0.5 * (p / e) * (1.0 / e + 1.0 / big)

    zeros = np.zeros_like(theta, dtype=complex)

    def stack(c0, c1, c2, c3):
        return np.array([c0 + zeros, c1 + zeros, c2 + zeros, c3 + zeros])

    u = {
        +1: stack(big + pz, pxy, big - pz, -pxy) / d,
        -1: stack(np.conj(pxy), big - pz, -np.conj(pxy), big + pz) / d,
    }
    num_p = {
        +1: stack(p / e + ct, st * eiphi, p / e - ct, -st * eiphi) / d,
        -1: stack(st * np.conj(eiphi), p / e - ct,
                  -st * np.conj(eiphi), p / e + ct) / d,
    }
    du_p = {s: num_p[s] - u[s] * dlnd for s in (+1, -1)}
    du_theta = {
        +1: stack(-p * st, p * ct * eiphi, p * st, -p * ct * eiphi) / d,
        -1: stack(p * ct * np.conj(eiphi), p * st,
                  -p * ct * np.conj(eiphi), -p * st) / d,
    }
    du_phi = {
        +1: stack(zeros, 1j * pxy, zeros, -1j * pxy) / d,
        -1: stack(-1j * np.conj(pxy), zeros, 1j * np.conj(pxy), zeros) / d,
    }
    return u, du_p, du_theta, du_phi


def bispinor_u(pt: MomentumPoint, s: int) -> Bispinor:
    """Orthonormal positive-energy Weyl bispinor u(p, s), m = 1."""
    _check_spin(s)
    u, _, _, _ = _bispinor_block(pt.p, np.array([pt.theta]), pt.phi, 1.0)
    return Bispinor(components=u[s][:, 0])


def bispinor_partials(pt: MomentumPoint, s: int) -> tuple[Bispinor, Bispinor, Bispinor]:
    """Analytic (d_p, d_theta, d_phi) of u(p, s) at a point, m = 1."""
    _check_spin(s)
    _, dp, dth, dph = _bispinor_block(pt.p, np.array([pt.theta]), pt.phi, 1.0)
    return (Bispinor(components=dp[s][:, 0]),
            Bispinor(components=dth[s][:, 0]),
            Bispinor(components=dph[s][:, 0]))


@dataclass(frozen=True)
class AmplitudePair:
    """Momentum-space amplitudes f(p, theta, phi) for the two spin signs.

    Each amplitude is called as f(p, thetas, phi) with scalar p and phi and
    an array of thetas, returning complex values; plain scalar callables
    are adapted automatically.  f_minus may be None for a pure spin-up
    state.  partials_* optionally supply analytic (d_p, d_theta, d_phi)
    with the same calling convention; otherwise central differences with
    one Richardson pass are used.  phi_independent may be declared to skip
    the runtime probe.
    """

    f_plus: Optional[AmpFunc]
    f_minus: Optional[AmpFunc] = None
    partials_plus: Optional[Sequence[AmpFunc]] = None
    partials_minus: Optional[Sequence[AmpFunc]] = None
    phi_independent: Optional[bool] = None


@dataclass(frozen=True)
class DispersionReport:
    norm_sq: float
    mean_r: np.ndarray
    mean_p: np.ndarray
    delta_r_sq: float
    delta_p_sq: float
    gamma: float


def _vectorize_amp(fn: AmpFunc) -> AmpFunc:
    def call(p: float, thetas: np.ndarray, phi: float) -> np.ndarray:
        try:
            out = np.asarray(fn(p, thetas, phi), dtype=complex)
        except (TypeError, ValueError):
            out = None
        if out is None or out.shape != thetas.shape:
            out = np.array([complex(fn(p, float(t), phi)) for t in thetas])
        return out

    return call


class _Amplitude:
    """One spin component with analytic or numeric partial derivatives."""

    def __init__(self, fn: Optional[AmpFunc],
                 partials: Optional[Sequence[AmpFunc]]):
        self.is_zero = fn is None
        self.fn = _vectorize_amp(fn) if fn is not None else None
        if partials is not None:
            if len(partials) != 3:
                raise ValueError("partials must be (d_p, d_theta, d_phi)")
            self.partials = tuple(_vectorize_amp(g) for g in partials)
        else:
            self.partials = None

    def value(self, p, thetas, phi):
        if self.is_zero:
            return np.zeros_like(thetas, dtype=complex)
        return self.fn(p, thetas, phi)

    def _numeric_partial(self, p, thetas, phi, axis: int):
        # Central difference with one Richardson pass; steps never leave
        # the coordinate domain.
        if axis == 0:
            h = max(1e-5, 1e-5 * p)
            if p - h <= 0.0:
                h = 0.5 * p
            probe = lambda hh: (self.fn(p + hh, thetas, phi)
                                - self.fn(p - hh, thetas, phi)) / (2.0 * hh)
        elif axis == 1:
            t_lo = float(np.min(thetas))
            t_hi = float(np.max(thetas))
            h = min(1e-5, 0.5 * t_lo, 0.5 * (math.pi - t_hi))
            h = max(h, 1e-9)
            probe = lambda hh: (self.fn(p, thetas + hh, phi)
                                - self.fn(p, thetas - hh, phi)) / (2.0 * hh)
        else:
            h = 1e-5
            probe = lambda hh: (self.fn(p, thetas, phi + hh)
                                - self.fn(p, thetas, phi - hh)) / (2.0 * hh)
        d1 = probe(h)
        d2 = probe(0.5 * h)
        return (4.0 * d2 - d1) / 3.0

    def partial(self, p, thetas, phi, axis: int):
        if self.is_zero:
            return np.zeros_like(thetas, dtype=complex)
        if self.partials is not None:
            return self.partials[axis](p, thetas, phi)
        return self._numeric_partial(p, thetas, phi, axis)


def _probe_phi_independent(amps: list[_Amplitude]) -> bool:
    pts = [(0.37, 0.9), (1.3, 2.2), (2.6, 0.4)]
    phis = (0.0, 1.7, 4.4)
    for amp in amps:
        if amp.is_zero:
            continue
        for p, th in pts:
            vals = [amp.value(p, np.array([th]), phi)[0] for phi in phis]
            scale = max(max(abs(v) for v in vals), 1e-300)
            if max(abs(v - vals[0]) for v in vals) > 1e-12 * scale:
                return False
    return True


def dispersion_functional(amp: AmplitudePair, cfg: QuadConfig = QuadConfig(),
                          mass: float = 1.0) -> DispersionReport:
    """Norm and dispersions of the state sum_s u(p,s) f(p,s).

    mass is the electron mass in the units of p (default 1); mass = 0 is the
    ultrarelativistic limit, large mass the nonrelativistic one.
    """
    if amp.f_plus is None and amp.f_minus is None:
        raise ValueError("at least one spin amplitude must be supplied")
    if mass < 0.0 or not math.isfinite(mass):
        raise ValueError("mass must be a finite non-negative real")
    cfg = cfg.validated()

    plus = _Amplitude(amp.f_plus, amp.partials_plus)
    minus = _Amplitude(amp.f_minus, amp.partials_minus)
    phi_indep = amp.phi_independent
    if phi_indep is None:
        phi_indep = _probe_phi_independent([plus, minus])

    # The bispinors and frame vectors put explicit e^{i k phi} factors
    # (|k| <= 3) into every integrand even when the amplitudes carry none,
    # so phi is always a trapezoid sum: 8 nodes are exact for the band-
    # limited phi-independent case (amplitudes evaluated once and reused),
    # 64 handle general smooth amplitudes to spectral accuracy.
    n_phi = _N_PHI_INDEP if phi_indep else _N_PHI_GENERAL
    phis = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    w_phi = 2.0 * math.pi / n_phi

    # rows: 0 norm, 1 p-second-moment, 2 r-second-moment,
    #       3..5 <p> components, 6..8 <r> components
    def rows(p: float, thetas: np.ndarray) -> np.ndarray:
        st = np.sin(thetas)
        ct = np.cos(thetas)
        e = math.hypot(mass, p)
        rel = 1.0 - mass / e  # (1 - m/E)
        coef_f = rel + (mass * p) ** 2 / (4.0 * e ** 4)
        out = np.zeros((9, thetas.size))
        if phi_indep:
            cache_f = (plus.value(p, thetas, 0.0), minus.value(p, thetas, 0.0))
            zero = np.zeros_like(thetas, dtype=complex)
            cache_g = ([plus.partial(p, thetas, 0.0, 0),
                        plus.partial(p, thetas, 0.0, 1), zero],
                       [minus.partial(p, thetas, 0.0, 0),
                        minus.partial(p, thetas, 0.0, 1), zero])
        for phi in phis:
            if phi_indep:
                fp, fm = cache_f
                gp, gm = cache_g
            else:
                fp = plus.value(p, thetas, phi)
                fm = minus.value(p, thetas, phi)
                gp = [plus.partial(p, thetas, phi, ax) for ax in range(3)]
                gm = [minus.partial(p, thetas, phi, ax) for ax in range(3)]
            dens = np.abs(fp) ** 2 + np.abs(fm) ** 2

            u, du_p, du_t, du_f = _bispinor_block(p, thetas, phi, mass)

            out[0] += w_phi * p * p * st * dens
            out[1] += w_phi * p ** 4 * st * dens

            r2 = (p * p * (np.abs(gp[0]) ** 2 + np.abs(gm[0]) ** 2)
                  + np.abs(gp[1]) ** 2 + np.abs(gm[1]) ** 2
                  + (np.abs(gp[2]) ** 2 + np.abs(gm[2]) ** 2) / st ** 2
                  + coef_f * dens
                  + rel * ((np.conj(fp) * gp[2]).imag
                           - (np.conj(fm) * gm[2]).imag))
            anti_t = np.conj(fp) * gm[1] - fm * np.conj(gp[1])
            anti_f = np.conj(fp) * gm[2] - fm * np.conj(gp[2])
            # relative minus: theta connection between spins is antisymmetric
            cross = (1j * (ct / st) * anti_f - anti_t) * np.exp(-1j * phi)
            r2 = r2 + rel * cross.real
            out[2] += w_phi * st * r2

            cp, sp = math.cos(phi), math.sin(phi)
            nx, ny, nz = st * cp, st * sp, ct
            out[3] += w_phi * p ** 3 * st * nx * dens
            out[4] += w_phi * p ** 3 * st * ny * dens
            out[5] += w_phi * p ** 3 * st * nz * dens

            # <r> = Re conj(psi) . i grad_p psi, Cartesian components via
            # the spherical frame vectors.
            psi = u[+1] * fp + u[-1] * fm
            d_psi_p = du_p[+1] * fp + u[+1] * gp[0] + du_p[-1] * fm + u[-1] * gm[0]
            d_psi_t = du_t[+1] * fp + u[+1] * gp[1] + du_t[-1] * fm + u[-1] * gm[1]
            d_psi_f = du_f[+1] * fp + u[+1] * gp[2] + du_f[-1] * fm + u[-1] * gm[2]
            a_p = -np.sum((np.conj(psi) * d_psi_p), axis=0).imag
            a_t = -np.sum((np.conj(psi) * d_psi_t), axis=0).imag / p
            a_f = -np.sum((np.conj(psi) * d_psi_f), axis=0).imag / (p * st)
            out[6] += w_phi * p * p * st * (a_p * st * cp + a_t * ct * cp - a_f * sp)
            out[7] += w_phi * p * p * st * (a_p * st * sp + a_t * ct * sp + a_f * cp)
            out[8] += w_phi * p * p * st * (a_p * ct - a_t * st)
        return out

    vals, errs, n_evals = _integrate_2d_rows(
        lambda p, thetas: rows(p, thetas), cfg, 9, control_rows=[0, 1, 2])

    norm_sq = float(vals[0])
    if not (norm_sq > 0.0) or not math.isfinite(norm_sq):
        raise ValueError("amplitude is not normalizable (norm integral invalid)")
    mean_p = np.array(vals[3:6]) / norm_sq
    mean_r = np.array(vals[6:9]) / norm_sq
    second_p = float(vals[1]) / norm_sq
    second_r = float(vals[2]) / norm_sq
    delta_p_sq = second_p - float(mean_p @ mean_p)
    delta_r_sq = second_r - float(mean_r @ mean_r)
    if delta_p_sq <= 0.0 or delta_r_sq <= 0.0:
        raise ValueError("dispersions came out non-positive; state invalid "
                         "or quadrature tolerance too loose")
    return DispersionReport(
        norm_sq=norm_sq,
        mean_r=mean_r,
        mean_p=mean_p,
        delta_r_sq=delta_r_sq,
        delta_p_sq=delta_p_sq,
        gamma=math.sqrt(delta_r_sq * delta_p_sq),
    )
