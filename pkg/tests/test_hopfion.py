"""Localized free-electron packet: density algebra, norm, gamma_H(a) curve.

gamma_H(a = 1) is frozen from two independent routes that agree to 1e-13:
direct component gradients (gamma_h) and decomposition onto spin
amplitudes fed through the general dispersion functional.  <p_z> has the
exact closed form -1/(2a), which pins the first-moment machinery.
"""

import math

import numpy as np
import pytest

from relhur import (
    HopfionState,
    MomentumPoint,
    QuadConfig,
    SweepTable,
    amplitude_pair,
    bessel_k,
    density,
    dispersion_functional,
    gamma_bound,
    gamma_h,
    gamma_h_curve,
    momentum_bispinor,
    norm_bessel_ratio,
    norm_const,
)

RNG = np.random.default_rng(42)

GAMMA_H_AT_1 = 1.9649111869950
DR2_AT_1 = 1.0794334081891
DP2_AT_1 = 3.5767616079766
NORM_AT_1 = 3.1888391228859  # equals 4 pi K2(2) to the quadrature tolerance
REFERENCE_GRID = [0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0]


def test_state_validation():
    with pytest.raises(ValueError):
        HopfionState(0.0)
    with pytest.raises(ValueError):
        HopfionState(-2.0)
    with pytest.raises(ValueError):
        HopfionState(math.inf)
    with pytest.raises(ValueError):
        gamma_h(HopfionState(0.01))  # below supported width range
    with pytest.raises(ValueError):
        gamma_h(HopfionState(200.0))


def test_rest_momentum_components():
    b = momentum_bispinor(HopfionState(1.0), MomentumPoint(0.0, 0.3, 1.2))
    expected = math.exp(-1.0) * np.array([1.0, 0.0, 1.0, 0.0])
    assert np.max(np.abs(b.components - expected)) < 1e-15


def test_density_phi_independent():
    state = HopfionState(0.7)
    pts = [MomentumPoint(1.3, 0.9, phi) for phi in (0.0, 1.0, 3.0, 5.5)]
    vals = [float(np.sum(np.abs(momentum_bispinor(state, pt).components) ** 2))
            for pt in pts]
    assert max(vals) - min(vals) <= 1e-15 * max(vals)


def test_fast_density_equals_component_sum():
    # (2/m^2) e^{-2aE} (E - p_z)/E against the explicit component sum
    state = HopfionState(1.3)
    for _ in range(100):
        pt = MomentumPoint(float(RNG.uniform(0.0, 12.0)),
                           float(RNG.uniform(0.0, math.pi)),
                           float(RNG.uniform(0.0, 2.0 * math.pi)))
        direct = float(np.sum(np.abs(momentum_bispinor(state, pt).components) ** 2))
        assert density(state, pt) == pytest.approx(direct, rel=1e-12)


def test_norm_ratio_width_independent():
    # quadrature norm / (K2(2a)/a) must not depend on a
    r1 = norm_bessel_ratio(HopfionState(1.0))
    r2 = norm_bessel_ratio(HopfionState(2.0))
    r5 = norm_bessel_ratio(HopfionState(5.0))
    assert r1 == pytest.approx(r2, rel=1e-8)
    assert r1 == pytest.approx(r5, rel=1e-8)
    # measured constant, frozen: the solid-angle factor
    assert r1 == pytest.approx(4.0 * math.pi, rel=1e-8)


def test_norm_const_frozen():
    assert norm_const(HopfionState(1.0)) == pytest.approx(NORM_AT_1, rel=1e-9)


def test_norm_large_width_asymptotics():
    # at a = 20 the K2 route and quadrature still agree; e^{40} rescaling
    # keeps the comparison in range
    val = norm_const(HopfionState(20.0)) * math.exp(40.0)
    ref = 4.0 * math.pi * bessel_k(2, 40.0) * math.exp(40.0) / 20.0
    assert val == pytest.approx(ref, rel=1e-8)


def test_gamma_frozen_dual_config():
    rep = gamma_h(HopfionState(1.0))
    assert rep.gamma == pytest.approx(GAMMA_H_AT_1, abs=1e-5)
    assert rep.delta_r_sq == pytest.approx(DR2_AT_1, rel=1e-8)
    assert rep.delta_p_sq == pytest.approx(DP2_AT_1, rel=1e-8)
    # a second, tighter configuration must land on the same value
    tight = gamma_h(HopfionState(1.0),
                    QuadConfig(abs_tol=1e-11, rel_tol=1e-10))
    assert tight.gamma == pytest.approx(rep.gamma, abs=1e-5)


def test_amplitude_route_matches_direct():
    # decomposition onto spin amplitudes + general functional vs direct
    # component gradients; fully independent derivative code paths
    direct = gamma_h(HopfionState(1.0))
    amp_rep = dispersion_functional(amplitude_pair(HopfionState(1.0)))
    assert amp_rep.gamma == pytest.approx(direct.gamma, rel=1e-8)
    assert amp_rep.delta_r_sq == pytest.approx(direct.delta_r_sq, rel=1e-8)
    assert amp_rep.delta_p_sq == pytest.approx(direct.delta_p_sq, rel=1e-8)
    assert amp_rep.mean_p[2] == pytest.approx(direct.mean_p[2], abs=1e-9)


def test_amplitude_partials_match_central_differences():
    amp = amplitude_pair(HopfionState(1.0))
    h = 1e-6
    for fn, parts in ((amp.f_plus, amp.partials_plus),
                      (amp.f_minus, amp.partials_minus)):
        for _ in range(25):
            p = float(RNG.uniform(0.1, 8.0))
            th = np.array([float(RNG.uniform(0.1, math.pi - 0.1))])
            phi = float(RNG.uniform(0.0, 2.0 * math.pi))
            args = (p, th, phi)
            for ax in range(3):
                hi = [p, th, phi]
                lo = [p, th, phi]
                hi[ax] = hi[ax] + h
                lo[ax] = lo[ax] - h
                num = (np.asarray(fn(*hi), dtype=complex)
                       - np.asarray(fn(*lo), dtype=complex)) / (2.0 * h)
                ana = np.asarray(parts[ax](*args), dtype=complex)
                assert np.max(np.abs(ana - num)) < 1e-8


@pytest.mark.parametrize("a", [0.5, 1.0, 5.0])
def test_mean_momentum_closed_form(a):
    # <p_z> = -1/(2a) exactly for this packet
    rep = gamma_h(HopfionState(a))
    assert rep.mean_p[2] == pytest.approx(-0.5 / a, rel=1e-9)
    assert rep.mean_p[2] < 0.0
    assert abs(rep.mean_p[0]) < 1e-10
    assert abs(rep.mean_p[1]) < 1e-10
    assert np.max(np.abs(rep.mean_r)) < 1e-10


def test_nonrelativistic_limit():
    g = gamma_h(HopfionState(50.0)).gamma
    assert abs(g - 1.5) / 1.5 < 0.02
    assert g - 1.5 < 0.03


def test_curve_strictly_decreasing():
    table = gamma_h_curve(REFERENCE_GRID)
    assert isinstance(table, SweepTable)
    assert table.limit_gamma == 1.5
    gs = [g for _, g in table.rows]
    assert all(a > b for a, b in zip(gs, gs[1:]))
    assert all(g > 1.5 for g in gs)
    assert [a for a, _ in table.rows] == REFERENCE_GRID


def test_curve_tail_approaches_limit():
    table = gamma_h_curve([10.0, 20.0, 50.0])
    gs = [g for _, g in table.rows]
    assert gs[0] > gs[1] > gs[2]
    assert gs[2] - 1.5 < 0.01


def test_single_point_curve_degenerates():
    table = gamma_h_curve([1.0])
    assert table.rows[0][0] == 1.0
    assert table.rows[0][1] == pytest.approx(gamma_h(HopfionState(1.0)).gamma,
                                             rel=1e-12)


def test_curve_rejects_bad_grids():
    with pytest.raises(ValueError):
        gamma_h_curve([])
    with pytest.raises(ValueError):
        gamma_h_curve([2.0, 1.0])
    with pytest.raises(ValueError):
        gamma_h_curve([0.001, 1.0])


def test_bound_consistency():
    # the packet is a concrete electron state: it must sit above the bound
    rep = gamma_h(HopfionState(1.0))
    d_state = (rep.delta_p_sq / rep.delta_r_sq) ** 0.25
    assert rep.gamma >= gamma_bound(d_state) - 1e-3
