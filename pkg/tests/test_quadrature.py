"""Semi-infinite and 2D quadrature against closed forms and cross-checks."""

import math

import pytest
from scipy.integrate import quad

from relhur import (
    QuadConfig,
    QuadratureError,
    bessel_k,
    integrate_2d,
    integrate_semi_infinite,
)

CFG = QuadConfig()


def _tolerance(cfg, value):
    return max(cfg.abs_tol, cfg.rel_tol * abs(value))


def test_exponential_unit_integral():
    res = integrate_semi_infinite(lambda x: math.exp(-x), CFG)
    assert abs(res.value - 1.0) <= _tolerance(CFG, 1.0)
    assert res.est_abs_error >= 0.0
    assert res.evaluations > 0


def test_gaussian_second_moment():
    res = integrate_semi_infinite(lambda x: x * x * math.exp(-x * x), CFG)
    assert res.value == pytest.approx(math.sqrt(math.pi) / 4.0, abs=1e-10)


def test_relativistic_moment_matches_bessel():
    # integral_0^inf p^2 e^{-beta E_p} dp = (m^2/beta) K2(m beta), m=1.
    # Verify the identity itself with an unrelated integrator first.
    beta = 2.0
    ref, err = quad(lambda p: p * p * math.exp(-beta * math.hypot(1.0, p)),
                    0.0, 60.0, limit=200, epsabs=1e-13, epsrel=1e-12)
    k_form = bessel_k(2, beta) / beta
    assert abs(ref - k_form) <= 1e-9 * k_form + err

    res = integrate_semi_infinite(
        lambda p: p * p * math.exp(-beta * math.hypot(1.0, p)),
        QuadConfig(decay_scale=1.0))
    assert res.value == pytest.approx(0.5 * bessel_k(2, 2.0), rel=1e-9)


def test_2d_separable_gaussian():
    res = integrate_2d(lambda p, th: p * p * math.sin(th) * math.exp(-p * p),
                       CFG)
    assert res.value == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-9)


def test_2d_theta_measure():
    res = integrate_2d(lambda p, th: math.exp(-p), CFG)
    assert res.value == pytest.approx(math.pi, rel=1e-9)


def test_linearity():
    f = lambda x: math.exp(-x)
    g = lambda x: x * math.exp(-x * x)
    a, b = 3.0, -2.0
    lhs = integrate_semi_infinite(lambda x: a * f(x) + b * g(x), CFG)
    fa = integrate_semi_infinite(f, CFG)
    gb = integrate_semi_infinite(g, CFG)
    combined_err = lhs.est_abs_error + abs(a) * fa.est_abs_error \
        + abs(b) * gb.est_abs_error
    assert abs(lhs.value - (a * fa.value + b * gb.value)) \
        <= combined_err + 1e-12


def test_positivity():
    res = integrate_semi_infinite(lambda x: x * math.exp(-3.0 * x), CFG)
    assert res.value > 0.0


def test_refinement_never_hurts():
    # halving tolerances must not move the result away from the oracle
    oracle = math.sqrt(math.pi) / 4.0
    f = lambda x: x * x * math.exp(-x * x)
    loose = integrate_semi_infinite(f, QuadConfig(abs_tol=1e-6, rel_tol=1e-5))
    tight = integrate_semi_infinite(f, QuadConfig(abs_tol=5e-7, rel_tol=5e-6))
    assert abs(tight.value - oracle) <= abs(loose.value - oracle) + 1e-15


def test_integrable_endpoint_singularity():
    # q^{-1/2} e^{-q}: Gamma(1/2) = sqrt(pi)
    res = integrate_semi_infinite(lambda q: math.exp(-q) / math.sqrt(q), CFG)
    assert res.value == pytest.approx(math.sqrt(math.pi), rel=1e-8)


def test_nonconvergence_carries_best_estimate():
    cfg = QuadConfig(abs_tol=1e-10, rel_tol=1e-9, max_subdivisions=1)
    with pytest.raises(QuadratureError) as exc_info:
        integrate_semi_infinite(lambda q: math.exp(-q) / math.sqrt(q), cfg)
    best = exc_info.value.best
    assert best is not None
    assert best.value == pytest.approx(math.sqrt(math.pi), rel=0.2)


def test_config_validation():
    with pytest.raises(ValueError):
        QuadConfig(abs_tol=0.0).validated()
    with pytest.raises(ValueError):
        QuadConfig(rel_tol=-1e-9).validated()
    with pytest.raises(ValueError):
        QuadConfig(max_subdivisions=0).validated()
    with pytest.raises(ValueError):
        QuadConfig(decay_scale=0.0).validated()


def test_determinism():
    f = lambda x: x * x * math.exp(-x * x)
    r1 = integrate_semi_infinite(f, CFG)
    r2 = integrate_semi_infinite(f, CFG)
    assert r1.value == r2.value
    assert r1.est_abs_error == r2.est_abs_error
    assert r1.evaluations == r2.evaluations
