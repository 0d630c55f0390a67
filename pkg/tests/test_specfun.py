"""Gamma and Bessel K checks against independent oracles.

Frozen reference values were produced with mpmath at 50 digits and are
independent of this package's series and continued fractions.
"""

import math

import pytest
from scipy.integrate import quad

from relhur import bessel_k, bessel_k_detailed, gamma_fn, gamma_fn_detailed

# mpmath.besselk, 50-digit, rounded to double
K0_AT_1 = 0.42102443824070834
K1_AT_1 = 0.60190723019723457
K2_AT_1 = 1.6248388986351774
K2_AT_2 = 0.25375975456605600


def test_gamma_exact_points():
    assert gamma_fn(1.0) == pytest.approx(1.0, rel=1e-12)
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert gamma_fn(3.0) == pytest.approx(2.0, rel=1e-12)


def test_gamma_against_lgamma_grid():
    # stdlib lgamma is an independent implementation
    x = 0.01
    while x <= 50.0:
        ref = math.exp(math.lgamma(x))
        assert gamma_fn(x) == pytest.approx(ref, rel=1e-12)
        x += 0.37


def test_gamma_error_estimate_nonnegative():
    res = gamma_fn_detailed(4.2)
    assert res.est_abs_error >= 0.0
    assert math.isfinite(res.value)


def test_gamma_domain_errors():
    for bad in (0.0, -1.0, 50.0001, math.inf, math.nan):
        with pytest.raises(ValueError):
            gamma_fn(bad)


def test_bessel_frozen_values():
    assert bessel_k(0, 1.0) == pytest.approx(K0_AT_1, rel=1e-10)
    assert bessel_k(1, 1.0) == pytest.approx(K1_AT_1, rel=1e-10)
    assert bessel_k(2, 1.0) == pytest.approx(K2_AT_1, rel=1e-10)
    assert bessel_k(2, 2.0) == pytest.approx(K2_AT_2, rel=1e-10)


def test_bessel_recurrence_across_range():
    # K2 = K0 + 2 K1 / x, relative deviation <= 1e-10
    xs = [1e-3, 3e-3, 0.01, 0.05, 0.2, 0.7, 1.0, 2.0, 5.0,
          10.0, 30.0, 80.0, 150.0, 200.0]
    for x in xs:
        k2 = bessel_k(2, x)
        dev = abs(k2 - bessel_k(0, x) - 2.0 * bessel_k(1, x) / x)
        assert dev <= 1e-10 * k2, f"recurrence broken at x={x}"


@pytest.mark.parametrize("x", [0.5, 2.0, 10.0])
@pytest.mark.parametrize("order", [0, 1, 2])
def test_bessel_integral_representation(order, x):
    # K_nu(x) = integral_0^inf e^{-x cosh t} cosh(nu t) dt
    def integrand(t):
        return math.exp(-x * math.cosh(t)) * math.cosh(order * t)

    t_cut = math.acosh(1.0 + 745.0 / x)  # beyond this e^{-x cosh t} underflows
    ref, err = quad(integrand, 0.0, t_cut, limit=200, epsabs=1e-14, epsrel=1e-12)
    assert err < 1e-11 * ref
    assert bessel_k(order, x) == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("order", [0, 1, 2])
def test_bessel_leading_asymptotics(order):
    for x in (20.0, 50.0, 120.0, 200.0):
        k = bessel_k(order, x)
        dev = abs(k * math.sqrt(2.0 * x / math.pi) * math.exp(x) - 1.0)
        assert dev <= 10.0 / x


@pytest.mark.parametrize("order", [0, 1, 2])
def test_bessel_strictly_decreasing(order):
    xs = [1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0, 200.0]
    vals = [bessel_k(order, x) for x in xs]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_bessel_underflow_policy():
    res = bessel_k_detailed(2, 701.0)
    assert res.value == 0.0
    assert res.underflow
    assert not bessel_k_detailed(2, 5.0).underflow


def test_bessel_domain_errors():
    with pytest.raises(ValueError):
        bessel_k(0, 0.0)
    with pytest.raises(ValueError):
        bessel_k(1, -2.0)
    with pytest.raises(ValueError):
        bessel_k(3, 1.0)
    with pytest.raises(ValueError):
        bessel_k(-1, 1.0)
