import math
import sys
from pathlib import Path

import numpy as np
import pytest
from scipy import integrate
from scipy.special import kv

ROOT = Path(__file__).resolve().parents[2]
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from vgfit.core.errors import DomainError
from vgfit.special.functions import as_real_pos, digamma, log_bessel_k, log_bessel_k_array, log_gamma


def test_log_gamma_known_values():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)
    assert log_gamma(10.0) == pytest.approx(math.log(362880.0), rel=1e-14)


def test_digamma_recurrence_and_bounds():
    for x in (0.1, 0.5, 1.0, 2.5, 7.0, 40.0):
        assert digamma(x + 1.0) == pytest.approx(digamma(x) + 1.0 / x, rel=1e-12, abs=1e-12)
    for x in (0.5, 1.0, 3.0, 25.0):
        assert math.log(x) - 1.0 / x < digamma(x) < math.log(x) - 1.0 / (2.0 * x)
    assert digamma(1.0) == pytest.approx(-np.euler_gamma, rel=1e-14)


def test_half_order_bessel_closed_form():
    # K_{1/2}(x) = √(π/(2x)) e^{-x}
    for x in (1e-3, 0.5, 3.0, 50.0, 1000.0):
        expect = 0.5 * math.log(math.pi / (2.0 * x)) - x
        assert log_bessel_k(0.5, x) == pytest.approx(expect, rel=1e-12)


def test_bessel_matches_scipy_in_normal_range():
    nus = np.array([0.0, 0.3, 1.0, 2.5, 10.0])
    xs = np.array([0.05, 0.7, 2.0, 9.0, 30.0])
    got = log_bessel_k_array(nus[:, None], xs[None, :])
    ref = np.log(kv(nus[:, None], xs[None, :]))
    np.testing.assert_allclose(got, ref, rtol=1e-10)


def test_bessel_symmetric_in_order():
    assert log_bessel_k(-1.7, 0.9) == log_bessel_k(1.7, 0.9)


def test_bessel_small_argument_stays_finite():
    v = log_bessel_k(2.0, 1e-300)
    expect = math.lgamma(2.0) - math.log(2.0) + 2.0 * (math.log(2.0) - math.log(1e-300))
    assert math.isfinite(v)
    assert v == pytest.approx(expect, rel=1e-10)
    assert math.isfinite(log_bessel_k(0.0, 1e-300))


def test_bessel_large_argument_no_underflow():
    v = log_bessel_k(3.0, 5000.0)
    assert math.isfinite(v)
    assert v == pytest.approx(0.5 * math.log(math.pi / 10000.0) - 5000.0, rel=1e-6)


@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan"), float("inf")])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        log_gamma(bad)
    with pytest.raises(DomainError):
        log_bessel_k(1.0, bad)


@pytest.mark.parametrize("nu,x", [(50.0, 1e-8), (2.0, 1e-160), (0.7, 1e-300)])
def test_bessel_scalar_fallback_points(nu, x):
    v = log_bessel_k(nu, x)
    expect = math.lgamma(nu) - math.log(2.0) + nu * (math.log(2.0) - math.log(x))
    assert v == pytest.approx(expect, rel=1e-10)
    assert v == pytest.approx(float(log_bessel_k_array([nu], [x])[0]), rel=1e-15)


def test_bessel_array_keeps_shape():
    assert log_bessel_k_array(1.0, 2.0).shape == ()
    assert log_bessel_k_array([1.0, 2.0], 1e-300).shape == (2,)
    assert log_bessel_k_array(np.ones((2, 3)), 0.5).shape == (2, 3)


def test_bessel_large_order_moderate_argument():
    # kve 가 넘치는 (ν=400, x=14) 구간: 점화식 K_{ν+1} = K_{ν-1} + (2ν/x) K_ν
    nu, x = 399.5, 14.0
    lk = [log_bessel_k(n, x) for n in (nu - 1.0, nu, nu + 1.0)]
    rhs = np.logaddexp(lk[0], math.log(2.0 * nu / x) + lk[1])
    assert lk[2] == pytest.approx(rhs, rel=1e-9)


def _k_by_quadrature(nu, x):
    # K_ν(x) = ∫_0^∞ e^{−x cosh t} cosh(νt) dt
    t_max = math.acosh(800.0 / x) + 1.0
    f = lambda t: 0.5 * (math.exp(-x * math.cosh(t) + nu * t) + math.exp(-x * math.cosh(t) - nu * t))
    val, _ = integrate.quad(f, 0.0, t_max, epsabs=0.0, epsrel=1e-13, limit=500)
    return val


@pytest.mark.parametrize("nu", [0.0, 0.25, 0.5, 1.0, 2.5])
@pytest.mark.parametrize("x", [0.1, 1.0, 10.0])
def test_bessel_matches_integral_definition(nu, x):
    ref = _k_by_quadrature(nu, x)
    assert abs(math.exp(log_bessel_k(nu, x)) - ref) / ref < 1e-8


def test_bessel_k0_reference_value():
    assert math.exp(log_bessel_k(0.0, 1.0)) == pytest.approx(0.4210244382, rel=1e-9)


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 7.5, 50.0])
def test_bessel_strictly_decreasing_in_x(nu):
    xs = np.geomspace(1e-8, 700.0, 400)
    vals = np.array([log_bessel_k(nu, x) for x in xs])
    assert np.all(np.isfinite(vals))
    assert np.all(np.diff(vals) < 0.0)


def test_as_real_pos():
    assert as_real_pos("2.5", "a") == 2.5
    with pytest.raises(DomainError, match="a must be"):
        as_real_pos(-1.0, "a")
    with pytest.raises(DomainError):
        as_real_pos("abc")
