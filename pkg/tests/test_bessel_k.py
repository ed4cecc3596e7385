import numpy as np
import pytest
from scipy import integrate, stats

from bkmcmc.bessel_k import (BKParams, SingularPointError, bessel_k_nu,
                             bk_char_fn, bk_density, bk_log_density, sample_bk)
from bkmcmc.rng import ParameterDomainError, RngHandle


def _bessel_k_quadrature(nu: float, x: float) -> float:
    # independent oracle: K_nu(x) = int_0^inf exp(-x*cosh(t)) cosh(nu*t) dt
    val, _ = integrate.quad(lambda t: np.exp(-x * np.cosh(t)) * np.cosh(nu * t),
                            0.0, 30.0, limit=400, epsabs=1e-300, epsrel=1e-13)
    return val


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 1.5, 2.3])
@pytest.mark.parametrize("x", [0.1, 1.0, 5.0, 20.0])
def test_bessel_k_against_integral_representation(nu, x):
    exact = _bessel_k_quadrature(nu, x)
    assert abs(bessel_k_nu(nu, x) - exact) <= 1e-10 * exact


def test_bessel_k_half_closed_form():
    x = np.geomspace(1e-3, 50, 100)
    exact = np.sqrt(np.pi / (2 * x)) * np.exp(-x)
    np.testing.assert_allclose(bessel_k_nu(0.5, x), exact, rtol=1e-10)


def test_bessel_k_domain_error():
    with pytest.raises(ParameterDomainError):
        bessel_k_nu(0.5, 0.0)
    with pytest.raises(ParameterDomainError):
        bessel_k_nu(0.5, -1.0)


@pytest.mark.parametrize("p,sigma", [(0.3, 1.0), (1.0, 1.0), (1.0, 2.0), (2.5, 0.7)])
def test_density_normalizes(p, sigma):
    params = BKParams(p, sigma)
    total, _ = integrate.quad(lambda t: bk_density(params, t), -80 * sigma, 80 * sigma,
                              points=[0.0], limit=400)
    assert abs(total - 1.0) < 1e-6


def test_density_reduces_to_laplace_at_p_one():
    params = BKParams(1.0, 1.0)
    t = np.linspace(-5, 5, 41)
    np.testing.assert_allclose(bk_density(params, t), 0.5 * np.exp(-np.abs(t)), rtol=1e-12)


def test_density_symmetric():
    params = BKParams(0.7, 1.3)
    t = np.linspace(0.01, 6, 50)
    np.testing.assert_allclose(bk_density(params, t), bk_density(params, -t), rtol=1e-13)


def test_density_finite_limit_at_zero_for_large_p():
    params = BKParams(1.5, 1.0)
    at_zero = bk_density(params, 0.0)
    near = bk_density(params, 1e-9)
    assert np.isfinite(at_zero)
    assert abs(at_zero - near) < 1e-5 * at_zero


def test_density_singular_at_zero_for_small_p():
    with pytest.raises(SingularPointError):
        bk_density(BKParams(0.4, 1.0), 0.0)
    with pytest.raises(SingularPointError):
        bk_density(BKParams(0.5, 1.0), np.array([1.0, 0.0]))


def test_log_density_matches_density():
    params = BKParams(0.8, 1.5)
    t = np.array([-3.0, -0.5, 0.2, 2.0, 10.0])
    np.testing.assert_allclose(np.exp(bk_log_density(params, t)), bk_density(params, t),
                               rtol=1e-12)


def test_log_density_stable_in_far_tail():
    val = bk_log_density(BKParams(1.0, 1.0), 800.0)
    assert np.isfinite(val)
    # Laplace tail: log density ~ -|t| - log 2
    assert abs(val - (-800.0 - np.log(2.0))) < 1e-3


def test_char_fn_against_empirical():
    params = BKParams(0.7, 1.3)
    n = 10**5
    x = sample_bk(params, RngHandle(0), size=n)
    s = np.array([-2.0, -1.0, 0.5, 1.0, 2.0])
    emp = np.mean(np.exp(1j * s[:, None] * x[None, :]), axis=1)
    assert np.max(np.abs(emp - bk_char_fn(params, s))) < 4.0 / np.sqrt(n)


def test_sample_moments():
    params = BKParams(1.2, 0.8)
    x = sample_bk(params, RngHandle(1), size=2 * 10**5)
    assert abs(np.mean(x)) < 0.02
    assert abs(np.var(x) - 2 * params.p * params.sigma**2) < 0.05


def test_sample_matches_laplace_at_p_one():
    x = sample_bk(BKParams(1.0, 1.0), RngHandle(2), size=5 * 10**4)
    assert stats.ks_1samp(x, stats.laplace.cdf).pvalue > 1e-3


def test_convolution_closure_in_p():
    # BK(p1, s) + BK(p2, s) has the law of BK(p1 + p2, s)
    rng = RngHandle(3)
    n = 5 * 10**4
    x = sample_bk(BKParams(0.6, 1.0), rng, size=n) + sample_bk(BKParams(0.9, 1.0), rng, size=n)
    y = sample_bk(BKParams(1.5, 1.0), rng, size=n)
    assert stats.ks_2samp(x, y).pvalue > 1e-3


def test_params_validation():
    with pytest.raises(ParameterDomainError):
        BKParams(0.0, 1.0)
    with pytest.raises(ParameterDomainError):
        BKParams(1.0, -1.0)
