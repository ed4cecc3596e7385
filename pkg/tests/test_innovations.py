import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from bkmcmc.innovations import (InnovationKind, InnovationLaw, bk_innovation_cf,
                                exp_innovation_cf, gamma_innovation_cf,
                                sample_bk_innovation, sample_exp_innovation,
                                sample_gamma_innovation)
from bkmcmc.rng import ParameterDomainError, RngHandle

GRID = np.array([-2.0, -1.0, 0.5, 1.0, 2.0])


def _cf_err(samples, exact):
    emp = np.mean(np.exp(1j * GRID[:, None] * samples[None, :]), axis=1)
    return np.max(np.abs(emp - exact))


@pytest.mark.parametrize("p,sigma,beta", [(0.5, 1.0, 0.3), (1.0, 2.0, 0.7), (2.0, 0.5, 0.97)])
def test_gamma_innovation_cf_match(p, sigma, beta):
    n = 10**5
    x = sample_gamma_innovation(p, sigma, beta, RngHandle(0), size=n)
    assert _cf_err(x, gamma_innovation_cf(p, sigma, beta, GRID)) < 4.0 / np.sqrt(n)


@pytest.mark.parametrize("sigma,beta", [(1.0, 0.3), (1.5, 0.7), (1.0, 0.97)])
def test_exp_innovation_cf_match(sigma, beta):
    n = 10**5
    x = sample_exp_innovation(sigma, beta, RngHandle(1), size=n)
    assert _cf_err(x, exp_innovation_cf(sigma, beta, GRID)) < 4.0 / np.sqrt(n)


@pytest.mark.parametrize("p,sigma,beta", [(0.5, 1.0, 0.3), (1.0, 1.0, 0.7), (2.0, 1.5, 0.97)])
def test_bk_innovation_cf_match(p, sigma, beta):
    n = 10**5
    x = sample_bk_innovation(p, sigma, beta, RngHandle(2), size=n)
    assert _cf_err(x, bk_innovation_cf(p, sigma, beta, GRID)) < 4.0 / np.sqrt(n)


def test_exp_innovation_cf_is_gamma_cf_at_p_one():
    s = np.linspace(-3, 3, 11)
    np.testing.assert_allclose(exp_innovation_cf(1.3, 0.6, s),
                               gamma_innovation_cf(1.0, 1.3, 0.6, s))


@pytest.mark.parametrize("p,beta", [(0.5, 0.3), (1.0, 0.7), (2.0, 0.97)])
def test_sd_composition_recovers_gamma(p, beta):
    n = 2 * 10**4
    rng = RngHandle(3)
    x = beta * rng.gen.gamma(p, size=n) + sample_gamma_innovation(p, 1.0, beta, rng, size=n)
    assert stats.ks_1samp(x, stats.gamma(p).cdf).pvalue > 1e-3


@pytest.mark.parametrize("beta", [0.3, 0.7, 0.97])
def test_sd_composition_recovers_exponential(beta):
    n = 2 * 10**4
    rng = RngHandle(4)
    x = beta * rng.gen.exponential(size=n) + sample_exp_innovation(1.0, beta, rng, size=n)
    assert stats.ks_1samp(x, stats.expon.cdf).pvalue > 1e-3


def test_gamma_innovation_has_atom_at_zero():
    # P(innovation = 0) = P(tau = 0) = beta^p
    p, beta = 1.0, 0.5
    x = sample_gamma_innovation(p, 1.0, beta, RngHandle(5), size=10**5)
    frac = np.mean(x == 0.0)
    assert abs(frac - beta**p) < 0.01


def test_exp_innovation_atom_probability():
    beta = 0.7
    x = sample_exp_innovation(1.0, beta, RngHandle(6), size=10**5)
    assert abs(np.mean(x == 0.0) - beta) < 0.01


def test_scalar_and_vector_draws_agree_in_law():
    p, sigma, beta = 0.8, 1.2, 0.6
    rng = RngHandle(7)
    scalars = np.array([sample_gamma_innovation(p, sigma, beta, rng) for _ in range(5000)])
    vec = sample_gamma_innovation(p, sigma, beta, RngHandle(8), size=5000)
    assert stats.ks_2samp(scalars, vec).pvalue > 1e-3


def test_vector_draw_shape():
    x = sample_gamma_innovation(1.0, 1.0, 0.5, RngHandle(9), size=(3, 4))
    assert x.shape == (3, 4)
    assert np.all(x >= 0)


def test_bk_innovation_symmetric():
    x = sample_bk_innovation(1.0, 1.0, 0.5, RngHandle(10), size=10**5)
    assert abs(np.mean(x)) < 0.02
    assert stats.ks_2samp(x, -x).pvalue > 1e-3


@given(p=st.floats(min_value=-5, max_value=0), beta=st.floats(min_value=0.01, max_value=0.99))
@settings(max_examples=25)
def test_nonpositive_shape_rejected(p, beta):
    with pytest.raises(ParameterDomainError):
        sample_gamma_innovation(p, 1.0, beta, RngHandle(0))


@pytest.mark.parametrize("beta", [0.0, 1.0, -0.1, 1.5])
def test_beta_outside_unit_interval_rejected(beta):
    with pytest.raises(ParameterDomainError):
        sample_exp_innovation(1.0, beta, RngHandle(0))
    with pytest.raises(ParameterDomainError):
        InnovationLaw(InnovationKind.GAMMA, 1.0, 1.0, beta)


def test_innovation_law_validates_on_construction():
    law = InnovationLaw(InnovationKind.BK, 0.5, 1.0, 0.3)
    assert law.kind is InnovationKind.BK
    with pytest.raises(ParameterDomainError):
        InnovationLaw(InnovationKind.BK, 0.5, -1.0, 0.3)
