import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import stats

from bkmcmc.rng import (LawKind, ParameterDomainError, RngHandle, ScalarLaw,
                        sample_beta, sample_gamma, sample_standard)


def test_same_seed_same_stream_reproduces():
    a = sample_gamma(1.7, 2.0, RngHandle(42, 3), size=100)
    b = sample_gamma(1.7, 2.0, RngHandle(42, 3), size=100)
    np.testing.assert_array_equal(a, b)


def test_distinct_streams_differ():
    a = sample_gamma(1.7, 2.0, RngHandle(42, 0), size=100)
    b = sample_gamma(1.7, 2.0, RngHandle(42, 1), size=100)
    assert not np.array_equal(a, b)


def test_distinct_seeds_differ():
    a = RngHandle(0).gen.random(50)
    b = RngHandle(1).gen.random(50)
    assert not np.array_equal(a, b)


def test_gamma_matches_scipy_law():
    x = sample_gamma(0.4, 1.5, RngHandle(0), size=20000)
    assert stats.ks_1samp(x, stats.gamma(0.4, scale=1.5).cdf).pvalue > 1e-3


def test_gamma_small_shape_positive_and_finite():
    x = sample_gamma(0.05, 1.0, RngHandle(1), size=20000)
    assert np.all(np.isfinite(x)) and np.all(x >= 0)


def test_beta_matches_scipy_law():
    x = sample_beta(0.3, 0.7, RngHandle(2), size=20000)
    assert stats.ks_1samp(x, stats.beta(0.3, 0.7).cdf).pvalue > 1e-3


@pytest.mark.parametrize("p,sigma", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -2.0)])
def test_gamma_domain_errors(p, sigma):
    with pytest.raises(ParameterDomainError):
        sample_gamma(p, sigma, RngHandle(0))


def test_beta_domain_errors():
    with pytest.raises(ParameterDomainError):
        sample_beta(0.0, 1.0, RngHandle(0))


@given(st.floats(max_value=0.0, allow_nan=False), st.floats(min_value=0.01, max_value=10))
def test_scalar_law_rejects_nonpositive_gamma_params(bad, good):
    with pytest.raises(ParameterDomainError):
        ScalarLaw(LawKind.GAMMA, bad, good)


@pytest.mark.parametrize("law,check", [
    (ScalarLaw(LawKind.EXP, 2.0), lambda x: np.all(x >= 0)),
    (ScalarLaw(LawKind.BERN, 0.3), lambda x: set(np.unique(x)) <= {0, 1}),
    (ScalarLaw(LawKind.UNIFORM01), lambda x: np.all((x >= 0) & (x < 1))),
    (ScalarLaw(LawKind.POIS, 3.0), lambda x: np.all(x >= 0)),
])
def test_sample_standard_supports(law, check):
    x = sample_standard(law, RngHandle(3), size=1000)
    assert check(np.asarray(x))


def test_bern_out_of_range_rejected():
    with pytest.raises(ParameterDomainError):
        ScalarLaw(LawKind.BERN, 1.0)


def test_laplace_law_moments():
    x = sample_standard(ScalarLaw(LawKind.LAPLACE, 1.0), RngHandle(4), size=10**5)
    assert abs(np.mean(x)) < 0.02
    assert abs(np.var(x) - 2.0) < 0.1
