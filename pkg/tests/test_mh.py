import math

import numpy as np
import pytest
from scipy import stats

from bkmcmc.bessel_k import BKParams, sample_bk
from bkmcmc.kernels import RcarGamma
from bkmcmc.mh import (ChainConfig, PotentialError, PriorSpec, mh_accept,
                       run_generic_mh, run_lifted_rcar, run_lifted_sarsd)
from bkmcmc.rng import ParameterDomainError, RngHandle

FLAT = lambda value: 0.0


def test_chain_config_validation():
    with pytest.raises(ParameterDomainError):
        ChainConfig(beta=1.0, n_steps=10)
    with pytest.raises(ValueError):
        ChainConfig(beta=0.5, n_steps=10, burnin=11)
    with pytest.raises(ValueError):
        ChainConfig(beta=0.5, n_steps=10, thin=0)


def test_prior_spec_validation():
    with pytest.raises(ValueError):
        PriorSpec("laplace", 1.0, np.ones(2))
    with pytest.raises(ParameterDomainError):
        PriorSpec("bk", -1.0, np.ones(2))
    with pytest.raises(ParameterDomainError):
        PriorSpec("bk", 1.0, np.array([1.0, 0.0]))
    with pytest.raises(ParameterDomainError):
        PriorSpec("gamma", 1.0, np.ones(2), lam=0.0)


def test_mh_accept_always_accepts_downhill():
    rng = RngHandle(0)
    assert all(mh_accept(5.0, 1.0, rng) for _ in range(50))


def test_mh_accept_rejects_infinite_potential():
    rng = RngHandle(1)
    assert not any(mh_accept(1.0, math.inf, rng) for _ in range(50))


def test_mh_accept_nan_raises():
    with pytest.raises(PotentialError):
        mh_accept(math.nan, 1.0, RngHandle(2))
    with pytest.raises(PotentialError):
        mh_accept(1.0, math.nan, RngHandle(2))


def test_mh_accept_rate_matches_ratio():
    # fixed uphill difference: acceptance probability exp(-1)
    rng = RngHandle(3)
    n = 20000
    acc = sum(mh_accept(0.0, 1.0, rng) for _ in range(n)) / n
    assert abs(acc - math.exp(-1.0)) < 0.01


def test_nan_potential_mid_chain_raises():
    def bad(value):
        return math.nan if value[0] > -math.inf else 0.0

    prior = PriorSpec("gamma", 1.0, np.ones(1))
    config = ChainConfig(beta=0.5, n_steps=10)
    with pytest.raises(PotentialError):
        run_lifted_rcar(prior, bad, config, RngHandle(4))


def test_chain_record_bookkeeping():
    prior = PriorSpec("bk", 1.0, np.ones(3))
    config = ChainConfig(beta=0.5, n_steps=100, burnin=20, thin=4)
    rec = run_lifted_rcar(prior, FLAT, config, RngHandle(5))
    assert rec.samples.shape == (20, 3)
    assert rec.accept_flags.shape == (80,)
    assert rec.sample_flags.shape == (20,)
    assert rec.acceptance_rate == pytest.approx(np.mean(rec.accept_flags))
    assert rec.config["n_steps"] == 100 and rec.config["seed"] == 5


def test_flat_likelihood_accepts_everything():
    prior = PriorSpec("gamma", 1.0, np.ones(2))
    config = ChainConfig(beta=0.5, n_steps=500)
    rec = run_lifted_rcar(prior, FLAT, config, RngHandle(6))
    assert rec.acceptance_rate == 1.0


def test_determinism_same_seed():
    prior = PriorSpec("bk", 1.0, np.ones(2))
    config = ChainConfig(beta=0.5, n_steps=300, burnin=50)
    psi = lambda v: 0.5 * float(v @ v)
    a = run_lifted_rcar(prior, psi, config, RngHandle(7, 1))
    b = run_lifted_rcar(prior, psi, config, RngHandle(7, 1))
    np.testing.assert_array_equal(a.samples, b.samples)
    np.testing.assert_array_equal(a.accept_flags, b.accept_flags)


def test_distinct_streams_decorrelate():
    prior = PriorSpec("bk", 1.0, np.ones(2))
    config = ChainConfig(beta=0.5, n_steps=300)
    a = run_lifted_rcar(prior, FLAT, config, RngHandle(8, 0))
    b = run_lifted_rcar(prior, FLAT, config, RngHandle(8, 1))
    assert not np.array_equal(a.samples, b.samples)


@pytest.mark.parametrize("runner,kind,p", [
    (run_lifted_rcar, "bk", 0.7),
    (run_lifted_rcar, "gamma", 0.7),
    (run_lifted_sarsd, "bk", 1.0),
    (run_lifted_sarsd, "gamma", 2.0),
])
def test_flat_likelihood_prior_recovery(runner, kind, p):
    prior = PriorSpec(kind, p, np.ones(2))
    config = ChainConfig(beta=0.3, n_steps=2 * 10**4, burnin=10**3, thin=5)
    rec = runner(prior, FLAT, config, RngHandle(9))
    x = rec.samples[:, 1]
    if kind == "gamma":
        pv = stats.ks_1samp(x, stats.gamma(p).cdf).pvalue
    else:
        ref = sample_bk(BKParams(p, 1.0), RngHandle(10), size=x.size)
        pv = stats.ks_2samp(x, ref).pvalue
    assert pv > 1e-3


def test_scales_applied_to_values():
    gammas = np.array([2.0, 0.5])
    prior = PriorSpec("gamma", 1.0, gammas, lam=3.0)
    config = ChainConfig(beta=0.5, n_steps=4000)
    rec = run_lifted_rcar(prior, FLAT, config, RngHandle(11))
    means = rec.samples.mean(axis=0)
    # Gamm(1,1) latents have mean 1, so value means approach lam*gamma
    np.testing.assert_allclose(means, 3.0 * gammas, rtol=0.15)


def test_sarsd_requires_integer_shape():
    prior = PriorSpec("bk", 0.5, np.ones(2))
    config = ChainConfig(beta=0.5, n_steps=10)
    with pytest.raises(ParameterDomainError):
        run_lifted_sarsd(prior, FLAT, config, RngHandle(12))


def test_generic_mh_with_reversible_kernel_targets_posterior_mean():
    # gamma prior, quadratic potential pulling toward zero
    p, sigma = 1.0, 1.0
    psi = lambda u: 2.0 * float(u @ u)
    kernel = RcarGamma(p, sigma, 0.5)
    config = ChainConfig(beta=0.5, n_steps=4 * 10**4, burnin=5000)
    rec = run_generic_mh(np.array([1.0]), kernel, psi, config, RngHandle(13))
    # oracle via quadrature of the 1D posterior exp(-u - 2u^2) on u > 0
    from scipy import integrate
    z, _ = integrate.quad(lambda u: np.exp(-u - 2 * u**2), 0, 20)
    m, _ = integrate.quad(lambda u: u * np.exp(-u - 2 * u**2), 0, 20)
    assert abs(rec.samples.mean() - m / z) < 0.02


def test_generic_mh_potential_failure_wrapped():
    calls = {"n": 0}

    def boom(u):
        calls["n"] += 1
        if calls["n"] > 1:
            raise RuntimeError("no")
        return 0.0

    kernel = RcarGamma(1.0, 1.0, 0.5)
    config = ChainConfig(beta=0.5, n_steps=5)
    with pytest.raises(PotentialError):
        run_generic_mh(np.array([1.0]), kernel, boom, config, RngHandle(14))
