"""Runners for the three numerical studies, shared by the CLI and tests.

Defaults reproduce the settings of the studies: the 2D linear problem
(beta = 0.3, 8e5 steps, burn-in 1e4), the gamma-prior denoising problem
(N in {10, 20, 40} with per-case beta), and circle deconvolution with the
Haar-mode Bessel-K prior (beta = 0.97).  Multi-restart averages use one
rng stream per restart.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .forward import (DeconvModel, DeconvSetup, denoising_data,
                      denoising_potential, linear2d_potential,
                      make_synthetic_data)
from .mh import ChainConfig, ChainRecord, PriorSpec, run_lifted_rcar, run_lifted_sarsd
from .priors import deconv_gamma_sequence
from .rng import RngHandle

DENSITY2D_STEPS = 8 * 10**5
DENSITY2D_BURNIN = 10**4
DENSITY2D_BETA = 0.3

# (algorithm, N) -> beta tuned for ~0.25 acceptance in the denoising study
DENOISE_BETAS = {
    ("rcar", 10): 0.900, ("rcar", 20): 0.950, ("rcar", 40): 0.975,
    ("sarsd", 10): 0.800, ("sarsd", 20): 0.900, ("sarsd", 40): 0.950,
}

DECONV_BETA = 0.97
DEFAULT_DATA_SEED = 11
DECONV_DATA_SEED = 2

_RUNNERS = {"rcar": run_lifted_rcar, "sarsd": run_lifted_sarsd}


def _runner(algorithm: str):
    if algorithm not in _RUNNERS:
        raise ValueError(f"algorithm must be 'rcar' or 'sarsd', got {algorithm!r}")
    return _RUNNERS[algorithm]


def run_density2d(algorithm: str = "rcar", p: float = 1.0, beta: float = DENSITY2D_BETA,
                  n_steps: int = DENSITY2D_STEPS, burnin: int = DENSITY2D_BURNIN,
                  thin: int = 1, seed: int = 0, stream_id: int = 0) -> ChainRecord:
    """Sample the 2D linear-study posterior with a BK(p, 1) x BK(p, 1) prior."""
    prior = PriorSpec("bk", p, np.ones(2))
    config = ChainConfig(beta=beta, n_steps=n_steps, burnin=burnin, thin=thin)
    return _runner(algorithm)(prior, linear2d_potential, config, RngHandle(seed, stream_id))


def run_denoise(algorithm: str = "rcar", n: int = 10, beta: float | None = None,
                p: float = 1.0, n_steps: int = 9 * 10**4, burnin: int = 5 * 10**4,
                thin: int = 1, seed: int = 0, stream_id: int = 0,
                data_seed: int = DEFAULT_DATA_SEED) -> tuple[ChainRecord, np.ndarray]:
    """Sample the denoising posterior with a Gamm(p, 1) product prior."""
    if beta is None:
        beta = DENOISE_BETAS.get((algorithm, n), 0.95)
    y = denoising_data(n, RngHandle(data_seed))
    prior = PriorSpec("gamma", p, np.ones(n))
    config = ChainConfig(beta=beta, n_steps=n_steps, burnin=burnin, thin=thin)
    rec = _runner(algorithm)(prior, lambda u: denoising_potential(u, y), config,
                             RngHandle(seed, stream_id))
    return rec, y


def denoise_beta_sweep(algorithm: str, ns=(10, 20, 40),
                       betas=(0.80, 0.85, 0.90, 0.95, 0.975),
                       p: float = 1.0, n_steps: int = 6 * 10**4, burnin: int = 4 * 10**4,
                       restarts: int = 5, seed: int = 0,
                       data_seed: int = DEFAULT_DATA_SEED) -> dict:
    """Average acceptance over restarts for each (N, beta) pair."""
    out = {}
    for n in ns:
        y = denoising_data(n, RngHandle(data_seed))
        prior = PriorSpec("gamma", p, np.ones(n))
        psi = lambda u, y=y: denoising_potential(u, y)
        for beta in betas:
            config = ChainConfig(beta=beta, n_steps=n_steps, burnin=burnin)
            rates = [
                _runner(algorithm)(prior, psi, config, RngHandle(seed, r)).acceptance_rate
                for r in range(restarts)
            ]
            out[(n, beta)] = float(np.mean(rates))
    return out


@dataclass(frozen=True)
class DeconvRun:
    """One deconvolution chain configuration."""

    n_modes: int = 32
    p: float = 2.0 / 3.0
    lam: float = 1.0
    beta: float = DECONV_BETA
    eps: float = 1.0 / 16.0
    n_steps: int = 25 * 10**4
    burnin: int = 5 * 10**4
    thin: int = 1
    seed: int = 0
    stream_id: int = 0
    data_seed: int = DECONV_DATA_SEED
    algorithm: str = "rcar"


def deconv_data(run: DeconvRun):
    setup = DeconvSetup(eps=run.eps)
    data, truth = make_synthetic_data(setup, RngHandle(run.data_seed))
    return setup, data, truth


def run_deconvolve(run: DeconvRun) -> tuple[ChainRecord, np.ndarray, dict]:
    """Sample the deconvolution posterior for one configuration."""
    setup, data, truth = deconv_data(run)
    model = DeconvModel(setup, run.n_modes)
    psi = model.potential_fn(data)
    prior = PriorSpec("bk", run.p, deconv_gamma_sequence(run.n_modes), lam=run.lam)
    config = ChainConfig(beta=run.beta, n_steps=run.n_steps, burnin=run.burnin, thin=run.thin)
    rec = _runner(run.algorithm)(prior, psi, config, RngHandle(run.seed, run.stream_id))
    return rec, data, truth


def deconv_acceptance(run: DeconvRun, restarts: int = 5) -> float:
    """Acceptance averaged over restarts on independent streams."""
    rates = []
    for r in range(restarts):
        rec, _, _ = run_deconvolve(replace(run, stream_id=r))
        rates.append(rec.acceptance_rate)
    return float(np.mean(rates))


def deconv_sweep(param: str, values, base: DeconvRun | None = None, restarts: int = 5) -> dict:
    """Acceptance sweep over 'n_modes', 'p', 'lam', or 'eps'."""
    if base is None:
        base = DeconvRun()
    if param not in ("n_modes", "p", "lam", "eps"):
        raise ValueError(f"unknown sweep parameter {param!r}")
    return {v: deconv_acceptance(replace(base, **{param: v}), restarts=restarts)
            for v in values}
