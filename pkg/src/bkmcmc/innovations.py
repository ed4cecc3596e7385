"""Exact samplers for the innovation laws of self-decomposable distributions.

A law ``L`` is self-decomposable when for every thinning level ``beta`` in
(0,1) there is an independent innovation ``L_beta`` with
``X =d beta*X' + X_beta``.  The gamma innovation admits an exact compound
Poisson representation; the exponential innovation is a Bernoulli-thinned
exponential; the Bessel-K innovation is a difference of two independent
gamma innovations.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .rng import ParameterDomainError, RngHandle


class InnovationKind(Enum):
    GAMMA = "gamma"
    EXP = "exp"
    BK = "bk"


@dataclass(frozen=True)
class InnovationLaw:
    kind: InnovationKind
    p: float
    sigma: float
    beta: float

    def __post_init__(self):
        _check(self.p, self.sigma, self.beta)


def _check(p: float, sigma: float, beta: float):
    if p <= 0 or sigma <= 0:
        raise ParameterDomainError(f"requires p, sigma > 0, got ({p}, {sigma})")
    if not 0.0 < beta < 1.0:
        raise ParameterDomainError(f"requires beta in (0,1), got {beta}")


def sample_gamma_innovation(p: float, sigma: float, beta: float, rng: RngHandle, size=None):
    """Compound Poisson draw: sum_{k<=tau} beta^{eta_k} theta_k.

    tau ~ Pois(p*log(1/beta)), eta_k ~ U(0,1), theta_k ~ Exp(sigma), all
    independent; the empty sum (tau = 0) yields 0.
    """
    _check(p, sigma, beta)
    g = rng.gen
    rate = p * np.log(1.0 / beta)
    if size is None:
        tau = g.poisson(rate)
        if tau == 0:
            return 0.0
        eta = g.random(size=tau)
        theta = g.exponential(scale=sigma, size=tau)
        return float(np.sum(beta**eta * theta))
    taus = g.poisson(rate, size=size)
    out = np.zeros(np.shape(taus))
    flat = out.ravel()
    tflat = taus.ravel()
    total = int(tflat.sum())
    eta = g.random(size=total)
    theta = g.exponential(scale=sigma, size=total)
    terms = beta**eta * theta
    idx = np.repeat(np.arange(tflat.size), tflat)
    np.add.at(flat, idx, terms)
    return out


def sample_exp_innovation(sigma: float, beta: float, rng: RngHandle, size=None):
    """Bernoulli-thinned exponential: zeta*w, zeta ~ Bern(1-beta), w ~ Exp(sigma)."""
    _check(1.0, sigma, beta)
    g = rng.gen
    zeta = g.random(size=size) < (1.0 - beta)
    w = g.exponential(scale=sigma, size=size)
    return zeta * w


def sample_bk_innovation(p: float, sigma: float, beta: float, rng: RngHandle, size=None):
    """Difference of two independent gamma innovations with scale ``sigma``."""
    _check(p, sigma, beta)
    a = sample_gamma_innovation(p, sigma, beta, rng, size=size)
    b = sample_gamma_innovation(p, sigma, beta, rng, size=size)
    return a - b


def gamma_innovation_cf(p: float, sigma: float, beta: float, s):
    """Closed-form characteristic function of the gamma innovation."""
    s = np.asarray(s, dtype=float)
    return (beta + (1.0 - beta) / (1.0 - 1j * s * sigma)) ** p


def exp_innovation_cf(sigma: float, beta: float, s):
    """Closed-form characteristic function of the exponential innovation."""
    return gamma_innovation_cf(1.0, sigma, beta, s)


def bk_innovation_cf(p: float, sigma: float, beta: float, s):
    """Closed-form characteristic function of the Bessel-K innovation."""
    s = np.asarray(s, dtype=float)
    return (beta**2 + (1.0 - beta**2) / (1.0 + (s * sigma) ** 2)) ** p
