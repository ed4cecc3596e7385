"""Metropolis-Hastings core: generic loop and the lifted RCAR/SARSD chains.

All chains use the prior-reversible acceptance probability
``min(1, exp(psi_u - psi_v))`` where ``psi`` is the likelihood potential
(negative log-density of the target with respect to the prior).  The lifted
chains track the latent gamma/exponential components that generate each
Bessel-K (or gamma) coefficient, propose every coefficient at once, and
accept or reject the whole vector with a single uniform draw.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .rng import ParameterDomainError, RngHandle

Potential = Callable[[np.ndarray], float]

_BLOCK = 1024  # steps per pre-drawn randomness block


class PotentialError(RuntimeError):
    """Potential evaluation produced NaN or failed mid-chain."""


@dataclass(frozen=True)
class ChainConfig:
    beta: float
    n_steps: int
    burnin: int = 0
    thin: int = 1

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise ParameterDomainError(f"beta must lie in (0,1), got {self.beta}")
        if self.burnin < 0 or self.burnin > self.n_steps:
            raise ValueError("burnin must lie in [0, n_steps]")
        if self.thin < 1:
            raise ValueError("thin must be >= 1")


@dataclass(frozen=True)
class PriorSpec:
    """Truncated product prior: value[l] = lam * gammas[l] * eta_l.

    kind 'bk' takes eta_l ~ BK(p, 1); kind 'gamma' takes eta_l ~ Gamm(p, 1).
    """

    kind: str
    p: float
    gammas: np.ndarray
    lam: float = 1.0

    def __post_init__(self):
        if self.kind not in ("bk", "gamma"):
            raise ValueError(f"prior kind must be 'bk' or 'gamma', got {self.kind!r}")
        if self.p <= 0 or self.lam <= 0:
            raise ParameterDomainError("prior requires p, lam > 0")
        object.__setattr__(self, "gammas", np.asarray(self.gammas, dtype=float))
        if np.any(self.gammas <= 0):
            raise ParameterDomainError("all per-mode scales must be positive")

    @property
    def n_coeffs(self) -> int:
        return self.gammas.size


@dataclass
class LiftedState:
    """Latent components (n_components x n_coeffs) plus the assembled value."""

    components: np.ndarray
    value: np.ndarray


@dataclass
class ChainRecord:
    samples: np.ndarray
    accept_flags: np.ndarray
    config: dict
    acceptance_rate: float | None = None
    sample_flags: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.acceptance_rate is None and self.accept_flags.size:
            self.acceptance_rate = float(np.mean(self.accept_flags))


def mh_accept(psi_u: float, psi_v: float, rng: RngHandle) -> bool:
    """Accept with probability min(1, exp(psi_u - psi_v)).

    A +inf proposal potential always rejects; NaN is a hard error.  One
    uniform is consumed per call regardless of the outcome.
    """
    if math.isnan(psi_u) or math.isnan(psi_v):
        raise PotentialError("NaN potential in acceptance test")
    logu = np.log(rng.gen.random())
    if psi_v == math.inf:
        return False
    return bool(logu < psi_u - psi_v)


def _assemble(kind: str, comps: np.ndarray, scale: np.ndarray) -> np.ndarray:
    if kind == "bk":
        half = comps.shape[0] // 2
        return scale * (comps[:half].sum(axis=0) - comps[half:].sum(axis=0))
    return scale * comps.sum(axis=0)


def run_generic_mh(initial, kernel, psi: Potential, config: ChainConfig, rng: RngHandle) -> ChainRecord:
    """Plain MH with an arbitrary prior-reversible proposal kernel."""
    u = np.atleast_1d(np.asarray(initial, dtype=float))
    psi_u = float(psi(u))
    if math.isnan(psi_u):
        raise PotentialError("NaN potential at initial state")
    kept = (config.n_steps - config.burnin) // config.thin
    samples = np.empty((kept, u.size))
    sample_flags = np.empty(kept, dtype=bool)
    flags = np.empty(config.n_steps - config.burnin, dtype=bool)
    ks = 0
    for j in range(1, config.n_steps + 1):
        v = np.atleast_1d(np.asarray(kernel.propose(u if u.size > 1 else u[0], rng), dtype=float))
        try:
            psi_v = float(psi(v))
        except Exception as exc:
            raise PotentialError(f"potential evaluation failed at step {j}") from exc
        if math.isnan(psi_v):
            raise PotentialError(f"NaN potential at step {j}")
        acc = mh_accept(psi_u, psi_v, rng)
        if acc:
            u, psi_u = v, psi_v
        if j > config.burnin:
            i = j - config.burnin - 1
            flags[i] = acc
            if (i + 1) % config.thin == 0:
                samples[ks] = u
                sample_flags[ks] = acc
                ks += 1
    cfg = {"beta": config.beta, "n_steps": config.n_steps, "burnin": config.burnin,
           "thin": config.thin, "seed": rng.seed, "stream_id": rng.stream_id}
    return ChainRecord(samples=samples[:ks], accept_flags=flags, config=cfg,
                       acceptance_rate=float(np.mean(flags)) if flags.size else None,
                       sample_flags=sample_flags[:ks])


def run_lifted_rcar(prior: PriorSpec, psi: Potential, config: ChainConfig, rng: RngHandle) -> ChainRecord:
    """Lifted RCAR chain for BK or gamma product priors.

    BK priors track two Gamm(p, 1) components per coefficient, gamma priors
    one; each component is proposed with the beta-thinned RCAR kernel and
    the whole coefficient vector is accepted or rejected at once.
    Initialization is an exact prior draw.
    """
    g = rng.gen
    p, beta = prior.p, config.beta
    n = prior.n_coeffs
    ncomp = 2 if prior.kind == "bk" else 1
    scale = prior.lam * prior.gammas

    u = g.gamma(p, size=(ncomp, n))
    value = _assemble(prior.kind, u, scale)
    psi_u = float(psi(value))
    if math.isnan(psi_u):
        raise PotentialError("NaN potential at initial state")

    a, b = p * beta, p * (1.0 - beta)
    return _drive_chain(
        config, rng, u, value, psi_u, psi, prior, scale,
        draw_block=lambda k: (g.beta(a, b, size=(k, ncomp, n)),
                              g.gamma(b, size=(k, ncomp, n)),
                              np.log(g.random(size=k))),
        step=lambda u_, blk, j: blk[0][j] * u_ + blk[1][j],
    )


def run_lifted_sarsd(prior: PriorSpec, psi: Potential, config: ChainConfig, rng: RngHandle) -> ChainRecord:
    """Lifted SARSD chain for BK or gamma product priors with integer p.

    Tracks 2p (BK) or p (gamma) Exp(1) components per coefficient.  Each
    step draws one global Bern(1/2) switch and moves every component either
    forward (beta*u + zeta*w) or backward (min(u/beta, w/(1-beta))).
    """
    p_int = prior.p
    if p_int != int(p_int):
        raise ParameterDomainError(
            f"SARSD requires integer shape p (reverse kernel only known for "
            f"exponential components), got p = {prior.p}")
    p_int = int(p_int)
    g = rng.gen
    beta = config.beta
    n = prior.n_coeffs
    ncomp = 2 * p_int if prior.kind == "bk" else p_int
    scale = prior.lam * prior.gammas

    u = g.exponential(size=(ncomp, n))
    value = _assemble(prior.kind, u, scale)
    psi_u = float(psi(value))
    if math.isnan(psi_u):
        raise PotentialError("NaN potential at initial state")

    def draw_block(k):
        t = g.random(size=k) < 0.5
        w = g.exponential(size=(k, ncomp, n))
        zeta = g.random(size=(k, ncomp, n)) < (1.0 - beta)
        logu = np.log(g.random(size=k))
        return (t, w, zeta, logu)

    def step(u_, blk, j):
        t, w, zeta, _ = blk
        if t[j]:
            return beta * u_ + zeta[j] * w[j]
        return np.minimum(u_ / beta, w[j] / (1.0 - beta))

    return _drive_chain(config, rng, u, value, psi_u, psi, prior, scale,
                        draw_block=draw_block, step=step)


def _drive_chain(config, rng, u, value, psi_u, psi, prior, scale, draw_block, step):
    """Shared accept/reject driver; randomness is pre-drawn in blocks."""
    kept = (config.n_steps - config.burnin) // config.thin
    samples = np.empty((kept, prior.n_coeffs))
    sample_flags = np.empty(kept, dtype=bool)
    flags = np.empty(config.n_steps - config.burnin, dtype=bool)
    ks = 0
    j = 0
    while j < config.n_steps:
        k = min(_BLOCK, config.n_steps - j)
        blk = draw_block(k)
        logu = blk[-1]
        for i in range(k):
            v = step(u, blk, i)
            vvalue = _assemble(prior.kind, v, scale)
            psi_v = float(psi(vvalue))
            if math.isnan(psi_v):
                raise PotentialError(f"NaN potential at step {j + i + 1}")
            acc = logu[i] < psi_u - psi_v
            if acc:
                u, value, psi_u = v, vvalue, psi_v
            sj = j + i + 1
            if sj > config.burnin:
                fi = sj - config.burnin - 1
                flags[fi] = acc
                if (fi + 1) % config.thin == 0:
                    samples[ks] = value
                    sample_flags[ks] = acc
                    ks += 1
        j += k
    cfg = {"beta": config.beta, "p": prior.p, "kind": prior.kind, "lam": prior.lam,
           "n_coeffs": prior.n_coeffs, "n_steps": config.n_steps, "burnin": config.burnin,
           "thin": config.thin, "seed": rng.seed, "stream_id": rng.stream_id}
    return ChainRecord(samples=samples[:ks], accept_flags=flags, config=cfg,
                       acceptance_rate=float(np.mean(flags)) if flags.size else None,
                       sample_flags=sample_flags[:ks])
