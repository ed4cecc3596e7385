"""Prior-reversible and prior-preserving proposal kernels.

The beta-thinned RCAR kernel satisfies detailed balance with respect to
Gamm(p, sigma).  The exponential forward kernel preserves Exp(sigma) but is
not reversible; pairing it with its time-reversal under a Bern(1/2) switch
restores detailed balance.  A product kernel applies independent
per-coefficient kernels and inherits reversibility coordinatewise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .rng import ParameterDomainError, RngHandle


class SupportError(ValueError):
    """Kernel input outside the support of its stationary law."""


def _check_beta(beta: float):
    if not 0.0 < beta < 1.0:
        raise ParameterDomainError(f"requires beta in (0,1), got {beta}")


def propose_rcar_gamma(u, p: float, sigma: float, beta: float, rng: RngHandle):
    """v = zeta*u + w with zeta ~ Beta(p*beta, p*(1-beta)), w ~ Gamm(p*(1-beta), sigma)."""
    _check_beta(beta)
    if p <= 0 or sigma <= 0:
        raise ParameterDomainError(f"requires p, sigma > 0, got ({p}, {sigma})")
    u = np.asarray(u, dtype=float)
    if np.any(u < 0):
        raise SupportError("rcar-gamma kernel requires u >= 0")
    g = rng.gen
    zeta = g.beta(p * beta, p * (1.0 - beta), size=u.shape or None)
    w = g.gamma(p * (1.0 - beta), scale=sigma, size=u.shape or None)
    return zeta * u + w


def propose_exp_forward(u, sigma: float, beta: float, rng: RngHandle):
    """v = beta*u + zeta*w with zeta ~ Bern(1-beta), w ~ Exp(sigma)."""
    _check_beta(beta)
    if sigma <= 0:
        raise ParameterDomainError(f"requires sigma > 0, got {sigma}")
    u = np.asarray(u, dtype=float)
    if np.any(u < 0):
        raise SupportError("exp forward kernel requires u >= 0")
    g = rng.gen
    zeta = g.random(size=u.shape or None) < (1.0 - beta)
    w = g.exponential(scale=sigma, size=u.shape or None)
    return beta * u + zeta * w


def propose_exp_reverse(v, sigma: float, beta: float, rng: RngHandle):
    """u = min(v/beta, zeta/(1-beta)) with zeta ~ Exp(sigma).

    The construction is derived for sigma = 1; other scales follow by
    applying the unit kernel to v/sigma and rescaling, which the formula
    above implements directly since both branches scale linearly.
    """
    _check_beta(beta)
    if sigma <= 0:
        raise ParameterDomainError(f"requires sigma > 0, got {sigma}")
    v = np.asarray(v, dtype=float)
    if np.any(v < 0):
        raise SupportError("exp reverse kernel requires v >= 0")
    g = rng.gen
    zeta = g.exponential(scale=sigma, size=v.shape or None)
    return np.minimum(v / beta, zeta / (1.0 - beta))


@dataclass(frozen=True)
class RcarGamma:
    p: float
    sigma: float
    beta: float

    def propose(self, u, rng: RngHandle):
        return propose_rcar_gamma(u, self.p, self.sigma, self.beta, rng)


@dataclass(frozen=True)
class ExpForward:
    sigma: float
    beta: float

    def propose(self, u, rng: RngHandle):
        return propose_exp_forward(u, self.sigma, self.beta, rng)


@dataclass(frozen=True)
class ExpReverse:
    sigma: float
    beta: float

    def propose(self, u, rng: RngHandle):
        return propose_exp_reverse(u, self.sigma, self.beta, rng)


@dataclass(frozen=True)
class Symmetrized:
    """Bern(1/2) mixture of a forward kernel and its time-reversal.

    Both wrapped kernels must share (sigma, beta).
    """

    forward: object
    reverse: object

    def __post_init__(self):
        fs = getattr(self.forward, "sigma", None)
        rs = getattr(self.reverse, "sigma", None)
        fb = getattr(self.forward, "beta", None)
        rb = getattr(self.reverse, "beta", None)
        if fs is not None and rs is not None and (fs != rs or fb != rb):
            raise ParameterDomainError("symmetrized pair must share (sigma, beta)")

    def propose(self, u, rng: RngHandle):
        return propose_symmetrized(u, self.forward, self.reverse, rng)


@dataclass(frozen=True)
class Product:
    kernels: tuple

    def propose(self, coeffs, rng: RngHandle):
        return propose_product(coeffs, self.kernels, rng)


def propose_symmetrized(u, forward, reverse, rng: RngHandle):
    """With probability 1/2 propose from ``forward``, else from ``reverse``.

    Array inputs are treated as independent states and switch elementwise.
    """
    u = np.asarray(u, dtype=float)
    if u.ndim == 0:
        if rng.gen.random() < 0.5:
            return forward.propose(u, rng)
        return reverse.propose(u, rng)
    t = rng.gen.random(size=u.shape) < 0.5
    return np.where(t, forward.propose(u, rng), reverse.propose(u, rng))


def propose_product(coeffs, kernels: Sequence, rng: RngHandle):
    """Apply kernels[k] to coeffs[k] independently."""
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape[0] != len(kernels):
        raise ValueError(f"length mismatch: {coeffs.shape[0]} coeffs vs {len(kernels)} kernels")
    return np.array([k.propose(c, rng) for c, k in zip(coeffs, kernels)])


@dataclass(frozen=True)
class BalanceReport:
    sup_asymmetry: float
    tolerance: float
    n: int
    passed: bool


def detailed_balance_test(
    kernel,
    stationary_sampler,
    n: int = 10**5,
    grid: Sequence[float] = (0.5, 1.0, 2.0),
    rng: RngHandle | None = None,
) -> BalanceReport:
    """Empirical joint-CF symmetry check of detailed balance.

    Draws u from the stationary law and v from the kernel, then compares
    the empirical joint characteristic function at (s, s') against (s', s)
    over the grid.  Reversible kernels have a symmetric joint CF; the
    tolerance 4/sqrt(n) is the CLT band for the estimate.
    """
    if n < 10**5:
        raise ValueError("detailed_balance_test needs n >= 1e5 for a stable CF estimate")
    if rng is None:
        rng = RngHandle(0)
    u = np.asarray(stationary_sampler(n, rng), dtype=float)
    v = np.asarray(kernel.propose(u, rng), dtype=float)
    tol = 4.0 / np.sqrt(n)
    sup = 0.0
    grid = list(grid)
    for i, s in enumerate(grid):
        for sp in grid[i + 1:]:
            cf_uv = np.mean(np.exp(1j * (s * u + sp * v)))
            cf_vu = np.mean(np.exp(1j * (sp * u + s * v)))
            sup = max(sup, abs(cf_uv - cf_vu))
    return BalanceReport(sup_asymmetry=float(sup), tolerance=tol, n=n, passed=bool(sup < tol))
