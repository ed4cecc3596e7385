"""Seeded random variate generation.

All stochastic code in this package draws through an :class:`RngHandle`,
which wraps a numpy ``Generator`` keyed by a ``(seed, stream_id)`` pair.
Equal pairs reproduce identical variate sequences; distinct stream ids give
statistically independent streams (one stream per chain or restart).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class ParameterDomainError(ValueError):
    """A distribution parameter is outside its admissible domain."""


@dataclass
class RngHandle:
    """Owner of a reproducible random stream.

    Not safe to share across concurrent chains; spawn one handle per chain
    via a distinct ``stream_id``.
    """

    seed: int
    stream_id: int = 0
    _gen: np.random.Generator | None = field(default=None, repr=False, compare=False)

    @property
    def gen(self) -> np.random.Generator:
        if self._gen is None:
            ss = np.random.SeedSequence(entropy=int(self.seed), spawn_key=(int(self.stream_id),))
            self._gen = np.random.Generator(np.random.PCG64(ss))
        return self._gen


class LawKind(Enum):
    GAMMA = "gamma"
    EXP = "exp"
    BETA = "beta"
    BERN = "bern"
    POIS = "pois"
    UNIFORM01 = "uniform01"
    NORMAL = "normal"
    LAPLACE = "laplace"


@dataclass(frozen=True)
class ScalarLaw:
    """A parameterized scalar law; parameters are validated at construction."""

    kind: LawKind
    a: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        k, a, b = self.kind, self.a, self.b
        if k in (LawKind.GAMMA, LawKind.BETA) and (a <= 0 or b <= 0):
            raise ParameterDomainError(f"{k.value} requires positive parameters, got ({a}, {b})")
        if k in (LawKind.EXP, LawKind.POIS, LawKind.LAPLACE) and a <= 0:
            raise ParameterDomainError(f"{k.value} requires a positive parameter, got {a}")
        if k is LawKind.BERN and not 0.0 < a < 1.0:
            raise ParameterDomainError(f"bern requires p in (0,1), got {a}")
        if k is LawKind.NORMAL and b <= 0:
            raise ParameterDomainError(f"normal requires positive variance, got {b}")


def sample_gamma(p: float, sigma: float, rng: RngHandle, size=None):
    """Draw from the gamma law with shape ``p`` and scale ``sigma``.

    Valid for all ``p > 0`` including ``p < 1`` (the generator boosts a
    shape ``p + 1`` draw by a uniform power, which never yields 0 or NaN
    at double precision for the shapes used here).
    """
    if p <= 0 or sigma <= 0:
        raise ParameterDomainError(f"gamma requires p, sigma > 0, got ({p}, {sigma})")
    return rng.gen.gamma(p, scale=sigma, size=size)


def sample_beta(p: float, q: float, rng: RngHandle, size=None):
    """Draw Beta(p, q) as xi / (xi + xi') for independent gamma variates."""
    if p <= 0 or q <= 0:
        raise ParameterDomainError(f"beta requires p, q > 0, got ({p}, {q})")
    x = rng.gen.gamma(p, size=size)
    y = rng.gen.gamma(q, size=size)
    return x / (x + y)


def sample_standard(law: ScalarLaw, rng: RngHandle, size=None):
    """Draw from any :class:`ScalarLaw`."""
    g = rng.gen
    k = law.kind
    if k is LawKind.GAMMA:
        return g.gamma(law.a, scale=law.b, size=size)
    if k is LawKind.EXP:
        return g.exponential(scale=law.a, size=size)
    if k is LawKind.BETA:
        x = g.gamma(law.a, size=size)
        y = g.gamma(law.b, size=size)
        return x / (x + y)
    if k is LawKind.BERN:
        return (g.random(size=size) < law.a).astype(np.int64)
    if k is LawKind.POIS:
        return g.poisson(law.a, size=size)
    if k is LawKind.UNIFORM01:
        return g.random(size=size)
    if k is LawKind.NORMAL:
        return g.normal(law.a, np.sqrt(law.b), size=size)
    if k is LawKind.LAPLACE:
        return g.laplace(0.0, law.a, size=size)
    raise ParameterDomainError(f"unknown law kind {k}")
