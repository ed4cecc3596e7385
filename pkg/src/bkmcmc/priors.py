"""Truncated product priors over an orthonormal basis.

Supports the Haar wavelet basis on the circle (dyadic midpoint grids, flat
index k = 2^j + m) and plain Euclidean coordinates.  Grid functions live at
cell midpoints (i + 1/2)/n, matching the composite midpoint quadrature used
by the forward models; the discrete Haar system is orthonormal with respect
to the inner product (1/n) * sum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bessel_k import BKParams, sample_bk
from .mh import PriorSpec
from .rng import RngHandle


@dataclass(frozen=True)
class BasisDescriptor:
    kind: str  # 'haar' or 'euclidean'
    size: int  # grid size 2^J for haar, dimension N for euclidean

    def __post_init__(self):
        if self.kind not in ("haar", "euclidean"):
            raise ValueError(f"basis kind must be 'haar' or 'euclidean', got {self.kind!r}")
        if self.kind == "haar" and (self.size < 2 or self.size & (self.size - 1)):
            raise ValueError(f"haar grid size must be a dyadic power >= 2, got {self.size}")


def haar_eval(k: int, t):
    """Pointwise value of the k-th Haar function on [0, 1).

    r_0 = 1; r_1 = +1 on [0, 1/2], -1 on (1/2, 1); higher indices are the
    dyadic dilates r_{2^j+m}(t) = 2^{j/2} r_1(2^j t - m).
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(t >= 1):
        raise ValueError("haar_eval requires t in [0, 1)")
    if k < 0:
        raise ValueError("haar index must be nonnegative")
    if k == 0:
        out = np.ones_like(t)
    else:
        j = int(np.log2(k)) if k > 1 else 0
        m = k - (1 << j)
        s = (1 << j) * t - m
        out = np.where((s >= 0) & (s < 1), np.where(s <= 0.5, 1.0, -1.0), 0.0) * 2.0 ** (j / 2.0)
    return float(out) if out.ndim == 0 else out


def haar_synthesize(coeffs: np.ndarray, grid_size: int) -> np.ndarray:
    """Inverse fast Haar pyramid: coefficients -> midpoint grid values."""
    n = grid_size
    if n < 1 or n & (n - 1):
        raise ValueError(f"grid size must be a dyadic power, got {n}")
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.size > n:
        raise ValueError(f"need grid_size >= n_coeffs, got {n} < {coeffs.size}")
    c = np.zeros(n)
    c[: coeffs.size] = coeffs
    a = c[:1].copy()
    j = 0
    while a.size < n:
        d = (2.0 ** (j / 2.0)) * c[1 << j: 1 << (j + 1)]
        nxt = np.empty(a.size * 2)
        nxt[0::2] = a + d
        nxt[1::2] = a - d
        a = nxt
        j += 1
    return a


def haar_analyze(values: np.ndarray) -> np.ndarray:
    """Fast Haar pyramid: midpoint grid values -> coefficients."""
    a = np.asarray(values, dtype=float).copy()
    n = a.size
    if n < 1 or n & (n - 1):
        raise ValueError(f"grid size must be a dyadic power, got {n}")
    c = np.empty(n)
    j = int(np.log2(n))
    while j > 0:
        j -= 1
        even, odd = a[0::2], a[1::2]
        c[1 << j: 1 << (j + 1)] = (2.0 ** (-j / 2.0 - 1.0)) * (even - odd)
        a = 0.5 * (even + odd)
    c[0] = a[0]
    return c


def deconv_gamma_sequence(n: int) -> np.ndarray:
    """Per-mode scales: gamma_0 = gamma_1 = 1, gamma_{2^j+m} = 2^(-2j)."""
    if n < 2:
        raise ValueError("need at least two modes")
    k = np.arange(n)
    out = np.ones(n)
    j = np.floor(np.log2(np.maximum(k, 1))).astype(int)
    out[2:] = 2.0 ** (-2.0 * j[2:])
    return out


def synthesize(coeffs: np.ndarray, basis: BasisDescriptor, grid_size: int,
               gammas: np.ndarray | None = None, lam: float = 1.0, raw: bool = True) -> np.ndarray:
    """Assemble a grid function from basis coefficients.

    With ``raw=True`` (default) the coefficients are the unit-variance
    eta_k and the per-mode scales and global factor are applied here;
    otherwise they are used as-is.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    if raw:
        scale = lam * (gammas if gammas is not None else np.ones(coeffs.size))
        coeffs = scale * coeffs
    if basis.kind == "euclidean":
        if coeffs.size != grid_size:
            raise ValueError("euclidean basis requires grid_size == n_coeffs")
        return coeffs.copy()
    return haar_synthesize(coeffs, grid_size)


def sample_prior(prior: PriorSpec, basis: BasisDescriptor, grid_size: int, rng: RngHandle):
    """Draw i.i.d. mode coefficients and assemble the grid function."""
    n = prior.n_coeffs
    if prior.kind == "bk":
        eta = sample_bk(BKParams(prior.p, 1.0), rng, size=n)
    else:
        eta = rng.gen.gamma(prior.p, size=n)
    grid = synthesize(eta, basis, grid_size, gammas=prior.gammas, lam=prior.lam)
    return eta, grid


def haar_gram_deviation(grid_size: int, n_modes: int) -> float:
    """Max deviation of the discrete Gram matrix from the identity."""
    t = (np.arange(grid_size) + 0.5) / grid_size
    basis = np.stack([haar_eval(k, t) for k in range(n_modes)])
    gram = basis @ basis.T / grid_size
    return float(np.max(np.abs(gram - np.eye(n_modes))))
