"""Forward maps and Gaussian likelihood potentials for the three studies.

All noise covariances are diagonal, so every potential is a weighted
least-squares misfit (1/(2 sigma^2)) * ||G(u) - y||^2.  The deconvolution
forward map is linear in the mode coefficients and is assembled once as a
dense observation matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .priors import BasisDescriptor, deconv_gamma_sequence, synthesize
from .rng import RngHandle


@dataclass(frozen=True)
class GaussianLikelihood:
    forward: Callable[[np.ndarray], np.ndarray]
    data: np.ndarray
    noise_std: float

    def potential(self, u: np.ndarray) -> float:
        r = self.forward(u) - self.data
        return float(r @ r) / (2.0 * self.noise_std**2)


# --- 2D linear study -------------------------------------------------------

LINEAR2D_G = np.array([[1.0, 0.5], [0.0, 1.0]])
LINEAR2D_TRUTH = np.array([1.5, 0.5])
LINEAR2D_NOISE_STD = 0.5
LINEAR2D_DATA = LINEAR2D_G @ LINEAR2D_TRUTH  # exact data, no added noise


def linear2d_potential(u) -> float:
    """Misfit for the 2x2 linear model with exact data."""
    r = LINEAR2D_G @ np.asarray(u, dtype=float) - LINEAR2D_DATA
    return float(r @ r) / (2.0 * LINEAR2D_NOISE_STD**2)


# --- denoising study -------------------------------------------------------

DENOISE_NOISE_STD = 0.25


def denoising_truth(n: int) -> np.ndarray:
    """Sparse truth vector: every third element is one."""
    u = np.zeros(n)
    u[2::3] = 1.0
    return u


def denoising_data(n: int, rng: RngHandle) -> np.ndarray:
    """Noisy observation of the truth, sigma = 1/4."""
    return denoising_truth(n) + DENOISE_NOISE_STD * rng.gen.normal(size=n)


def denoising_potential(u, y) -> float:
    u = np.asarray(u, dtype=float)
    y = np.asarray(y, dtype=float)
    if u.shape != y.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {y.shape}")
    r = u - y
    return float(r @ r) / (2.0 * DENOISE_NOISE_STD**2)


# --- circle deconvolution study -------------------------------------------

@dataclass(frozen=True)
class DeconvSetup:
    eps: float = 1.0 / 16.0
    grid_solver: int = 128
    grid_data: int = 256
    n_obs: int = 20
    obs_lo: float = 0.01
    obs_hi: float = 0.99
    noise_std: float = 0.05

    def __post_init__(self):
        if self.eps > 0.25:
            raise ValueError("kernel width must satisfy eps <= 1/4 on the circle")

    @property
    def obs_points(self) -> np.ndarray:
        return np.linspace(self.obs_lo, self.obs_hi, self.n_obs)


def _circle_dist(a, b):
    d = np.abs(a - b) % 1.0
    return np.minimum(d, 1.0 - d)


def _triangle_kernel(d, eps: float):
    return np.where(np.abs(d) <= eps, (1.0 - np.abs(d) / eps) / eps, 0.0)


@lru_cache(maxsize=8)
def _conv_matrix(n: int, eps: float) -> np.ndarray:
    mid = (np.arange(n) + 0.5) / n
    d = _circle_dist(mid[:, None], mid[None, :])
    return _triangle_kernel(d, eps) / n


def convolve_circle(u: np.ndarray, eps: float) -> np.ndarray:
    """Midpoint-rule circular convolution with the width-eps triangle kernel."""
    u = np.asarray(u, dtype=float)
    return _conv_matrix(u.size, eps) @ u


def observe_points(g: np.ndarray, pts) -> np.ndarray:
    """Periodic linear interpolation of a midpoint grid function."""
    g = np.asarray(g, dtype=float)
    pts = np.asarray(pts, dtype=float)
    n = g.size
    x = pts * n - 0.5
    i0 = np.floor(x).astype(int)
    frac = x - i0
    return (1.0 - frac) * g[i0 % n] + frac * g[(i0 + 1) % n]


def step_truth_on_grid(n: int) -> np.ndarray:
    """The unit step on [1/4, 3/4] sampled at grid midpoints."""
    t = (np.arange(n) + 0.5) / n
    return ((t >= 0.25) & (t <= 0.75)).astype(float)


def _obs_matrix(n: int, pts: np.ndarray) -> np.ndarray:
    m = np.zeros((pts.size, n))
    x = pts * n - 0.5
    i0 = np.floor(x).astype(int)
    frac = x - i0
    for r in range(pts.size):
        m[r, i0[r] % n] += 1.0 - frac[r]
        m[r, (i0[r] + 1) % n] += frac[r]
    return m


@dataclass
class DeconvModel:
    """Linear observation operator for the deconvolution posterior.

    Maps wavelet coefficients c (length N, the function's own coefficients)
    through synthesis on the solver grid, circular convolution, and
    pointwise observation; the whole map is one dense (n_obs x N) matrix.
    """

    setup: DeconvSetup
    n_modes: int
    matrix: np.ndarray = field(init=False)

    def __post_init__(self):
        n = self.setup.grid_solver
        if self.n_modes > n:
            raise ValueError("more modes than solver grid cells")
        basis = BasisDescriptor("haar", n)
        cols = []
        for k in range(self.n_modes):
            e = np.zeros(self.n_modes)
            e[k] = 1.0
            grid = synthesize(e, basis, n, raw=False)
            cols.append(observe_points(convolve_circle(grid, self.setup.eps), self.setup.obs_points))
        self.matrix = np.array(cols).T

    def forward(self, coeffs: np.ndarray) -> np.ndarray:
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.size != self.n_modes:
            raise ValueError(f"expected {self.n_modes} coefficients, got {coeffs.size}")
        return self.matrix @ coeffs

    def potential_fn(self, data: np.ndarray) -> Callable[[np.ndarray], float]:
        """Misfit as a function of the scaled coefficient vector lam*gamma*eta."""
        inv = 1.0 / (2.0 * self.setup.noise_std**2)
        a, y = self.matrix, np.asarray(data, dtype=float)

        def psi(value: np.ndarray) -> float:
            r = a @ value - y
            return float(r @ r) * inv

        return psi


def deconv_potential(coeffs, setup: DeconvSetup, data, lam: float = 1.0, raw: bool = True) -> float:
    """Potential of a coefficient vector under the solver-grid forward map.

    With ``raw=True`` the coefficients are unit-variance eta and the prior
    scales are applied here.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    if raw:
        coeffs = lam * deconv_gamma_sequence(coeffs.size) * coeffs
    model = DeconvModel(setup, coeffs.size)
    return model.potential_fn(data)(coeffs)


def make_synthetic_data(setup: DeconvSetup, rng: RngHandle):
    """Observe the step truth on the finer data grid and add noise.

    The data mesh is one dyadic refinement above the solver mesh so the
    inversion never reuses its own discretization of the truth.
    """
    n = setup.grid_data
    u0 = step_truth_on_grid(n)
    smooth = convolve_circle(u0, setup.eps)
    clean = observe_points(smooth, setup.obs_points)
    noise = setup.noise_std * rng.gen.normal(size=clean.size)
    data = clean + noise
    truth = {
        "grid": n,
        "u0": u0,
        "clean": clean,
        "seed": rng.seed,
        "stream_id": rng.stream_id,
        "eps": setup.eps,
        "noise_std": setup.noise_std,
    }
    return data, truth
