import numpy as np
import pytest

from bkmcmc.forward import (DENOISE_NOISE_STD, DeconvModel, DeconvSetup,
                            LINEAR2D_DATA, LINEAR2D_G, LINEAR2D_TRUTH,
                            convolve_circle, deconv_potential, denoising_data,
                            denoising_potential, denoising_truth,
                            linear2d_potential, make_synthetic_data,
                            observe_points, step_truth_on_grid)
from bkmcmc.priors import deconv_gamma_sequence
from bkmcmc.rng import RngHandle


def test_linear2d_data_is_exact_image_of_truth():
    np.testing.assert_allclose(LINEAR2D_DATA, LINEAR2D_G @ LINEAR2D_TRUTH)
    assert linear2d_potential(LINEAR2D_TRUTH) == 0.0


def test_linear2d_potential_value():
    u = np.array([0.0, 0.0])
    expected = float(LINEAR2D_DATA @ LINEAR2D_DATA) / (2 * 0.5**2)
    assert linear2d_potential(u) == pytest.approx(expected)


def test_denoising_truth_pattern():
    u = denoising_truth(10)
    np.testing.assert_array_equal(u, [0, 0, 1, 0, 0, 1, 0, 0, 1, 0])


def test_denoising_data_noise_level():
    y = denoising_data(1000, RngHandle(0))
    resid = y - denoising_truth(1000)
    assert abs(resid.std() - DENOISE_NOISE_STD) < 0.02


def test_denoising_potential_shape_mismatch():
    with pytest.raises(ValueError):
        denoising_potential(np.ones(3), np.ones(4))


def test_denoising_potential_at_data_is_zero():
    y = denoising_data(10, RngHandle(1))
    assert denoising_potential(y, y) == 0.0


def test_convolution_preserves_mass():
    # kernel integrates to one, so the mean value is preserved
    u = step_truth_on_grid(128)
    g = convolve_circle(u, 1.0 / 16.0)
    assert abs(g.mean() - u.mean()) < 1e-12


def test_convolution_of_constant_is_constant():
    u = np.full(64, 2.5)
    g = convolve_circle(u, 1.0 / 8.0)
    np.testing.assert_allclose(g, 2.5, rtol=1e-12)


def test_convolution_smooths_the_step():
    u = step_truth_on_grid(128)
    g = convolve_circle(u, 1.0 / 16.0)
    assert np.max(np.abs(np.diff(g))) < np.max(np.abs(np.diff(u)))


def test_observe_points_linear_interpolation():
    n = 64
    mid = (np.arange(n) + 0.5) / n
    g = np.sin(2 * np.pi * mid)
    pts = np.array([0.25, 0.5, 0.73])
    np.testing.assert_allclose(observe_points(g, pts), np.sin(2 * np.pi * pts), atol=3e-3)


def test_observe_points_periodic_wrap():
    g = np.arange(8.0)
    # points near 0 interpolate between the last and first cells
    v = observe_points(g, np.array([0.0]))
    assert 0.0 <= v[0] <= 7.0


def test_setup_rejects_wide_kernel():
    with pytest.raises(ValueError):
        DeconvSetup(eps=0.3)


def test_obs_points_grid():
    s = DeconvSetup()
    pts = s.obs_points
    assert pts.size == 20
    assert pts[0] == pytest.approx(0.01) and pts[-1] == pytest.approx(0.99)


def test_model_matrix_matches_composed_map():
    setup = DeconvSetup()
    model = DeconvModel(setup, 8)
    from bkmcmc.priors import haar_synthesize
    c = RngHandle(2).gen.normal(size=8)
    direct = observe_points(convolve_circle(haar_synthesize(c, setup.grid_solver), setup.eps),
                            setup.obs_points)
    np.testing.assert_allclose(model.forward(c), direct, atol=1e-12)


def test_model_linearity():
    model = DeconvModel(DeconvSetup(), 16)
    g = RngHandle(3).gen
    c1, c2 = g.normal(size=16), g.normal(size=16)
    np.testing.assert_allclose(model.forward(0.3 * c1 - 2.0 * c2),
                               0.3 * model.forward(c1) - 2.0 * model.forward(c2), atol=1e-12)


def test_model_coefficient_count_check():
    model = DeconvModel(DeconvSetup(), 8)
    with pytest.raises(ValueError):
        model.forward(np.ones(9))


def test_deconv_potential_scaling_convention():
    setup = DeconvSetup()
    rng = RngHandle(4)
    data, _ = make_synthetic_data(setup, rng)
    eta = rng.gen.normal(size=16)
    scaled = 2.0 * deconv_gamma_sequence(16) * eta
    raw_val = deconv_potential(eta, setup, data, lam=2.0, raw=True)
    pre_val = deconv_potential(scaled, setup, data, raw=False)
    assert raw_val == pytest.approx(pre_val)


def test_synthetic_data_uses_finer_grid():
    setup = DeconvSetup()
    data, truth = make_synthetic_data(setup, RngHandle(5))
    assert truth["grid"] == setup.grid_data == 2 * setup.grid_solver
    assert data.shape == (setup.n_obs,)


def test_synthetic_data_deterministic():
    setup = DeconvSetup()
    a, _ = make_synthetic_data(setup, RngHandle(6))
    b, _ = make_synthetic_data(setup, RngHandle(6))
    np.testing.assert_array_equal(a, b)


def test_synthetic_data_noise_magnitude():
    setup = DeconvSetup()
    data, truth = make_synthetic_data(setup, RngHandle(7))
    resid = data - truth["clean"]
    assert np.all(np.abs(resid) < 5 * setup.noise_std)
    assert resid.std() > 0.0
