import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fastdeblur.errors import (
    DegenerateGcvError,
    DimensionError,
    IncompatibleSmootherError,
    ParameterError,
)
from fastdeblur.operators import BoundaryCondition, build_operator
from fastdeblur.oracle import dense_blur_matrix, dense_laplacian, dense_tikhonov
from fastdeblur.psf import Psf, gaussian_psf, identity_psf, motion_psf, reblur_psf
from fastdeblur.regularization import (
    MU_COUNT,
    MU_RANGE,
    SmoothingOperator,
    filter_factors,
    gcv_curve,
    gcv_select,
    gcv_value,
    restore,
    rre,
    rre_curve,
    smoothing_eigenvalues,
    tikhonov_solve,
)

BCS = [bc.value for bc in BoundaryCondition]
RNG = np.random.default_rng(23)
TENT = Psf([0.25, 0.5, 0.25])
MUS = np.logspace(np.log10(MU_RANGE[0]), np.log10(MU_RANGE[1]), MU_COUNT)


def rel(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)


def psf_for(bc, m=2, rng=RNG):
    w = rng.random(2 * m + 1) + 0.05
    if BoundaryCondition(bc).needs_symmetric_psf:
        w = w + w[::-1]
    return Psf(w, normalize=True)


def normal_residual(op, lap, f, g, mu):
    """``||A(|z|^2 + mu |s|^2) f - A(conj z) g|| / ||g||`` in the spectral domain."""
    d, s = op.eigenvalues, lap.eigenvalues
    lhs = op.forward_transform((np.abs(d) ** 2 + mu * np.abs(s) ** 2) * op.inverse_transform(f))
    rhs = op.forward_transform(np.conj(d) * op.inverse_transform(g))
    return np.linalg.norm(lhs - rhs) / np.linalg.norm(g)


def test_smoother_examples():
    op = build_operator(TENT, 9, "antireflective")
    np.testing.assert_array_equal(smoothing_eigenvalues("identity", op).eigenvalues, np.ones(9))
    s = smoothing_eigenvalues("laplacian", op).eigenvalues
    assert s[0] == 0.0 and s[-1] == 0.0
    np.testing.assert_allclose(s, 2 - 2 * np.cos(op.nodes), atol=1e-15)
    op = build_operator(TENT, 4, "periodic")
    assert smoothing_eigenvalues("laplacian", op).eigenvalues[2] == pytest.approx(4.0, abs=1e-15)


def test_joint_null_space_rejected():
    # the tent vanishes at node pi; a smoother that also vanishes there is rejected
    op = build_operator(TENT, 4, "periodic")

    class Fake:
        eigenvalues = op.eigenvalues

        def laplacian_eigenvalues(self):
            return np.array([0.0, 2.0, 0.0, 2.0])

    with pytest.raises(IncompatibleSmootherError):
        smoothing_eigenvalues("laplacian", Fake())
    with pytest.raises(ValueError):
        smoothing_eigenvalues("gradient", op)


def test_filter_factors_invariants():
    phi = filter_factors([1.0, 0.5, 0.0, 2.0], [0.0, 1.0, 1.0, 1.0], 0.1).phi
    np.testing.assert_allclose(phi, [1.0, 0.25 / 0.35, 0.0, 4 / 4.1])
    assert filter_factors([0.0], [0.0], 1.0).phi[0] == 0.0


@settings(max_examples=1000, deadline=None)
@given(st.complex_numbers(max_magnitude=10, allow_nan=False),
       st.floats(0, 10), st.floats(1e-12, 1e3))
def test_property_filter_in_unit_interval(d, s, mu):
    phi = filter_factors([d], [s], mu).phi[0]
    assert 0.0 <= phi <= 1.0


def test_identity_psf_scalar_filter():
    op = build_operator(identity_psf(), 16, "reflective")
    lap = smoothing_eigenvalues("identity", op)
    g = RNG.standard_normal(16)
    np.testing.assert_allclose(tikhonov_solve(op, lap, g, 0.3), g / 1.3, atol=1e-14)


@pytest.mark.parametrize("bc", BCS)
def test_small_mu_approaches_inverse(bc):
    op = build_operator(gaussian_psf(0.6, m=1), 32, bc)
    lap = smoothing_eigenvalues("identity", op)
    g = RNG.standard_normal(32)
    exact = np.real(op.forward_transform(op.inverse_transform(g) / op.eigenvalues))
    assert rel(tikhonov_solve(op, lap, g, 1e-14), exact) <= 1e-6


@pytest.mark.parametrize("bc", BCS)
@pytest.mark.parametrize("smoother", ["identity", "laplacian"])
def test_matches_dense_tikhonov(bc, smoother):
    n = 64
    psf = psf_for(bc)
    op = build_operator(psf, n, bc)
    lap = smoothing_eigenvalues(smoother, op)
    a = dense_blur_matrix(psf, n, bc)
    a_re = dense_blur_matrix(reblur_psf(psf), n, bc)
    l_mat = dense_laplacian(bc, n) if smoother == "laplacian" else np.eye(n)
    g = RNG.standard_normal(n)
    expected = dense_tikhonov(a, a_re, l_mat, g, 1e-3)
    got = tikhonov_solve(op, lap, g, 1e-3, keep_complex=True)
    assert rel(got, expected) <= 1e-9


@pytest.mark.parametrize("bc", BCS)
def test_dense_normal_equation_residual(bc):
    n = 64
    psf = psf_for(bc)
    op = build_operator(psf, n, bc)
    lap = smoothing_eigenvalues("laplacian", op)
    g = RNG.standard_normal(n)
    mu = 0.02
    f = tikhonov_solve(op, lap, g, mu, keep_complex=True)
    a = dense_blur_matrix(psf, n, bc)
    a_re = dense_blur_matrix(reblur_psf(psf), n, bc)
    l_mat = dense_laplacian(bc, n)
    residual = (a_re @ a + mu * l_mat @ l_mat) @ f - a_re @ g
    assert np.linalg.norm(residual) <= 1e-10 * np.linalg.norm(g)
    assert normal_residual(op, lap, f, g, mu) <= 1e-10


def test_norm_nonincreasing_in_mu():
    op = build_operator(gaussian_psf(2.0), 80, "hoc-cosine")
    lap = smoothing_eigenvalues("identity", op)
    g = RNG.standard_normal(80)
    norms = [np.linalg.norm(tikhonov_solve(op, lap, g, mu)) for mu in np.logspace(-8, 1, 40)]
    assert np.all(np.diff(norms) <= 1e-12 * norms[0])


@pytest.mark.parametrize("bc", ["antireflective", "hoc-cosine", "hoc-fourier"])
def test_boundary_modes_pass_through(bc):
    op = build_operator(psf_for(bc), 30, bc)
    lap = smoothing_eigenvalues("laplacian", op)
    g = RNG.standard_normal(30)
    g_hat = op.inverse_transform(g)
    for mu in (1e-6, 1.0, 1e4):
        f_hat = op.inverse_transform(tikhonov_solve(op, lap, g, mu, keep_complex=True))
        np.testing.assert_allclose(f_hat[[0, -1]], g_hat[[0, -1]], atol=1e-12)


def test_tikhonov_validation():
    op = build_operator(TENT, 10, "reflective")
    lap = smoothing_eigenvalues("identity", op)
    for mu in (0.0, -1.0, np.nan):
        with pytest.raises(ParameterError):
            tikhonov_solve(op, lap, np.ones(10), mu)
    with pytest.raises(DimensionError):
        tikhonov_solve(op, lap, np.ones(11), 1.0)


def test_gcv_zero_data():
    op = build_operator(TENT, 20, "hoc-cosine")
    lap = smoothing_eigenvalues("laplacian", op)
    assert all(gcv_value(op, lap, np.zeros(20), mu) == 0.0 for mu in (1e-6, 1.0))


def test_gcv_constant_for_identity_and_tie_break():
    n = 16
    op = build_operator(identity_psf(), n, "reflective")
    lap = smoothing_eigenvalues("identity", op)
    g = RNG.standard_normal(n)
    expected = np.linalg.norm(g) ** 2 / n ** 2
    values = gcv_curve(op, lap, g, MUS)
    assert np.max(np.abs(values - expected)) <= 1e-12 * expected
    mu, curve = gcv_select(op, lap, g)
    assert mu == pytest.approx(np.sqrt(MU_RANGE[0] * MU_RANGE[1]), rel=1e-12)
    assert curve.shape == (MU_COUNT, 2)


def test_gcv_matches_definition():
    op = build_operator(motion_psf(3), 24, "hoc-fourier")
    lap = smoothing_eigenvalues("laplacian", op)
    g = RNG.standard_normal(24)
    mu = 0.05
    d, s = op.eigenvalues, lap.eigenvalues
    sigma = np.abs(s) ** 2 / (np.abs(d) ** 2 + mu * np.abs(s) ** 2)
    g_hat = op.inverse_transform(g)
    expected = np.sum(sigma ** 2 * np.abs(g_hat) ** 2) / np.sum(sigma) ** 2
    assert gcv_value(op, lap, g, mu) == pytest.approx(expected, rel=1e-13)


def test_gcv_scaling_keeps_argmin():
    op = build_operator(gaussian_psf(2.0), 64, "hoc-cosine")
    lap = smoothing_eigenvalues("laplacian", op)
    g = RNG.standard_normal(64)
    base = gcv_curve(op, lap, g, MUS)
    scaled = gcv_curve(op, lap, 7.5 * g, MUS)
    np.testing.assert_allclose(scaled, 7.5 ** 2 * base, rtol=1e-12)
    assert np.argmin(scaled) == np.argmin(base)


def test_gcv_degenerate_smoother():
    op = build_operator(TENT, 10, "reflective")
    lap = SmoothingOperator("laplacian", np.zeros(10))
    with pytest.raises(DegenerateGcvError):
        gcv_value(op, lap, np.ones(10), 1.0)


def _noisy_problem(bc, n=128, seed=0):
    x = np.linspace(0, 1, n)
    truth = 1 + x + 0.5 * np.sin(5 * x) + np.exp(-((x - 0.6) / 0.05) ** 2)
    op = build_operator(gaussian_psf(2.0), n, bc)
    g = op.apply(truth)
    g = g + 1e-3 * np.linalg.norm(g) / np.sqrt(n) * np.random.default_rng(seed).standard_normal(n)
    return op, g, truth


@pytest.mark.parametrize("bc", ["hoc-cosine", "hoc-fourier"])
def test_gcv_error_close_to_best(bc):
    op, g, truth = _noisy_problem(bc)
    lap = smoothing_eigenvalues("laplacian", op)
    mu, _ = gcv_select(op, lap, g)
    best = rre_curve(op, lap, g, truth, MUS).min()
    assert rre(truth, tikhonov_solve(op, lap, g, mu)) <= 1.5 * best


def test_gcv_zoom_is_stable():
    op, g, _ = _noisy_problem("hoc-cosine")
    lap = smoothing_eigenvalues("laplacian", op)
    mu, _ = gcv_select(op, lap, g)
    zoomed, _ = gcv_select(op, lap, g, lo=mu / 10, hi=mu * 10)
    assert abs(zoomed / mu - 1) <= 5e-3


def test_gcv_search_validation():
    op = build_operator(TENT, 10, "reflective")
    lap = smoothing_eigenvalues("identity", op)
    g = np.ones(10)
    with pytest.raises(ParameterError):
        gcv_select(op, lap, g, lo=1.0, hi=0.5)
    with pytest.raises(ParameterError):
        gcv_select(op, lap, g, count=1)
    with pytest.raises(ParameterError):
        gcv_curve(op, lap, g, [1.0, 0.0])


def test_rre_examples():
    t = np.array([1.0, -2.0, 3.0])
    assert rre(t, t) == 0.0
    assert rre(t, np.zeros(3)) == 1.0
    assert rre(t, 2 * t) == 1.0
    with pytest.raises(ParameterError):
        rre(np.zeros(3), t)
    with pytest.raises(DimensionError):
        rre(t, t[:2])


def test_restore_reports():
    op, g, truth = _noisy_problem("hoc-fourier")
    report = restore(op, g, smoother="laplacian", truth=truth)
    assert report.mu_source == "gcv"
    assert report.gcv_curve.shape == (MU_COUNT, 2)
    assert report.rre == pytest.approx(rre(truth, report.restored))
    assert report.restored.dtype == np.float64
    assert not report.imag_flagged
    fixed = restore(op, g, mu=0.01)
    assert fixed.mu_source == "fixed" and fixed.mu_used == 0.01
    assert fixed.rre is None and fixed.gcv_curve is None
    with pytest.raises(ParameterError):
        restore(op, g, mu="lcurve")
