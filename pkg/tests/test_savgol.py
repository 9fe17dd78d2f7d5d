"""Tests for Savitzky-Golay coefficients and filtering."""

import numpy as np
import pytest
from scipy.signal import savgol_filter

from torsmooth.errors import (
    InvalidSpecError,
    NonUniformSpacingError,
    SeriesTooShortError,
)
from torsmooth.savgol import SavGolSpec, savgol_apply, savgol_coefficients
from torsmooth.series import Series

from .reference import savgol_weights_normal_equations


# ------------------------------------------------------------ coefficients

def test_classical_five_point_smooth():
    # the classic quadratic/cubic 5-point table row
    want = np.array([-3.0, 12.0, 17.0, 12.0, -3.0]) / 35.0
    for degree in (2, 3):
        got = savgol_coefficients(SavGolSpec(window=5, degree=degree, deriv=0))
        np.testing.assert_allclose(got, want, atol=1e-12)


def test_three_point_first_derivative_is_central_difference():
    got = savgol_coefficients(SavGolSpec(window=3, degree=1, deriv=1))
    np.testing.assert_allclose(got, [-0.5, 0.0, 0.5], atol=1e-14)


def test_degree_one_smooth_is_moving_average():
    got = savgol_coefficients(SavGolSpec(window=5, degree=1, deriv=0))
    np.testing.assert_allclose(got, np.full(5, 0.2), atol=1e-14)


def test_five_point_slope_weights():
    # LS line through j = -2..2: slope = sum(j y_j) / 10
    got = savgol_coefficients(SavGolSpec(window=5, degree=1, deriv=1))
    np.testing.assert_allclose(got, np.arange(-2.0, 3.0) / 10.0, atol=1e-14)


def test_five_point_second_derivative():
    # quadratic fit: y'' = 2 b2 with b2 = (sum j^2 y - 2 sum y)/14
    got = savgol_coefficients(SavGolSpec(window=5, degree=2, deriv=2))
    np.testing.assert_allclose(
        got, np.array([2.0, -1.0, -2.0, -1.0, 2.0]) / 7.0, atol=1e-13
    )


def test_coefficients_match_normal_equations():
    for window, degree, deriv in [
        (5, 2, 0), (5, 3, 1), (7, 4, 2), (9, 3, 3), (21, 5, 0),
        (99, 3, 0), (99, 3, 1), (31, 2, 2),
    ]:
        got = savgol_coefficients(SavGolSpec(window, degree, deriv))
        want = savgol_weights_normal_equations(window, degree, deriv)
        np.testing.assert_allclose(got, want, rtol=1e-8, atol=1e-12)


def test_coefficient_symmetry():
    for window, degree in [(7, 2), (11, 3), (99, 3)]:
        for deriv in range(degree + 1):
            c = savgol_coefficients(SavGolSpec(window, degree, deriv))
            sign = 1.0 if deriv % 2 == 0 else -1.0
            np.testing.assert_allclose(c, sign * c[::-1], atol=1e-12)


def test_moment_conditions():
    # applying the weights to j^k must return the k-th derivative of
    # j^k at j = 0, i.e. deriv! when k == deriv and 0 otherwise
    spec = SavGolSpec(window=11, degree=4, deriv=2)
    c = savgol_coefficients(spec)
    j = np.arange(-5.0, 6.0)
    for k in range(5):
        want = 2.0 if k == 2 else 0.0
        assert np.dot(c, j**k) == pytest.approx(want, abs=1e-9)


def test_default_spec():
    spec = SavGolSpec()
    assert (spec.window, spec.degree, spec.deriv) == (99, 3, 0)
    assert savgol_coefficients(spec).shape == (99,)


def test_spec_validation():
    with pytest.raises(InvalidSpecError):
        SavGolSpec(window=4)          # even
    with pytest.raises(InvalidSpecError):
        SavGolSpec(window=1)          # too small
    with pytest.raises(InvalidSpecError):
        SavGolSpec(window=5, degree=5)   # degree >= window
    with pytest.raises(InvalidSpecError):
        SavGolSpec(window=5, degree=-1)
    with pytest.raises(InvalidSpecError):
        SavGolSpec(window=5, degree=2, deriv=3)  # deriv > degree
    with pytest.raises(InvalidSpecError):
        SavGolSpec(window=5, degree=2, deriv=-1)


# ----------------------------------------------------------------- apply

def _uniform(n, lo=0.0, hi=1.0):
    return np.linspace(lo, hi, n)


def test_apply_reproduces_cubic_everywhere():
    xs = _uniform(50, 0.0, 5.0)
    ys = 2.0 - xs + 0.5 * xs**2 - 0.1 * xs**3
    out = savgol_apply(Series(xs, ys), SavGolSpec(window=7, degree=3))
    np.testing.assert_allclose(out.ys, ys, rtol=0, atol=1e-10)


def test_apply_cubic_first_derivative_everywhere():
    xs = _uniform(50, 0.0, 5.0)
    ys = 2.0 - xs + 0.5 * xs**2 - 0.1 * xs**3
    dy = -1.0 + xs - 0.3 * xs**2
    out = savgol_apply(Series(xs, ys), SavGolSpec(window=7, degree=3, deriv=1))
    np.testing.assert_allclose(out.ys, dy, rtol=0, atol=1e-9)


def test_apply_constant_series():
    xs = _uniform(20)
    s = Series(xs, np.full(20, 3.5))
    np.testing.assert_allclose(
        savgol_apply(s, SavGolSpec(5, 2, 0)).ys, 3.5, atol=1e-12
    )
    np.testing.assert_allclose(
        savgol_apply(s, SavGolSpec(5, 2, 1)).ys, 0.0, atol=1e-9
    )


def test_apply_sine_derivative():
    xs = _uniform(2001, 0.0, 2.0 * np.pi)
    out = savgol_apply(
        Series(xs, np.sin(xs)), SavGolSpec(window=21, degree=3, deriv=1)
    )
    np.testing.assert_allclose(out.ys, np.cos(xs), atol=1e-4)


def test_apply_matches_scipy_interp_mode():
    # scipy's mode="interp" uses the same edge treatment: one LS refit
    # per terminal window evaluated at the uncovered points
    rng = np.random.default_rng(11)
    xs = _uniform(200, 0.0, 4.0)
    ys = np.sin(3.0 * xs) + rng.normal(0.0, 0.1, xs.size)
    dx = xs[1] - xs[0]
    for window, degree, deriv in [(9, 2, 0), (15, 3, 1), (21, 4, 2)]:
        got = savgol_apply(Series(xs, ys), SavGolSpec(window, degree, deriv))
        want = savgol_filter(
            ys, window, degree, deriv=deriv, delta=dx, mode="interp"
        )
        np.testing.assert_allclose(got.ys, want, rtol=1e-7, atol=1e-9)


def test_apply_reduces_noise():
    rng = np.random.default_rng(5)
    xs = _uniform(500, 0.0, 10.0)
    truth = np.sin(xs)
    noisy = truth + rng.normal(0.0, 0.3, xs.size)
    out = savgol_apply(Series(xs, noisy), SavGolSpec(window=31, degree=3))
    rmse_raw = np.sqrt(np.mean((noisy - truth) ** 2))
    rmse_smooth = np.sqrt(np.mean((out.ys - truth) ** 2))
    assert rmse_smooth < 0.5 * rmse_raw


def test_apply_preserves_abscissas():
    xs = _uniform(40, -1.0, 1.0)
    out = savgol_apply(Series(xs, xs**2), SavGolSpec(5, 2))
    np.testing.assert_array_equal(out.xs, xs)


def test_apply_accepts_one_percent_jitter():
    rng = np.random.default_rng(2)
    step = 0.01
    xs = np.arange(100) * step
    xs[1:-1] += rng.uniform(-0.004, 0.004, 98) * step
    savgol_apply(Series(xs, np.sin(xs)), SavGolSpec(7, 2))  # must not raise


def test_apply_rejects_nonuniform_spacing():
    xs = np.array([0.0, 1.0, 2.0, 3.1, 4.0, 5.0, 6.0, 7.0, 8.0])
    with pytest.raises(NonUniformSpacingError):
        savgol_apply(Series(xs, np.ones(9)), SavGolSpec(5, 2))


def test_apply_rejects_short_series():
    xs = _uniform(5)
    with pytest.raises(SeriesTooShortError):
        savgol_apply(Series(xs, np.ones(5)), SavGolSpec(7, 2))


def test_apply_window_equal_to_length():
    xs = _uniform(7, 0.0, 3.0)
    ys = 1.0 + 2.0 * xs
    out = savgol_apply(Series(xs, ys), SavGolSpec(7, 1))
    np.testing.assert_allclose(out.ys, ys, atol=1e-10)
