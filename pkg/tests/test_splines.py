"""Tests for the spline constructions and evaluator."""

import numpy as np
import pytest
from scipy.interpolate import CubicSpline, PchipInterpolator

from torsmooth.errors import InvalidKnotsError, TooFewPointsError
from torsmooth.loess import LoessSpec, loess_smooth
from torsmooth.polyfit import wls_polyfit
from torsmooth.series import Series
from torsmooth.splines import (
    PiecewisePoly,
    SmoothParam,
    bspline_basis,
    clamped_cubic,
    natural_cubic,
    pchip,
    smoothing_spline,
)
from torsmooth.splines import eval as peval

from .reference import bspline_basis_recursive, fritsch_carlson_slopes


def _hump():
    return Series([0.0, 1.0, 2.0], [0.0, 1.0, 0.0])


# -------------------------------------------------------- PiecewisePoly

def test_poly_validation():
    with pytest.raises(ValueError):
        PiecewisePoly(np.array([0.0, 1.0]), np.zeros((2, 4)))  # row count
    with pytest.raises(ValueError):
        PiecewisePoly(np.array([1.0, 0.0]), np.zeros((1, 4)))  # unsorted
    with pytest.raises(ValueError):
        # pieces that do not meet: first piece ends at 1, next starts at 5
        PiecewisePoly(
            np.array([0.0, 1.0, 2.0]),
            np.array([[0.0, 1.0, 0.0, 0.0], [5.0, 0.0, 0.0, 0.0]]),
        )


def test_poly_arrays_frozen():
    pp = natural_cubic(_hump())
    with pytest.raises(ValueError):
        pp.knots[0] = 99.0
    with pytest.raises(ValueError):
        pp.coeffs[0, 0] = 99.0


def test_smooth_param_validation():
    SmoothParam(0.0)
    with pytest.raises(ValueError):
        SmoothParam(-1.0)
    with pytest.raises(ValueError):
        SmoothParam(np.inf)
    with pytest.raises(ValueError):
        SmoothParam(np.nan)


# ------------------------------------------------------------- natural

def test_natural_two_points_is_chord():
    pp = natural_cubic(Series([0.0, 1.0], [0.0, 1.0]))
    np.testing.assert_allclose(pp.coeffs, [[0.0, 1.0, 0.0, 0.0]], atol=1e-14)
    assert peval(pp, 0.5) == pytest.approx(0.5)
    assert peval(pp, 0.5, deriv=2) == pytest.approx(0.0, abs=1e-12)


def test_natural_linear_data_zero_curvature():
    xs = np.linspace(0.0, 7.0, 12)
    pp = natural_cubic(Series(xs, 2.0 * xs - 1.0))
    np.testing.assert_allclose(pp.coeffs[:, 2], 0.0, atol=1e-10)
    np.testing.assert_allclose(pp.coeffs[:, 3], 0.0, atol=1e-10)


def test_natural_hump_hand_solution():
    # one interior unknown: (2/3) M1 = -2 so M1 = -3, and piece 1 is
    # y = 1.5 x - 0.5 x^3
    pp = natural_cubic(_hump())
    np.testing.assert_allclose(
        pp.coeffs[0], [0.0, 1.5, 0.0, -0.5], atol=1e-12
    )
    assert peval(pp, 0.5) == pytest.approx(0.6875, abs=1e-12)
    assert peval(pp, 0.0, deriv=2) == pytest.approx(0.0, abs=1e-12)
    assert peval(pp, 2.0, deriv=2) == pytest.approx(0.0, abs=1e-12)


def test_natural_linear_extrapolation():
    pp = natural_cubic(_hump())
    # end slopes are +-1.5; outside the data the spline is a line
    assert peval(pp, -1.0) == pytest.approx(-1.5, abs=1e-12)
    assert peval(pp, 3.0) == pytest.approx(-1.5, abs=1e-12)
    assert peval(pp, -5.0, deriv=1) == pytest.approx(1.5, abs=1e-12)
    assert peval(pp, 9.0, deriv=1) == pytest.approx(-1.5, abs=1e-12)
    assert peval(pp, -5.0, deriv=2) == 0.0
    assert peval(pp, 9.0, deriv=2) == 0.0


def test_natural_matches_scipy():
    rng = np.random.default_rng(31)
    xs = np.sort(rng.uniform(0.0, 10.0, 25))
    ys = rng.normal(0.0, 2.0, 25)
    pp = natural_cubic(Series(xs, ys))
    ref = CubicSpline(xs, ys, bc_type="natural")
    grid = np.linspace(xs[0], xs[-1], 500)
    np.testing.assert_allclose(peval(pp, grid), ref(grid), rtol=1e-9, atol=1e-9)
    np.testing.assert_allclose(
        peval(pp, grid, deriv=2), ref(grid, 2), rtol=1e-7, atol=1e-7
    )


# ------------------------------------------------------------- clamped

def test_clamped_chord():
    pp = clamped_cubic(Series([0.0, 1.0], [0.0, 1.0]), 1.0, 1.0)
    grid = np.linspace(0.0, 1.0, 20)
    np.testing.assert_allclose(peval(pp, grid), grid, atol=1e-12)


def test_clamped_reproduces_quadratic():
    xs = np.array([0.0, 1.0, 2.0])
    pp = clamped_cubic(Series(xs, xs**2), 0.0, 4.0)
    grid = np.linspace(0.0, 2.0, 50)
    np.testing.assert_allclose(peval(pp, grid), grid**2, atol=1e-10)


def test_clamped_hump_hand_solution():
    # d0 = dn = 0 on the hump gives M = [6, -6, 6]; both half-interval
    # values are 0.5 and the end slopes are exactly the clamped ones
    pp = clamped_cubic(_hump(), 0.0, 0.0)
    assert peval(pp, 0.5) == pytest.approx(0.5, abs=1e-12)
    assert peval(pp, 1.5) == pytest.approx(0.5, abs=1e-12)
    assert peval(pp, 0.0, deriv=1) == pytest.approx(0.0, abs=1e-12)
    assert peval(pp, 2.0, deriv=1) == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(pp.coeffs[0], [0.0, 0.0, 3.0, -2.0], atol=1e-12)
    # clamped splines keep the boundary cubic outside the data
    assert peval(pp, -1.0) == pytest.approx(5.0, abs=1e-12)


def test_clamped_matches_scipy():
    rng = np.random.default_rng(32)
    xs = np.sort(rng.uniform(0.0, 5.0, 18))
    ys = rng.normal(0.0, 1.0, 18)
    d0, dn = 2.5, -1.0
    pp = clamped_cubic(Series(xs, ys), d0, dn)
    ref = CubicSpline(xs, ys, bc_type=((1, d0), (1, dn)))
    grid = np.linspace(xs[0], xs[-1], 400)
    np.testing.assert_allclose(peval(pp, grid), ref(grid), rtol=1e-9, atol=1e-9)


# --------------------------------------------------------------- pchip

def test_pchip_monotone_data_stays_monotone():
    xs = np.array([0.0, 1.0, 2.0, 3.0, 4.0, 5.0])
    ys = np.array([0.0, 0.1, 0.5, 4.0, 4.05, 9.0])
    pp = pchip(Series(xs, ys))
    grid = np.linspace(0.0, 5.0, 2000)
    vals = peval(pp, grid)
    assert np.all(np.diff(vals) >= -1e-12)


def test_pchip_linear_data():
    xs = np.linspace(0.0, 3.0, 9)
    pp = pchip(Series(xs, -2.0 * xs + 0.5))
    grid = np.linspace(0.0, 3.0, 100)
    np.testing.assert_allclose(peval(pp, grid), -2.0 * grid + 0.5, atol=1e-12)


def test_pchip_zero_slope_at_local_max():
    pp = pchip(_hump())
    # coefficient b of the piece starting at the peak
    assert pp.coeffs[1, 1] == 0.0
    assert peval(pp, 1.0, deriv=1) == 0.0


def test_pchip_node_slopes_match_reference_rule():
    rng = np.random.default_rng(33)
    xs = np.sort(rng.uniform(0.0, 10.0, 15))
    ys = np.cumsum(rng.uniform(-1.0, 2.0, 15))  # mixed monotone runs
    pp = pchip(Series(xs, ys))
    want = fritsch_carlson_slopes(xs, ys)
    got = np.array([peval(pp, xi, deriv=1) for xi in xs])
    np.testing.assert_allclose(got, want, rtol=1e-10, atol=1e-12)


def test_pchip_matches_scipy():
    rng = np.random.default_rng(34)
    xs = np.sort(rng.uniform(0.0, 8.0, 20))
    ys = rng.normal(0.0, 3.0, 20)
    pp = pchip(Series(xs, ys))
    ref = PchipInterpolator(xs, ys)
    grid = np.linspace(xs[0], xs[-1], 400)
    np.testing.assert_allclose(peval(pp, grid), ref(grid), rtol=1e-9, atol=1e-10)


def test_pchip_two_points():
    pp = pchip(Series([1.0, 3.0], [2.0, 8.0]))
    assert peval(pp, 2.0) == pytest.approx(5.0, abs=1e-12)


# ---------------------------------------------- interpolation/continuity

def _random_series(seed, n=20):
    rng = np.random.default_rng(seed)
    xs = np.sort(rng.uniform(0.0, 10.0, n))
    ys = rng.normal(0.0, 5.0, n)
    return Series(xs, ys)


def test_interpolation_invariant():
    s = _random_series(35)
    tol = 1e-9 * np.max(np.abs(s.ys))
    for pp in (natural_cubic(s), clamped_cubic(s, 1.0, -2.0), pchip(s)):
        np.testing.assert_allclose(peval(pp, s.xs), s.ys, rtol=0, atol=tol)


def _one_sided_limits(pp, i, d):
    """Exact left and right limits of the d-th derivative at knot i."""
    h = pp.knots[i] - pp.knots[i - 1]
    al, bl, cl, dl = pp.coeffs[i - 1]
    left = (
        al + h * (bl + h * (cl + h * dl)),
        bl + h * (2.0 * cl + 3.0 * dl * h),
        2.0 * cl + 6.0 * dl * h,
    )[d]
    ar, br, cr, _ = pp.coeffs[i]
    right = (ar, br, 2.0 * cr)[d]
    return left, right


def test_continuity_exact_limits():
    s = _random_series(36)
    for pp in (natural_cubic(s), clamped_cubic(s, 0.0, 0.0)):
        for d in (0, 1, 2):
            scale = max(1.0, np.max(np.abs(pp.coeffs)))
            for i in range(1, s.n - 1):
                left, right = _one_sided_limits(pp, i, d)
                assert abs(left - right) < 1e-8 * scale
    pp = pchip(s)
    for d in (0, 1):
        scale = max(1.0, np.max(np.abs(pp.coeffs)))
        for i in range(1, s.n - 1):
            left, right = _one_sided_limits(pp, i, d)
            assert abs(left - right) < 1e-8 * scale


def test_continuity_probes():
    # finite-difference probes across each interior knot; the probe
    # separation contributes an O(eps * next derivative) drift even for
    # a perfectly continuous function, so subtract that allowance
    s = _random_series(36)
    eps = 1e-6 * np.min(np.diff(s.xs))
    for pp in (natural_cubic(s), clamped_cubic(s, 0.0, 0.0)):
        for i, xi in enumerate(s.xs[1:-1], start=1):
            for d in (0, 1, 2):
                gap = abs(peval(pp, xi - eps, d) - peval(pp, xi + eps, d))
                if d < 2:
                    drift = 2.0 * eps * max(
                        abs(peval(pp, xi - eps, d + 1)),
                        abs(peval(pp, xi + eps, d + 1)),
                    )
                else:
                    drift = 2.0 * eps * 6.0 * np.max(np.abs(pp.coeffs[:, 3]))
                scale = max(1.0, np.max(np.abs(pp.coeffs)))
                assert gap <= 1.1 * drift + 1e-8 * scale


def test_eval_right_piece_convention_at_knots():
    s = _random_series(37)
    pp = pchip(s)
    # second derivative jumps at pchip knots; eval must take the right
    # piece's value, 2c of the piece starting there
    for i, xi in enumerate(s.xs[:-1]):
        assert peval(pp, xi, deriv=2) == pytest.approx(
            2.0 * pp.coeffs[i, 2], rel=1e-12
        )
    # last knot belongs to the last piece (right-closed)
    h = s.xs[-1] - s.xs[-2]
    a, b, c, d = pp.coeffs[-1]
    assert peval(pp, s.xs[-1], deriv=2) == pytest.approx(
        2.0 * c + 6.0 * d * h, rel=1e-10
    )


def test_too_few_points():
    one = Series([1.0], [2.0])
    with pytest.raises(TooFewPointsError):
        natural_cubic(one)
    with pytest.raises(TooFewPointsError):
        clamped_cubic(one, 0.0, 0.0)
    with pytest.raises(TooFewPointsError):
        pchip(one)
    with pytest.raises(TooFewPointsError):
        smoothing_spline(Series([0.0, 1.0], [0.0, 1.0]), SmoothParam(1.0))


# ------------------------------------------------------------ smoothing

def test_smoothing_p_zero_interpolates():
    s = _random_series(38)
    pp = smoothing_spline(s, SmoothParam(0.0))
    np.testing.assert_allclose(peval(pp, s.xs), s.ys, rtol=0, atol=1e-8)
    nat = natural_cubic(s)
    grid = np.linspace(s.xs[0], s.xs[-1], 300)
    np.testing.assert_allclose(peval(pp, grid), peval(nat, grid), atol=1e-8)


def test_smoothing_large_p_is_ls_line():
    rng = np.random.default_rng(39)
    n = 60
    xs = np.sort(rng.uniform(0.0, 4.0, n))
    ys = 1.0 + 0.5 * xs + rng.normal(0.0, 0.2, n)
    p = 1e12 * n * (xs[-1] - xs[0]) ** 3
    pp = smoothing_spline(Series(xs, ys), SmoothParam(p))
    line = wls_polyfit(xs, ys, np.ones(n), 1)
    got = peval(pp, xs)
    want = line(xs)
    np.testing.assert_allclose(got, want, rtol=1e-4)


def test_smoothing_linear_data_any_p():
    xs = np.linspace(0.0, 5.0, 30)
    ys = 2.0 * xs - 3.0
    for p in (0.0, 1.0, 1e6):
        pp = smoothing_spline(Series(xs, ys), SmoothParam(p))
        np.testing.assert_allclose(peval(pp, xs), ys, atol=1e-9)


def test_smoothing_rss_monotone_in_p():
    rng = np.random.default_rng(40)
    xs = np.sort(rng.uniform(0.0, 6.0, 80))
    ys = np.sin(xs) + rng.normal(0.0, 0.3, 80)
    s = Series(xs, ys)
    rss = []
    for p in (0.0, 1e-4, 1e-2, 1.0, 1e2, 1e4, 1e8):
        pp = smoothing_spline(s, SmoothParam(p))
        rss.append(np.sum((peval(pp, xs) - ys) ** 2))
    assert all(b >= a - 1e-10 for a, b in zip(rss, rss[1:]))


def _curvature_energy(pp):
    # f'' is linear on each piece, from 2c to 2c + 6 d h
    h = np.diff(pp.knots)
    m0 = 2.0 * pp.coeffs[:, 2]
    m1 = m0 + 6.0 * pp.coeffs[:, 3] * h
    return np.sum(h * (m0**2 + m0 * m1 + m1**2) / 3.0)


def test_smoothing_is_objective_minimizer():
    # perturbing the fitted knot values must not decrease the penalized
    # objective; any natural spline is determined by its knot values
    rng = np.random.default_rng(41)
    xs = np.sort(rng.uniform(0.0, 3.0, 25))
    ys = np.cos(xs) + rng.normal(0.0, 0.2, 25)
    s = Series(xs, ys)
    p = 0.5
    pp = smoothing_spline(s, SmoothParam(p))
    g = peval(pp, xs)

    def objective(vals):
        interp = natural_cubic(Series(xs, vals))
        rss = np.sum((vals - ys) ** 2)
        return rss + p * _curvature_energy(interp)

    j_star = objective(g)
    for _ in range(20):
        cand = g + rng.normal(0.0, 0.01, g.size)
        assert objective(cand) >= j_star - 1e-9


def test_interpolant_variation_exceeds_loess_tenfold():
    # a dense noisy record makes any interpolant chase the noise; its
    # total variation dwarfs a span-0.1 loess curve's
    rng = np.random.default_rng(42)
    n = 10_000
    xs = np.linspace(0.0, 4.0 * np.pi, n)
    ys = np.sin(xs) + rng.normal(0.0, 0.1, n)
    s = Series(xs, ys)
    nat = natural_cubic(s)
    probe = np.sort(np.concatenate([xs, (xs[:-1] + xs[1:]) / 2.0]))
    tv_nat = np.sum(np.abs(np.diff(peval(nat, probe))))
    sm = loess_smooth(
        s, LoessSpec(span=0.1, degree=1, delta=0.01 * (xs[-1] - xs[0]))
    )
    tv_loess = np.sum(np.abs(np.diff(sm.ys)))
    assert tv_nat > 10.0 * tv_loess


# ------------------------------------------------------------- B-splines

def test_bspline_degree_zero_indicators():
    np.testing.assert_allclose(bspline_basis([0.0, 1.0, 2.0], 0, 0.5), [1.0, 0.0])
    np.testing.assert_allclose(bspline_basis([0.0, 1.0, 2.0], 0, 1.5), [0.0, 1.0])


def test_bspline_degree_two_hand_values():
    knots = [0.0, 0.0, 0.0, 1.0, 2.0, 2.0, 2.0]
    got = bspline_basis(knots, 2, 0.5)
    np.testing.assert_allclose(got, [0.25, 0.625, 0.125, 0.0], atol=1e-14)


def test_bspline_matches_recursive_reference():
    rng = np.random.default_rng(43)
    for degree in (0, 1, 2, 3):
        interior = np.sort(rng.uniform(0.0, 1.0, 4))
        knots = np.concatenate(
            [np.zeros(degree + 1), interior, np.ones(degree + 1)]
        )
        for x in rng.uniform(0.0, 1.0, 20):
            got = bspline_basis(knots, degree, x)
            want = bspline_basis_recursive(knots, degree, x)
            np.testing.assert_allclose(got, want, atol=1e-12)


def test_bspline_partition_of_unity():
    rng = np.random.default_rng(44)
    knots = np.concatenate([[0.0] * 4, [0.3, 0.5, 0.6], [1.0] * 4])
    for x in rng.uniform(0.0, 1.0, 1000):
        assert bspline_basis(knots, 3, x).sum() == pytest.approx(1.0, abs=1e-12)
    # the closed top of the last interval keeps support at x = 1
    assert bspline_basis(knots, 3, 1.0).sum() == pytest.approx(1.0, abs=1e-12)


def test_bspline_invalid_knots():
    with pytest.raises(InvalidKnotsError):
        bspline_basis([0.0, 1.0], 1, 0.5)  # too short for degree 1
    with pytest.raises(InvalidKnotsError):
        bspline_basis([0.0, 2.0, 1.0], 0, 0.5)  # decreasing
    with pytest.raises(InvalidKnotsError):
        bspline_basis([0.0, 1.0, 2.0], -1, 0.5)
