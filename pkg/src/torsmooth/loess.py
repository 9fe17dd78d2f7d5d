"""Locally weighted scatterplot smoothing (lowess/loess).

Follows Cleveland (1979), "Robust Locally Weighted Regression and
Smoothing Scatterplots": q nearest neighbors per evaluation point,
tricube distance weights, optional bisquare robustness iterations, and
the delta shortcut that fits only at abscissas spaced more than delta
apart and fills the gaps by linear interpolation.

Local fits are ordinary weighted least squares through the shared
linreg engine, with abscissas centered at the evaluation point. A fit
that turns out singular (too few points carrying weight after the
robustness pass) degrades one degree at a time down to the weighted
mean rather than failing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AllWeightsZeroError,
    InsufficientDataError,
    InvalidSpecError,
    RankDeficientError,
    SpanTooSmallError,
)
from .polyfit import wls_polyfit
from .series import Series, _nearest_window

__all__ = ["LoessSpec", "loess_smooth", "loess_smooth_windowed"]


@dataclass(frozen=True)
class LoessSpec:
    """Parameters of one loess run.

    span is the fraction of all samples entering each local fit, degree
    selects lowess-style local lines (1) or loess-style local quadratics
    (2), robust_iters counts bisquare reweighting passes, and delta > 0
    enables grouped fitting with linear interpolation between fitted
    abscissas.
    """

    span: float
    degree: int = 1
    robust_iters: int = 0
    delta: float = 0.0

    def __post_init__(self):
        if not (0.0 < float(self.span) <= 1.0):
            raise InvalidSpecError(f"span must be in (0, 1], got {self.span}")
        if self.degree not in (1, 2):
            raise InvalidSpecError(f"degree must be 1 or 2, got {self.degree}")
        if not isinstance(self.robust_iters, (int, np.integer)) or isinstance(
            self.robust_iters, bool
        ):
            raise InvalidSpecError("robust_iters must be an integer")
        if not 0 <= self.robust_iters <= 10:
            raise InvalidSpecError(
                f"robust_iters must be between 0 and 10, got {self.robust_iters}"
            )
        if not (float(self.delta) >= 0.0 and math.isfinite(self.delta)):
            raise InvalidSpecError(f"delta must be finite and >= 0, got {self.delta}")


def _fit_indices(xs: np.ndarray, delta: float) -> np.ndarray:
    """Indices to fit at: every point, or a delta-spaced chain of anchors."""
    n = xs.size
    if delta <= 0.0:
        return np.arange(n)
    anchors = [0]
    i = 0
    while True:
        j = int(np.searchsorted(xs, xs[i] + delta, side="right"))
        if j >= n:
            break
        anchors.append(j)
        i = j
    if anchors[-1] != n - 1:
        anchors.append(n - 1)  # the interpolant must cover the full range
    return np.asarray(anchors)


def _fit_pass(
    xs: np.ndarray,
    ys: np.ndarray,
    q: int,
    degree: int,
    robust: np.ndarray,
    fit_idx: np.ndarray,
) -> np.ndarray:
    """One sweep of local fits at the given indices."""
    n = xs.size
    out = np.empty(fit_idx.size)
    lo, hi = _nearest_window(xs, xs[fit_idx[0]], q)
    for k, i in enumerate(fit_idx):
        x0 = xs[i]
        # slide the neighborhood right; strict > keeps ties on the left
        while hi < n and x0 - xs[lo] > xs[hi] - x0:
            lo += 1
            hi += 1
        dmax = max(x0 - xs[lo], xs[hi - 1] - x0)
        if dmax > 0.0:
            u = np.abs(xs[lo:hi] - x0) / dmax
            w = np.clip(1.0 - u * u * u, 0.0, None) ** 3
        else:
            w = np.ones(hi - lo)
        w *= robust[lo:hi]
        if not np.any(w > 0.0):
            raise AllWeightsZeroError(
                f"all neighborhood weights vanish at x={x0}"
            )
        t = xs[lo:hi] - x0
        yw = ys[lo:hi]
        for deg in range(degree, 0, -1):
            try:
                out[k] = wls_polyfit(t, yw, w, deg).beta[0]
                break
            except (InsufficientDataError, RankDeficientError):
                continue
        else:
            out[k] = float(w @ yw) / float(w.sum())
    return out


def loess_smooth(s: Series, spec: LoessSpec) -> Series:
    """Loess-smoothed ordinates at the sample abscissas.

    Parameters
    ----------
    s : Series
        Input samples.
    spec : LoessSpec
        Span, local degree, robustness passes, delta grouping.

    Returns
    -------
    Series
        Same abscissas, fitted ordinates.

    Raises
    ------
    SpanTooSmallError
        The neighborhood size q = max(degree+1, ceil(span*n)) exceeds n,
        which happens only when n < degree + 1.
    AllWeightsZeroError
        A robustness pass zeroed every weight in some neighborhood.
    """
    n = s.n
    q = max(spec.degree + 1, math.ceil(spec.span * n))
    if q > n:
        raise SpanTooSmallError(
            f"neighborhood of {q} points exceeds series length {n}"
        )
    xs, ys = s.xs, s.ys
    robust = np.ones(n)
    fit_idx = _fit_indices(xs, spec.delta)
    for it in range(spec.robust_iters + 1):
        fitted = _fit_pass(xs, ys, q, spec.degree, robust, fit_idx)
        if fit_idx.size == n:
            yhat = fitted
        else:
            yhat = np.interp(xs, xs[fit_idx], fitted)
        if it == spec.robust_iters:
            break
        e = ys - yhat
        m = float(np.median(np.abs(e)))
        if m == 0.0:
            break  # exact fit, bisquare weights would all be 1
        u = e / (6.0 * m)
        robust = np.where(np.abs(u) < 1.0, (1.0 - u * u) ** 2, 0.0)
    return Series(xs, yhat)


def loess_smooth_windowed(s: Series, spec: LoessSpec, head: int) -> Series:
    """Smooth only the first ``head`` samples.

    Useful for inspecting an early transient without paying for the
    whole record; the neighborhood size is q = max(degree+1,
    ceil(span*head)), i.e. the span is taken relative to the window.
    """
    if not isinstance(head, (int, np.integer)) or isinstance(head, bool):
        raise ValueError("head must be an integer")
    if not 1 <= head <= s.n:
        raise ValueError(f"head must be in [1, {s.n}], got {head}")
    return loess_smooth(Series(s.xs[:head], s.ys[:head]), spec)
