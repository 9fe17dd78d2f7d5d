"""Savitzky-Golay polynomial smoothing and differentiation.

The interior of the series is handled with the usual fixed convolution
weights: fitting a degree-d polynomial over a sliding window of odd
length w and reading off the value (or a derivative) at the window
center collapses to a single dot product per point. The first and last
half-window points cannot be centered, so each terminal window gets one
explicit least-squares refit, evaluated at every edge abscissa it
covers. That matches how the tables in Savitzky and Golay (1964) are
meant to be used, without padding or coefficient asymmetry tricks.

Sample spacing must be uniform to within 1 percent of the mean step;
the derivative scale factor assumes a single step size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import (
    InvalidSpecError,
    NonUniformSpacingError,
    SeriesTooShortError,
)
from .polyfit import wls_polyfit
from .series import Series

__all__ = ["SavGolSpec", "savgol_coefficients", "savgol_apply"]

# relative tolerance on |dx - mean dx| for the uniform-spacing check
_SPACING_RTOL = 0.01


@dataclass(frozen=True)
class SavGolSpec:
    """Window length, polynomial degree, and derivative order.

    window must be odd and at least 3, degree must fit inside the
    window, and deriv must not exceed degree. The defaults give the
    degree-3, 99-point smoothing filter.
    """

    window: int = 99
    degree: int = 3
    deriv: int = 0

    def __post_init__(self):
        if not isinstance(self.window, (int, np.integer)) or isinstance(
            self.window, bool
        ):
            raise InvalidSpecError("window must be an integer")
        if self.window < 3 or self.window % 2 == 0:
            raise InvalidSpecError(
                f"window must be odd and >= 3, got {self.window}"
            )
        if not 0 <= self.degree < self.window:
            raise InvalidSpecError(
                f"degree must satisfy 0 <= degree < window, got {self.degree}"
            )
        if not 0 <= self.deriv <= self.degree:
            raise InvalidSpecError(
                f"deriv must satisfy 0 <= deriv <= degree, got {self.deriv}"
            )

    @property
    def half(self) -> int:
        return (self.window - 1) // 2


def savgol_coefficients(spec: SavGolSpec) -> np.ndarray:
    """Center-point weights c with yhat_i = sum_j c[h+j] y[i+j].

    Weights are in index units: for deriv = m the dot product estimates
    the m-th derivative with respect to the sample index. The design is
    built on j/h in [-1, 1] so large windows stay well conditioned.
    """
    h = spec.half
    j = np.arange(-h, h + 1, dtype=float)
    design = np.vander(j / h, spec.degree + 1, increasing=True)
    row = np.linalg.pinv(design)[spec.deriv]
    return row * (math.factorial(spec.deriv) / h**spec.deriv)


def savgol_apply(s: Series, spec: SavGolSpec) -> Series:
    """Smooth (or differentiate) a uniformly sampled series.

    Parameters
    ----------
    s : Series
        Input samples; spacing must be uniform to within 1 percent.
    spec : SavGolSpec
        Filter parameters.

    Returns
    -------
    Series
        Same abscissas. For deriv = m the ordinates are the m-th
        derivative estimate in y-per-x units.

    Raises
    ------
    SeriesTooShortError
        Fewer samples than the window length.
    NonUniformSpacingError
        Spacing deviates from its mean by more than 1 percent.
    """
    n = s.n
    if n < spec.window:
        raise SeriesTooShortError(
            f"need at least window={spec.window} samples, got {n}"
        )
    dx = np.diff(s.xs)
    step = dx.mean()
    if np.max(np.abs(dx - step)) > _SPACING_RTOL * step:
        raise NonUniformSpacingError(
            "sample spacing varies by more than 1% of the mean step"
        )

    h = spec.half
    c = savgol_coefficients(spec)
    out = np.empty(n)
    # np.convolve flips its second argument; reverse to get correlation
    out[h : n - h] = np.convolve(s.ys, c[::-1], mode="valid") / step**spec.deriv

    # one refit per terminal window, evaluated at each uncovered point
    ones = np.ones(spec.window)
    for sl, edge in (
        (slice(0, spec.window), slice(0, h)),
        (slice(n - spec.window, n), slice(n - h, n)),
    ):
        xw = s.xs[sl]
        xc = xw.mean()  # center for conditioning
        fit = wls_polyfit(xw - xc, s.ys[sl], ones, spec.degree)
        dcoef = P.polyder(fit.beta, m=spec.deriv) if spec.deriv else fit.beta
        out[edge] = P.polyval(s.xs[edge] - xc, dcoef)
    return Series(s.xs, out)
