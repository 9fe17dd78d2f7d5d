"""Weighted polynomial least squares.

This is the fitting engine shared by the loess smoother, the
Savitzky-Golay edge refits, and the straight-line limit checks of the
smoothing spline. The solve goes through an orthogonal decomposition of
the weighted design matrix rather than explicit normal-equation
inversion; the (X'WX)^-1 form only appears in the covariance, where it
is definitional.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegreesOfFreedomError,
    InsufficientDataError,
    RankDeficientError,
)

__all__ = ["PolyFit", "wls_polyfit", "residual_variance"]

# reciprocal condition estimate below this is treated as singular
RCOND_LIMIT = 1e-12


@dataclass(frozen=True)
class PolyFit:
    """Result of a weighted polynomial fit.

    Attributes
    ----------
    beta : ndarray
        Coefficients in ascending power order, length ``p``.
    p : int
        Basis dimension (degree + 1).
    sigma2_hat : float
        Residual variance estimate: weighted residual sum of squares
        over (positive-weight count - p). Zero when the fit is exactly
        determined (no residual degrees of freedom).
    cov : ndarray
        p x p covariance matrix of ``beta``, (X'WX)^-1 * sigma2_hat.
    """

    beta: np.ndarray
    p: int
    sigma2_hat: float
    cov: np.ndarray

    def __call__(self, x):
        """Evaluate the fitted polynomial at ``x`` (scalar or array)."""
        return np.polynomial.polynomial.polyval(x, self.beta)


def wls_polyfit(xs, ys, weights, degree: int) -> PolyFit:
    """Fit a polynomial of the given degree by weighted least squares.

    Minimizes sum_i w_i * (y_i - P(x_i))^2 over polynomials P of the
    requested degree. Zero-weight samples are excluded entirely; they
    contribute neither to the fit nor to the residual variance count.

    Parameters
    ----------
    xs, ys : array-like
        Sample coordinates, equal length.
    weights : array-like
        Nonnegative finite weights, same length.
    degree : int
        Polynomial degree >= 0.

    Raises
    ------
    InsufficientDataError
        Fewer than ``degree + 1`` samples with positive weight.
    RankDeficientError
        Weighted design matrix numerically singular (reciprocal
        condition estimate below 1e-12), e.g. all xs coincident.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    w = np.asarray(weights, dtype=float)
    if xs.shape != ys.shape or xs.shape != w.shape:
        raise ValueError("xs, ys and weights must have equal length")
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise ValueError("weights must be finite and nonnegative")

    active = w > 0
    n_pos = int(active.sum())
    p = degree + 1
    if n_pos < p:
        raise InsufficientDataError(
            f"degree {degree} fit needs {p} positive-weight samples, "
            f"got {n_pos}"
        )
    xa, ya, wa = xs[active], ys[active], w[active]

    sw = np.sqrt(wa)
    design = np.vander(xa, p, increasing=True)
    scaled = design * sw[:, None]
    # SVD solve; singular-value ratio doubles as the condition estimate
    u, s, vt = np.linalg.svd(scaled, full_matrices=False)
    if s[0] == 0.0 or s[-1] / s[0] < RCOND_LIMIT:
        raise RankDeficientError(
            f"design matrix condition beyond {RCOND_LIMIT:g} reciprocal "
            f"limit (degree {degree}, {n_pos} samples)"
        )
    beta = vt.T @ ((u.T @ (sw * ya)) / s)

    resid = ya - design @ beta
    if n_pos > p:
        sigma2 = float(wa @ resid**2) / (n_pos - p)
    else:
        sigma2 = 0.0  # exactly determined fit: no residual dof
    # (X'WX)^-1 = V diag(1/s^2) V'
    xtwx_inv = (vt.T / s**2) @ vt
    cov = xtwx_inv * sigma2
    cov = (cov + cov.T) / 2.0
    return PolyFit(beta=beta, p=p, sigma2_hat=sigma2, cov=cov)


def residual_variance(residuals, p: int) -> float:
    """Unbiased residual variance: sum(e_i^2) / (n - p).

    Raises
    ------
    DegreesOfFreedomError
        If the sample count does not exceed the basis dimension ``p``.
    """
    e = np.asarray(residuals, dtype=float)
    n = e.size
    if n <= p:
        raise DegreesOfFreedomError(
            f"{n} residuals cannot support a {p}-parameter basis"
        )
    return float(e @ e) / (n - p)
