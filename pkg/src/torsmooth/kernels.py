"""Kernel weight functions and the Nadaraya-Watson estimator.

Conventions:
    t = (x0 - x_i) / b          scaled distance, b > 0 the bandwidth
    estimate(x0) = sum K(t_i) y_i / sum K(t_j)

The estimator is invariant under scaling K by any positive constant, so
the normalizations below are cosmetic. The minimum-variance kernel goes
negative near the edge of its support; that is intentional (it is what
the formula says) and the weighted average is guarded against the
resulting near-cancellation of the denominator.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import EmptyWindowError, NearSingularWeightError
from .series import Series, _check_eval_points

__all__ = ["Kernel", "kernel_weight", "nadaraya_watson"]

_SQRT_2PI = np.sqrt(2.0 * np.pi)

# denominator below this multiple of the numerator-term scale is treated
# as a cancellation, not a usable weight total
_CANCEL_RTOL = 1e-12


class Kernel(enum.Enum):
    """Available kernel weight functions."""

    GAUSSIAN = "gaussian"
    EPANECHNIKOV = "epanechnikov"
    MINIMUM_VARIANCE = "minimum_variance"

    @property
    def support(self) -> float:
        """Radius outside which the kernel is identically zero."""
        return np.inf if self is Kernel.GAUSSIAN else 1.0


def kernel_weight(kernel: Kernel, t):
    """Kernel value at scaled distance ``t`` (scalar or array).

    Gaussian: standard normal density. Epanechnikov: 0.75*(1 - t^2) on
    t^2 < 1. Minimum variance: (3/8)*(3 - 5 t^2) on t^2 < 1. Compact
    kernels are exactly zero outside their support.
    """
    t = np.asarray(t, dtype=float)
    if kernel is Kernel.GAUSSIAN:
        w = np.exp(-0.5 * t * t) / _SQRT_2PI
    elif kernel is Kernel.EPANECHNIKOV:
        w = np.where(t * t < 1.0, 0.75 * (1.0 - t * t), 0.0)
    elif kernel is Kernel.MINIMUM_VARIANCE:
        w = np.where(t * t < 1.0, 0.375 * (3.0 - 5.0 * t * t), 0.0)
    else:
        raise ValueError(f"unknown kernel {kernel!r}")
    return w if w.ndim else float(w)


def nadaraya_watson(s: Series, kernel: Kernel, bandwidth: float, eval_points) -> Series:
    """Kernel-weighted moving average of ``s`` at each evaluation point.

    Parameters
    ----------
    s : Series
        Samples to smooth.
    kernel : Kernel
        Weight function.
    bandwidth : float
        Positive width ``b``; weights are K((x0 - x_i)/b).
    eval_points : array-like
        Strictly increasing abscissas at which to estimate.

    Raises
    ------
    EmptyWindowError
        No sample inside the kernel support at some evaluation point
        (possible for the compact kernels).
    NearSingularWeightError
        Weights present but their sum is negligible against the
        numerator terms (possible for the minimum-variance kernel,
        whose weights take both signs).
    """
    if not (float(bandwidth) > 0):
        raise ValueError("bandwidth must be positive")
    pts = _check_eval_points(eval_points)
    out = np.empty(pts.size)
    for i, x0 in enumerate(pts):
        w = kernel_weight(kernel, (x0 - s.xs) / bandwidth)
        if not np.any(w != 0.0):
            raise EmptyWindowError(
                f"no sample within kernel support at x={x0}"
            )
        num_terms = w * s.ys
        den = w.sum()
        scale = np.abs(num_terms).sum()
        if den == 0.0 or abs(den) < _CANCEL_RTOL * scale:
            raise NearSingularWeightError(
                f"kernel weights cancel at x={x0} "
                f"(denominator {den:.3e} against term scale {scale:.3e})"
            )
        out[i] = num_terms.sum() / den
    return Series(pts, out)
