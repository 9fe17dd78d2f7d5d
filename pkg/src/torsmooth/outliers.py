"""Outlier screening against a robust smooth reference trend.

A robust loess fit supplies the trend, so single wild points cannot
drag the reference toward themselves, and curvature in the data does
not masquerade as outlyingness the way it would against a global fit.
Deviations are judged on the MAD scale with the 1.4826 normal
consistency constant.

Flagging is reported, never applied implicitly; remove_outliers is a
separate explicit step because deciding between bad data and real
effects belongs to the analyst.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidSpecError,
    SeriesTooShortError,
    WouldEmptyError,
)
from .loess import LoessSpec, loess_smooth
from .series import Series

__all__ = ["OutlierReport", "detect_outliers", "remove_outliers"]

# MAD -> sigma for Gaussian noise
_MAD_CONSISTENCY = 1.4826

# deviations below this fraction of the data magnitude are float dust
# from the reference fit, not evidence; without the floor, exactly
# collinear data would flag its own rounding noise
_DUST_RTOL = 1e-12


@dataclass(frozen=True)
class OutlierReport:
    """Flagged positions with their deviations and the cutoff used.

    residuals holds the median-centered deviation e - median(e) of each
    flagged point from the robust reference fit, in ordinate units, so
    abs(residual) >= threshold for every entry.
    """

    indices: np.ndarray
    residuals: np.ndarray
    threshold: float

    def __post_init__(self):
        idx = np.asarray(self.indices)
        res = np.asarray(self.residuals, dtype=float)
        if idx.ndim != 1 or res.ndim != 1 or idx.size != res.size:
            raise ValueError("indices and residuals must be 1-D, same length")
        if idx.size and (not np.issubdtype(idx.dtype, np.integer) or np.any(idx < 0)):
            raise ValueError("indices must be nonnegative integers")
        if idx.size > 1 and not np.all(np.diff(idx) > 0):
            raise ValueError("indices must be strictly increasing")
        if not (np.isfinite(self.threshold) and self.threshold >= 0.0):
            raise ValueError(f"threshold must be finite and >= 0, got {self.threshold}")
        if np.any(np.abs(res) < self.threshold):
            raise ValueError("every flagged residual must reach the threshold")
        idx = idx.astype(np.intp, copy=True)
        res = res.copy()
        idx.flags.writeable = False
        res.flags.writeable = False
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "residuals", res)

    @property
    def count(self) -> int:
        return int(self.indices.size)


def detect_outliers(
    s: Series, reference: LoessSpec, k: float = 3.0
) -> OutlierReport:
    """Flag points deviating more than k MAD-sigmas from a robust trend.

    Parameters
    ----------
    s : Series
        Samples to screen; at least 10 points.
    reference : LoessSpec
        Trend specification; must have robust_iters >= 1 so the trend
        itself resists the outliers being hunted.
    k : float
        Threshold multiplier, > 0. Default 3.

    Returns
    -------
    OutlierReport
        Flagged indices, centered residuals, and the cutoff k * scale
        where scale = 1.4826 * median |e - median(e)|. A zero scale
        (majority of residuals identical) flags every point whose
        residual deviates from the median residual.
    """
    if s.n < 10:
        raise SeriesTooShortError(f"need at least 10 points, got {s.n}")
    if reference.robust_iters < 1:
        raise InvalidSpecError(
            "outlier reference trend requires robust_iters >= 1"
        )
    if not (float(k) > 0.0 and np.isfinite(k)):
        raise InvalidSpecError(f"k must be finite and > 0, got {k}")

    yhat = loess_smooth(s, reference).ys
    e = s.ys - yhat
    centered = e - np.median(e)
    scale = _MAD_CONSISTENCY * float(np.median(np.abs(centered)))
    dust = _DUST_RTOL * max(1.0, float(np.max(np.abs(s.ys))))
    threshold = k * scale
    mask = np.abs(centered) > max(threshold, dust)
    idx = np.nonzero(mask)[0]
    return OutlierReport(idx, centered[idx], threshold)


def remove_outliers(s: Series, report: OutlierReport) -> Series:
    """Series with the flagged points deleted."""
    if report.count == 0:
        return s
    if report.indices[-1] >= s.n:
        raise ValueError(
            f"report index {report.indices[-1]} out of range for n={s.n}"
        )
    if report.count >= s.n:
        raise WouldEmptyError("removing every point would empty the series")
    keep = np.ones(s.n, dtype=bool)
    keep[report.indices] = False
    return Series(s.xs[keep], s.ys[keep])
