"""Ordered (x, y) sample series: ingestion, cleaning, and the two
primitive smoothers (bin averaging and moving local averages).

A :class:`Series` is the currency every smoother in this package accepts
and returns: finite float arrays of equal length with strictly
increasing abscissas. Construction validates the invariants once, so
downstream code never re-checks them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import (
    EmptyInputError,
    EmptyResultError,
    EmptyWindowError,
    LengthMismatchError,
    TooFewPointsError,
    TooManyBinsError,
)

__all__ = [
    "Series",
    "BinStrategy",
    "FixedWidth",
    "NearestNeighbors",
    "from_columns",
    "drop_nonpositive",
    "resample_uniform",
    "bin_average",
    "local_average",
]


@dataclass(frozen=True, eq=False)
class Series:
    """Immutable ordered samples (xs[i], ys[i]).

    Invariants, enforced at construction:

    * ``xs`` strictly increasing, no ties;
    * ``xs`` and ``ys`` of equal length >= 1;
    * every value finite.

    The arrays are float64 copies with the writeable flag cleared, so a
    Series can be shared freely across threads.
    """

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float).copy()
        ys = np.asarray(self.ys, dtype=float).copy()
        if xs.ndim != 1 or ys.ndim != 1:
            raise ValueError("xs and ys must be one-dimensional")
        if xs.size != ys.size:
            raise LengthMismatchError(
                f"xs has {xs.size} values but ys has {ys.size}"
            )
        if xs.size == 0:
            raise EmptyInputError("a Series needs at least one point")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise ValueError("series values must be finite")
        if xs.size > 1 and not np.all(np.diff(xs) > 0):
            raise ValueError("xs must be strictly increasing")
        xs.flags.writeable = False
        ys.flags.writeable = False
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @property
    def n(self) -> int:
        return self.xs.size

    def __len__(self) -> int:
        return self.xs.size

    @property
    def x_range(self) -> float:
        """Width of the abscissa interval (0 for a single point)."""
        return float(self.xs[-1] - self.xs[0])

    def with_ys(self, ys) -> "Series":
        """New series on the same abscissas with replaced ordinates."""
        return Series(self.xs, ys)


@dataclass(frozen=True)
class BinStrategy:
    """How to partition a series into ``k`` bins.

    ``equal_width`` splits [min x, max x] into k equal intervals;
    ``equal_count`` puts ceil(n/k) or floor(n/k) consecutive points in
    each bin.
    """

    mode: Literal["equal_width", "equal_count"]
    k: int

    def __post_init__(self):
        if self.mode not in ("equal_width", "equal_count"):
            raise ValueError(f"unknown bin mode {self.mode!r}")
        if int(self.k) < 1 or self.k != int(self.k):
            raise ValueError("bin count k must be a positive integer")
        object.__setattr__(self, "k", int(self.k))


@dataclass(frozen=True)
class FixedWidth:
    """Moving window of fixed abscissa width ``width`` (> 0)."""

    width: float

    def __post_init__(self):
        if not (float(self.width) > 0):
            raise ValueError("window width must be positive")


@dataclass(frozen=True)
class NearestNeighbors:
    """Moving window holding the ``count`` samples nearest the focal x."""

    count: int

    def __post_init__(self):
        if int(self.count) < 1 or self.count != int(self.count):
            raise ValueError("neighbor count must be a positive integer")
        object.__setattr__(self, "count", int(self.count))


def from_columns(xs, ys) -> Series:
    """Build a clean Series from raw column data.

    Non-finite pairs are dropped, the remainder is sorted by x, and
    duplicate abscissas are collapsed to a single point whose ordinate
    is the mean of the duplicates (tied x values are unavoidable in
    fixed-rate acquisition logs, and strictly increasing x is required
    by every differentiating step downstream).

    Raises
    ------
    LengthMismatchError
        If the two columns differ in length.
    EmptyInputError
        If no finite pair survives filtering.
    """
    xs = np.asarray(xs, dtype=float).ravel()
    ys = np.asarray(ys, dtype=float).ravel()
    if xs.size != ys.size:
        raise LengthMismatchError(
            f"x column has {xs.size} values but y column has {ys.size}"
        )
    keep = np.isfinite(xs) & np.isfinite(ys)
    xs, ys = xs[keep], ys[keep]
    if xs.size == 0:
        raise EmptyInputError("no finite (x, y) pairs in input")
    order = np.argsort(xs, kind="stable")
    xs, ys = xs[order], ys[order]
    ux, start = np.unique(xs, return_index=True)
    if ux.size == xs.size:
        return Series(xs, ys)
    # mean-collapse runs of tied abscissas
    sums = np.add.reduceat(ys, start)
    counts = np.diff(np.append(start, xs.size))
    return Series(ux, sums / counts)


def drop_nonpositive(s: Series, axis: Literal["x", "y", "both"] = "y") -> Series:
    """Remove points whose value on the selected axis is <= 0.

    Negative machine readings carry no physical meaning for this kind of
    record and zero values break twist-normalized quantities, so both
    are discarded together.

    Raises
    ------
    EmptyResultError
        If every point would be removed.
    """
    if axis == "x":
        keep = s.xs > 0
    elif axis == "y":
        keep = s.ys > 0
    elif axis == "both":
        keep = (s.xs > 0) & (s.ys > 0)
    else:
        raise ValueError(f"axis must be 'x', 'y' or 'both', got {axis!r}")
    if not keep.any():
        raise EmptyResultError(
            f"dropping nonpositive values on axis {axis!r} removed all "
            f"{s.n} points"
        )
    return Series(s.xs[keep], s.ys[keep])


def resample_uniform(s: Series, m: int) -> Series:
    """Linearly resample onto ``m`` equally spaced abscissas.

    Endpoints are preserved exactly. Linear (not spline) interpolation
    is deliberate: resampling must not inject smoothness before the
    actual smoother runs.

    Raises
    ------
    TooFewPointsError
        If ``m < 2`` or the series has fewer than two points.
    """
    if m < 2:
        raise TooFewPointsError(f"need at least 2 output points, got {m}")
    if s.n < 2:
        raise TooFewPointsError("cannot resample a single-point series")
    grid = np.linspace(s.xs[0], s.xs[-1], int(m))
    ys = np.interp(grid, s.xs, s.ys)
    return Series(grid, ys)


def bin_average(s: Series, strategy: BinStrategy) -> Series:
    """Collapse the series to one mean point per nonempty bin.

    Each output point is (mean of member xs, mean of member ys). With
    ``equal_width`` the rightmost interval is closed so the maximum
    sample is never orphaned; with ``equal_count`` the first ``n mod k``
    bins take the extra point.

    Raises
    ------
    TooManyBinsError
        If ``strategy.k`` exceeds the sample count.
    """
    k = strategy.k
    if k > s.n:
        raise TooManyBinsError(f"{k} bins requested for {s.n} points")
    if strategy.mode == "equal_count":
        base, extra = divmod(s.n, k)
        sizes = np.full(k, base)
        sizes[:extra] += 1
        edges = np.concatenate(([0], np.cumsum(sizes)))
        labels = np.repeat(np.arange(k), sizes)
    else:
        lo, hi = s.xs[0], s.xs[-1]
        if hi == lo:
            labels = np.zeros(s.n, dtype=int)
        else:
            labels = np.minimum(
                (k * (s.xs - lo) / (hi - lo)).astype(int), k - 1
            )
    bx, by = [], []
    for b in range(k):
        mask = labels == b
        if mask.any():
            bx.append(s.xs[mask].mean())
            by.append(s.ys[mask].mean())
    return Series(np.array(bx), np.array(by))


def _check_eval_points(eval_points) -> np.ndarray:
    pts = np.asarray(eval_points, dtype=float).ravel()
    if pts.size == 0:
        raise ValueError("eval_points must be nonempty")
    if not np.all(np.isfinite(pts)):
        raise ValueError("eval_points must be finite")
    if pts.size > 1 and not np.all(np.diff(pts) > 0):
        raise ValueError("eval_points must be strictly increasing")
    return pts


def local_average(
    s: Series,
    window: FixedWidth | NearestNeighbors,
    eval_points,
) -> Series:
    """Moving-window mean of the ordinates at each evaluation point.

    ``FixedWidth(w)`` averages the samples with x in [x0 - w/2,
    x0 + w/2]; ``NearestNeighbors(m)`` averages the m samples nearest
    x0, ties broken toward smaller x. Evaluation points must be strictly
    increasing so the result is itself a valid Series.

    Raises
    ------
    EmptyWindowError
        If a fixed-width window contains no samples at some evaluation
        point (the message names the point).
    """
    pts = _check_eval_points(eval_points)
    out = np.empty(pts.size)
    if isinstance(window, FixedWidth):
        half = window.width / 2.0
        for i, x0 in enumerate(pts):
            lo = np.searchsorted(s.xs, x0 - half, side="left")
            hi = np.searchsorted(s.xs, x0 + half, side="right")
            if hi == lo:
                raise EmptyWindowError(
                    f"window of width {window.width} around x={x0} "
                    "contains no samples"
                )
            out[i] = s.ys[lo:hi].mean()
    elif isinstance(window, NearestNeighbors):
        m = window.count
        if m > s.n:
            raise ValueError(
                f"{m} neighbors requested but series has {s.n} points"
            )
        for i, x0 in enumerate(pts):
            lo, hi = _nearest_window(s.xs, x0, m)
            out[i] = s.ys[lo:hi].mean()
    else:
        raise TypeError(f"unsupported window {window!r}")
    return Series(pts, out)


def _nearest_window(xs: np.ndarray, x0: float, m: int) -> tuple[int, int]:
    """Index slice [lo, hi) of the m samples nearest x0.

    xs is sorted, so the nearest m always form a contiguous block; grow
    it outward from the insertion point, preferring the left (smaller x)
    sample on distance ties.
    """
    n = xs.size
    hi = np.searchsorted(xs, x0, side="left")
    lo = hi
    while hi - lo < m:
        if lo == 0:
            hi += 1
        elif hi == n:
            lo -= 1
        elif x0 - xs[lo - 1] <= xs[hi] - x0:
            lo -= 1
        else:
            hi += 1
    return lo, hi
