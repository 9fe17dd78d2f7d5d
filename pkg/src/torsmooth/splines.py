"""Cubic splines: interpolating, clamped, shape-preserving, penalized.

All constructions return a PiecewisePoly holding per-interval cubic
coefficients in the local coordinate u = x - knot[i]. Natural and
clamped splines come from the classical tridiagonal system in the knot
second derivatives M_i; the smoothing spline uses the Reinsch scheme
(Green and Silverman 1994, ch. 2): solve (R + p Q'Q) gamma = Q'y for
the interior second derivatives, then g = y - p Q gamma for the fitted
knot values. With p = 0 that collapses to the natural interpolant, and
as p grows the fit tends to the least-squares straight line.

The shape-preserving variant assigns node slopes by the Fritsch-Carlson
rule (harmonic mean of adjacent secants weighted by interval lengths,
zero across sign changes) with three-point endpoint slopes clipped so
monotone data cannot overshoot.

Smoothing parameter orientation: p = 0 interpolates, large p smooths.
Some toolkits invert this; callers converting from elsewhere should
check which way their parameter runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solveh_banded

from .errors import InvalidKnotsError, TooFewPointsError
from .series import Series

__all__ = [
    "PiecewisePoly",
    "SmoothParam",
    "natural_cubic",
    "clamped_cubic",
    "pchip",
    "smoothing_spline",
    "bspline_basis",
    "eval",
]

# continuity slack relative to the ordinate scale; pieces meeting with a
# larger gap indicate a construction bug, not roundoff
_C0_RTOL = 1e-9


def _solveh(ab, rhs):
    # an m x m matrix has at most m - 1 superdiagonals; drop unused
    # band rows so tiny systems (m = 1, 2) do not confuse LAPACK
    drop = max(0, ab.shape[0] - ab.shape[1])
    return solveh_banded(ab[drop:], rhs)


@dataclass(frozen=True)
class PiecewisePoly:
    """Piecewise cubic in local coordinates u = x - knots[i].

    coeffs row i holds (a, b, c, d) with the piece value
    a + b u + c u^2 + d u^3 on [knots[i], knots[i+1]].

    extrapolation selects the behavior outside the knot range: "piece"
    continues the boundary cubic, "linear" continues the boundary
    tangent line (the natural-spline convention, since a natural spline
    has zero curvature at and beyond its ends).
    """

    knots: np.ndarray
    coeffs: np.ndarray
    degree: int = 3
    extrapolation: str = "piece"

    def __post_init__(self):
        knots = np.asarray(self.knots, dtype=float)
        coeffs = np.asarray(self.coeffs, dtype=float)
        if knots.ndim != 1 or knots.size < 2:
            raise ValueError("knots must be a 1-D array of at least 2 points")
        if not np.all(np.isfinite(knots)):
            raise ValueError("knots must be finite")
        if np.any(np.diff(knots) <= 0):
            raise ValueError("knots must be strictly increasing")
        if coeffs.shape != (knots.size - 1, 4):
            raise ValueError(
                f"coeffs must have shape ({knots.size - 1}, 4), got {coeffs.shape}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coeffs must be finite")
        if self.degree != 3:
            raise ValueError("only cubic pieces are supported")
        if self.extrapolation not in ("piece", "linear"):
            raise ValueError(f"unknown extrapolation {self.extrapolation!r}")
        # C0 check: each piece must land on the next piece's start value
        h = np.diff(knots)[:-1]
        a, b, c, d = coeffs[:-1].T
        ends = a + h * (b + h * (c + h * d))
        scale = max(1.0, float(np.max(np.abs(coeffs[:, 0]))))
        if coeffs.shape[0] > 1 and np.max(np.abs(ends - coeffs[1:, 0])) > _C0_RTOL * scale:
            raise ValueError("pieces are not value-continuous at the knots")
        knots = knots.copy()
        coeffs = coeffs.copy()
        knots.flags.writeable = False
        coeffs.flags.writeable = False
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "coeffs", coeffs)

    def __call__(self, x, deriv: int = 0):
        return eval(self, x, deriv)


@dataclass(frozen=True)
class SmoothParam:
    """Penalty weight for the smoothing spline; 0 interpolates."""

    p: float

    def __post_init__(self):
        if not (float(self.p) >= 0.0 and np.isfinite(self.p)):
            raise ValueError(f"p must be finite and >= 0, got {self.p}")


def eval(pp: PiecewisePoly, x, deriv: int = 0):
    """Value or derivative of the piecewise cubic at x (scalar or array).

    The piece is chosen by its half-open interval [knot[i], knot[i+1]),
    with the last interval closed on the right. Outside the knots the
    boundary piece or its tangent line continues, per pp.extrapolation.
    """
    if deriv not in (0, 1, 2):
        raise ValueError(f"deriv must be 0, 1, or 2, got {deriv}")
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    k = pp.knots
    idx = np.clip(np.searchsorted(k, xa, side="right") - 1, 0, k.size - 2)
    u = xa - k[idx]
    a, b, c, d = pp.coeffs[idx].T
    if deriv == 0:
        out = a + u * (b + u * (c + u * d))
    elif deriv == 1:
        out = b + u * (2.0 * c + 3.0 * d * u)
    else:
        out = 2.0 * c + 6.0 * d * u
    if pp.extrapolation == "linear":
        out = _linear_tails(pp, xa, deriv, out)
    return float(out[0]) if scalar else out


def _linear_tails(pp, xa, deriv, out):
    left = xa < pp.knots[0]
    right = xa > pp.knots[-1]
    if np.any(left):
        a0, b0 = pp.coeffs[0, 0], pp.coeffs[0, 1]
        vals = (a0 + b0 * (xa - pp.knots[0]), np.full_like(xa, b0), 0.0)
        out = np.where(left, vals[deriv], out)
    if np.any(right):
        h = pp.knots[-1] - pp.knots[-2]
        a, b, c, d = pp.coeffs[-1]
        end_val = a + h * (b + h * (c + h * d))
        end_slope = b + h * (2.0 * c + 3.0 * d * h)
        vals = (
            end_val + end_slope * (xa - pp.knots[-1]),
            np.full_like(xa, end_slope),
            0.0,
        )
        out = np.where(right, vals[deriv], out)
    return out


# ------------------------------------------------------- constructions

def _require_points(s: Series, least: int):
    if s.n < least:
        raise TooFewPointsError(f"need at least {least} points, got {s.n}")


def _pieces_from_m(xs, ys, m) -> np.ndarray:
    """Cubic coefficients from knot values and second derivatives."""
    h = np.diff(xs)
    delta = np.diff(ys) / h
    a = ys[:-1]
    b = delta - h * (2.0 * m[:-1] + m[1:]) / 6.0
    c = m[:-1] / 2.0
    d = (m[1:] - m[:-1]) / (6.0 * h)
    return np.column_stack([a, b, c, d])


def _interior_system(xs, ys):
    """Banded R (upper form) and right-hand side Q'y for interior nodes."""
    h = np.diff(xs)
    delta = np.diff(ys) / h
    diag = (h[:-1] + h[1:]) / 3.0
    sup = h[1:-1] / 6.0
    ab = np.zeros((2, diag.size))
    ab[0, 1:] = sup
    ab[1] = diag
    rhs = delta[1:] - delta[:-1]
    return ab, rhs


def natural_cubic(s: Series) -> PiecewisePoly:
    """Interpolating cubic spline with zero end curvature.

    The returned polynomial extrapolates linearly, continuing the end
    tangents, because zero second derivative at the boundary makes the
    spline a straight line outside the data.
    """
    _require_points(s, 2)
    m = np.zeros(s.n)
    if s.n > 2:
        ab, rhs = _interior_system(s.xs, s.ys)
        m[1:-1] = _solveh(ab, rhs)
    return PiecewisePoly(
        s.xs, _pieces_from_m(s.xs, s.ys, m), extrapolation="linear"
    )


def clamped_cubic(s: Series, d0: float, dn: float) -> PiecewisePoly:
    """Interpolating cubic spline with prescribed end slopes d0 and dn."""
    _require_points(s, 2)
    if not (np.isfinite(d0) and np.isfinite(dn)):
        raise ValueError("end slopes must be finite")
    h = np.diff(s.xs)
    delta = np.diff(s.ys) / h
    n = s.n
    diag = np.empty(n)
    diag[0] = h[0] / 3.0
    diag[-1] = h[-1] / 3.0
    diag[1:-1] = (h[:-1] + h[1:]) / 3.0
    ab = np.zeros((2, n))
    ab[0, 1:] = h / 6.0
    ab[1] = diag
    rhs = np.empty(n)
    rhs[0] = delta[0] - d0
    rhs[-1] = dn - delta[-1]
    rhs[1:-1] = delta[1:] - delta[:-1]
    m = _solveh(ab, rhs)
    return PiecewisePoly(s.xs, _pieces_from_m(s.xs, s.ys, m))


def _pchip_slopes(xs, ys) -> np.ndarray:
    h = np.diff(xs)
    delta = np.diff(ys) / h
    n = xs.size
    if n == 2:
        return np.array([delta[0], delta[0]])
    m = np.zeros(n)
    prod = delta[:-1] * delta[1:]
    pos = prod > 0.0  # same nonzero sign; zero or opposing secants give slope 0
    w1 = 2.0 * h[1:] + h[:-1]
    w2 = h[1:] + 2.0 * h[:-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        hm = (w1 + w2) / (w1 / delta[:-1] + w2 / delta[1:])
    m[1:-1] = np.where(pos, hm, 0.0)
    m[0] = _pchip_edge(h[0], h[1], delta[0], delta[1])
    m[-1] = _pchip_edge(h[-1], h[-2], delta[-1], delta[-2])
    return m


def _pchip_edge(h0, h1, d0, d1):
    """Three-point end slope, clipped to keep monotone data monotone."""
    d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1)
    if np.sign(d) != np.sign(d0):
        return 0.0
    if np.sign(d0) != np.sign(d1) and abs(d) > 3.0 * abs(d0):
        return 3.0 * d0
    return d


def pchip(s: Series) -> PiecewisePoly:
    """Shape-preserving piecewise cubic Hermite interpolant.

    C1 only: second derivatives jump at the nodes, the price paid for
    never overshooting monotone data (Fritsch and Carlson 1980).
    """
    _require_points(s, 2)
    m = _pchip_slopes(s.xs, s.ys)
    h = np.diff(s.xs)
    delta = np.diff(s.ys) / h
    a = s.ys[:-1]
    b = m[:-1]
    c = (3.0 * delta - 2.0 * m[:-1] - m[1:]) / h
    d = (m[:-1] + m[1:] - 2.0 * delta) / h**2
    return PiecewisePoly(s.xs, np.column_stack([a, b, c, d]))


def smoothing_spline(s: Series, sp: SmoothParam) -> PiecewisePoly:
    """Penalized natural cubic spline with knots at the data.

    Minimizes sum (f(x_i) - y_i)^2 + p * integral f''(t)^2 dt over all
    natural cubic splines. p = 0 gives the natural interpolant; very
    large p approaches the least-squares straight line.
    """
    _require_points(s, 3)
    xs, ys = s.xs, s.ys
    n = s.n
    h = np.diff(xs)
    inv = 1.0 / h
    p = float(sp.p)

    # R and Q'Q share the (n-2) interior-node index set; build the
    # pentadiagonal R + p Q'Q in upper banded form
    diag_r = (h[:-1] + h[1:]) / 3.0
    sup_r = h[1:-1] / 6.0
    qc_prev = inv[:-1]                 # weight on node i-1
    qc_mid = -(inv[:-1] + inv[1:])     # weight on node i
    qc_next = inv[1:]                  # weight on node i+1
    diag_q = qc_prev**2 + qc_mid**2 + qc_next**2
    sup1_q = qc_mid[:-1] * qc_prev[1:] + qc_next[:-1] * qc_mid[1:]
    sup2_q = qc_next[:-2] * qc_prev[2:] if n > 4 else np.empty(0)

    ab = np.zeros((3, n - 2))
    ab[0, 2:] = p * sup2_q
    ab[1, 1:] = sup_r + p * sup1_q
    ab[2] = diag_r + p * diag_q
    gamma = _solveh(ab, _qt(ys, inv))

    g = ys - p * _q(gamma, inv, n)
    m = np.zeros(n)
    m[1:-1] = gamma
    return PiecewisePoly(xs, _pieces_from_m(xs, g, m), extrapolation="linear")


def _qt(v, inv):
    """Q'v: second differences of v scaled by the interval widths."""
    return v[:-2] * inv[:-1] - v[1:-1] * (inv[:-1] + inv[1:]) + v[2:] * inv[1:]


def _q(gamma, inv, n):
    """Q gamma, mapping interior-node coefficients back to all nodes."""
    out = np.zeros(n)
    out[:-2] += gamma * inv[:-1]
    out[1:-1] -= gamma * (inv[:-1] + inv[1:])
    out[2:] += gamma * inv[1:]
    return out


# ------------------------------------------------------------- B-splines

def bspline_basis(knots, degree: int, x: float) -> np.ndarray:
    """All B-spline basis values at x by the Cox-de Boor recurrence.

    Parameters
    ----------
    knots : array-like
        Nondecreasing knot vector, length at least degree + 2.
    degree : int
        Polynomial degree, >= 0.
    x : float
        Evaluation abscissa. The last nonempty interval is treated as
        closed so x equal to the final knot still has support.

    Returns
    -------
    numpy.ndarray
        len(knots) - degree - 1 basis values; they sum to 1 for x
        inside the valid span of a clamped knot vector.
    """
    t = np.asarray(knots, dtype=float).ravel()
    if not isinstance(degree, (int, np.integer)) or isinstance(degree, bool):
        raise InvalidKnotsError("degree must be an integer")
    if degree < 0:
        raise InvalidKnotsError(f"degree must be >= 0, got {degree}")
    if t.size < degree + 2:
        raise InvalidKnotsError(
            f"need at least degree + 2 = {degree + 2} knots, got {t.size}"
        )
    if not np.all(np.isfinite(t)):
        raise InvalidKnotsError("knots must be finite")
    if np.any(np.diff(t) < 0):
        raise InvalidKnotsError("knots must be nondecreasing")
    x = float(x)

    # degree 0: indicators of [t_i, t_{i+1}), top interval closed
    b = ((t[:-1] <= x) & (x < t[1:])).astype(float)
    if x == t[-1]:
        nonempty = np.nonzero((t[:-1] < t[1:]) & (t[1:] == t[-1]))[0]
        if nonempty.size:
            b[nonempty[-1]] = 1.0

    for d in range(1, degree + 1):
        nb = t.size - d - 1
        new = np.zeros(nb)
        for i in range(nb):
            acc = 0.0
            den_l = t[i + d] - t[i]
            if den_l > 0.0 and b[i] != 0.0:
                acc += (x - t[i]) / den_l * b[i]
            den_r = t[i + d + 1] - t[i + 1]
            if den_r > 0.0 and b[i + 1] != 0.0:
                acc += (t[i + d + 1] - x) / den_r * b[i + 1]
            new[i] = acc
        b = new
    return b
