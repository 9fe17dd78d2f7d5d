"""Minimal static SVG line charts.

Batch runs end in figures, not interactive sessions, so all this has to
do is draw raw points and fitted lines into a fixed 960x540 viewBox
with sane axes. No external plotting dependency; the output is plain
SVG 1.1 text and a pure function of the data, which keeps figure files
reproducible byte for byte.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["Layer", "render", "write_svg"]

WIDTH, HEIGHT = 960, 540
_M_LEFT, _M_RIGHT, _M_TOP, _M_BOTTOM = 76, 24, 46, 58

# drawing more than a few points per horizontal pixel changes nothing
# visually, so dense layers are thinned before rendering
_MAX_VERTICES = 8000


@dataclass(frozen=True)
class Layer:
    """One plotted series: scattered points or a connected line."""

    xs: np.ndarray
    ys: np.ndarray
    kind: str = "line"  # "line" or "points"
    color: str = "#08306b"
    label: str = ""
    width: float = 1.8
    radius: float = 2.0

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float).ravel()
        ys = np.asarray(self.ys, dtype=float).ravel()
        if xs.size != ys.size or xs.size == 0:
            raise ValueError("layer needs equal-length nonempty xs and ys")
        if self.kind not in ("line", "points"):
            raise ValueError(f"kind must be 'line' or 'points', got {self.kind!r}")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)


def _nice_ticks(lo, hi, target=6):
    """Round tick locations covering [lo, hi] on a 1-2-5 ladder."""
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / max(target - 1, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        # snap tiny residue to zero so labels never read "-0"
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


def _thin(a, m):
    if a.size <= m:
        return a
    idx = np.linspace(0, a.size - 1, m).round().astype(int)
    return a[idx]


def render(layers, title="", x_label="", y_label="") -> str:
    """Render layers into an SVG document string."""
    layers = list(layers)
    if not layers:
        raise ValueError("nothing to plot")
    x_lo = min(l.xs.min() for l in layers)
    x_hi = max(l.xs.max() for l in layers)
    y_lo = min(l.ys.min() for l in layers)
    y_hi = max(l.ys.max() for l in layers)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        pad = 0.5 * max(1.0, abs(y_lo))
        y_lo, y_hi = y_lo - pad, y_hi + pad
    # 4 percent data margin so curves do not touch the frame
    xpad = 0.04 * (x_hi - x_lo)
    ypad = 0.04 * (y_hi - y_lo)
    x_lo, x_hi = x_lo - xpad, x_hi + xpad
    y_lo, y_hi = y_lo - ypad, y_hi + ypad

    px0, px1 = _M_LEFT, WIDTH - _M_RIGHT
    py0, py1 = HEIGHT - _M_BOTTOM, _M_TOP  # y axis points up

    def sx(x):
        return px0 + (x - x_lo) / (x_hi - x_lo) * (px1 - px0)

    def sy(y):
        return py0 + (y - y_lo) / (y_hi - y_lo) * (py1 - py0)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]
    # frame and ticks
    frame = (
        f'<rect x="{px0}" y="{py1}" width="{px1 - px0}" height="{py0 - py1}" '
        f'fill="none" stroke="#333333" stroke-width="1"/>'
    )
    out.append(frame)
    font = 'font-family="Helvetica,Arial,sans-serif"'
    for t in _nice_ticks(x_lo + xpad, x_hi - xpad):
        if not x_lo <= t <= x_hi:
            continue
        x = sx(t)
        out.append(
            f'<line x1="{x:.2f}" y1="{py0}" x2="{x:.2f}" y2="{py0 + 5}" '
            f'stroke="#333333" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{x:.2f}" y="{py0 + 20}" {font} font-size="13" '
            f'fill="#333333" text-anchor="middle">{t:g}</text>'
        )
    for t in _nice_ticks(y_lo + ypad, y_hi - ypad):
        if not y_lo <= t <= y_hi:
            continue
        y = sy(t)
        out.append(
            f'<line x1="{px0 - 5}" y1="{y:.2f}" x2="{px0}" y2="{y:.2f}" '
            f'stroke="#333333" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{px0 - 9}" y="{y + 4.5:.2f}" {font} font-size="13" '
            f'fill="#333333" text-anchor="end">{t:g}</text>'
        )
    if title:
        out.append(
            f'<text x="{(px0 + px1) / 2:.1f}" y="28" {font} font-size="17" '
            f'fill="#111111" text-anchor="middle">{_esc(title)}</text>'
        )
    if x_label:
        out.append(
            f'<text x="{(px0 + px1) / 2:.1f}" y="{HEIGHT - 14}" {font} '
            f'font-size="14" fill="#333333" text-anchor="middle">'
            f"{_esc(x_label)}</text>"
        )
    if y_label:
        cx, cy = 22, (py0 + py1) / 2
        out.append(
            f'<text x="{cx}" y="{cy:.1f}" {font} font-size="14" '
            f'fill="#333333" text-anchor="middle" '
            f'transform="rotate(-90 {cx} {cy:.1f})">{_esc(y_label)}</text>'
        )

    legend_y = py1 + 16
    for l in layers:
        xs, ys = _thin(l.xs, _MAX_VERTICES), _thin(l.ys, _MAX_VERTICES)
        if l.kind == "points":
            out.append(f'<g fill="{l.color}" fill-opacity="0.55">')
            out.extend(
                f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="{l.radius}"/>'
                for x, y in zip(xs.tolist(), ys.tolist())
            )
            out.append("</g>")
        else:
            pts = " ".join(
                f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs.tolist(), ys.tolist())
            )
            out.append(
                f'<polyline points="{pts}" fill="none" stroke="{l.color}" '
                f'stroke-width="{l.width}" stroke-linejoin="round"/>'
            )
        if l.label:
            out.append(
                f'<rect x="{px1 - 150}" y="{legend_y - 9}" width="18" '
                f'height="4" fill="{l.color}"/>'
            )
            out.append(
                f'<text x="{px1 - 126}" y="{legend_y - 3}" {font} '
                f'font-size="13" fill="#333333">{_esc(l.label)}</text>'
            )
            legend_y += 18
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(text):
    return (
        str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def write_svg(path, layers, title="", x_label="", y_label="") -> None:
    doc = render(layers, title=title, x_label=x_label, y_label=y_label)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(doc)
