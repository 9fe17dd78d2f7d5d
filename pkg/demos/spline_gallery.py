"""Cubic splines side by side: natural, clamped, pchip, smoothing.

Interpolants on sparse data first: the natural and clamped splines
differ only near the ends (the clamped spline is told its end slopes),
while pchip gives up second-derivative continuity to never overshoot.
Then the smoothing spline on dense noisy data, sweeping the penalty p
from interpolation (p = 0) toward a straight line (p large).
"""

import math
from pathlib import Path

import numpy as np

from torsmooth import (
    Series,
    SmoothParam,
    clamped_cubic,
    natural_cubic,
    pchip,
    smoothing_spline,
)
from torsmooth import splines
from torsmooth.svgplot import Layer, write_svg

OUT = Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

# step-like data: the classic overshoot trap for C2 splines
xs = np.array([0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
ys = np.array([0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0])
s = Series(xs, ys)
grid = np.linspace(0.0, 6.0, 600)

nat = splines.eval(natural_cubic(s), grid)
cla = splines.eval(clamped_cubic(s, 0.0, 0.0), grid)
mono = splines.eval(pchip(s), grid)
print(f"natural overshoot:  max = {np.max(nat):.4f}, min = {np.min(nat):.4f}")
print(f"pchip overshoot:    max = {np.max(mono):.4f}, min = {np.min(mono):.4f}")

write_svg(
    OUT / "spline_interpolants.svg",
    [
        Layer(xs, ys, kind="points", color="#08306b", radius=4.0, label="knots"),
        Layer(grid, nat, color="#a63603", label="natural"),
        Layer(grid, cla, color="#756bb1", label="clamped (slope 0)"),
        Layer(grid, mono, color="#31a354", label="pchip"),
    ],
    title="Interpolating cubics on a step",
    x_label="x",
    y_label="y",
)

rng = np.random.default_rng(505)
nx = np.linspace(0.0, 2.0 * math.pi, 300)
clean = np.sin(nx)
ns = Series(nx, clean + rng.normal(0.0, 0.2, 300))

layers = [Layer(ns.xs, ns.ys, kind="points", color="#9ecae1", label="raw")]
for p, color in [(0.0, "#cb6751"), (1e-2, "#a63603"), (1.0, "#08306b"), (1e6, "#756bb1")]:
    g = splines.eval(smoothing_spline(ns, SmoothParam(p)), nx)
    rss = float(np.sum((ns.ys - g) ** 2))
    rmse = float(np.sqrt(np.mean((g - clean) ** 2)))
    print(f"p = {p:<8g} rss = {rss:9.4f}  rmse vs clean = {rmse:.4f}")
    layers.append(Layer(nx, g, color=color, label=f"p = {p:g}"))
write_svg(OUT / "smoothing_spline.svg", layers,
          title="Smoothing spline penalty sweep", x_label="x", y_label="y")
print(f"wrote {OUT / 'spline_interpolants.svg'} and {OUT / 'smoothing_spline.svg'}")
