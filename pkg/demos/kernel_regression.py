"""Nadaraya-Watson kernel regression: kernels and bandwidths compared.

The estimate at x is a weighted mean of the ordinates, with weights
k((x - x_i)/b). The choice of kernel matters far less than the choice
of bandwidth b, which this script makes visible by sweeping both.
"""

from pathlib import Path

import numpy as np

from torsmooth import Kernel, Series, nadaraya_watson
from torsmooth.svgplot import Layer, write_svg

OUT = Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

rng = np.random.default_rng(202)
n = 400
xs = np.sort(rng.uniform(0.0, 4.0, n))
clean_of = lambda x: np.sin(3.0 * x) + 0.5 * x
s = Series(xs, clean_of(xs) + rng.normal(0.0, 0.25, n))
grid = np.linspace(0.05, 3.95, 500)

# same bandwidth, three kernels: the curves nearly coincide
b = 0.15
kernel_layers = [Layer(s.xs, s.ys, kind="points", color="#9ecae1", label="raw")]
for kernel, color in [
    (Kernel.GAUSSIAN, "#08306b"),
    (Kernel.EPANECHNIKOV, "#a63603"),
    (Kernel.MINIMUM_VARIANCE, "#31a354"),
]:
    fit = nadaraya_watson(s, kernel, b, grid)
    rmse = float(np.sqrt(np.mean((fit.ys - clean_of(grid)) ** 2)))
    print(f"kernel {kernel.value:<16} b={b}  rmse = {rmse:.4f}")
    kernel_layers.append(Layer(fit.xs, fit.ys, color=color, label=kernel.value))
write_svg(OUT / "kernels.svg", kernel_layers,
          title=f"Three kernels at bandwidth {b}", x_label="x", y_label="y")

# one kernel, three bandwidths spanning tight to far too wide
band_layers = [Layer(s.xs, s.ys, kind="points", color="#9ecae1", label="raw")]
for b, color in [(0.03, "#a63603"), (0.15, "#08306b"), (0.8, "#756bb1")]:
    fit = nadaraya_watson(s, Kernel.GAUSSIAN, b, grid)
    rmse = float(np.sqrt(np.mean((fit.ys - clean_of(grid)) ** 2)))
    print(f"gaussian bandwidth {b:<5} rmse = {rmse:.4f}")
    band_layers.append(Layer(fit.xs, fit.ys, color=color, label=f"b = {b}"))
write_svg(OUT / "bandwidths.svg", band_layers,
          title="Gaussian kernel, bandwidth sweep", x_label="x", y_label="y")
print(f"wrote {OUT / 'kernels.svg'} and {OUT / 'bandwidths.svg'}")
