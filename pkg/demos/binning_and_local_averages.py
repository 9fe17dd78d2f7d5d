"""Bin averaging and moving local averages on a noisy decaying tone.

The cheapest smoothers in the package: collapse the record to one mean
point per bin, or evaluate a windowed mean on a grid of your choosing.
Both are worth trying before anything fancier, because when they are
enough, they are also the easiest to explain.
"""

from pathlib import Path

import numpy as np

from torsmooth import (
    BinStrategy,
    FixedWidth,
    NearestNeighbors,
    Series,
    bin_average,
    local_average,
)
from torsmooth.svgplot import Layer, write_svg

OUT = Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

rng = np.random.default_rng(101)
n = 1500
xs = np.sort(rng.uniform(0.0, 10.0, n))  # irregular sampling on purpose
clean = np.exp(-xs / 6.0) * np.sin(2.0 * xs)
s = Series(xs, clean + rng.normal(0.0, 0.15, n))

binned = bin_average(s, BinStrategy("equal_width", 40))
counted = bin_average(s, BinStrategy("equal_count", 40))

grid = np.linspace(0.2, 9.8, 400)
widthed = local_average(s, FixedWidth(0.5), grid)
neighbored = local_average(s, NearestNeighbors(75), grid)

for name, fit in [
    ("equal-width bins", binned),
    ("equal-count bins", counted),
    ("fixed-width window", widthed),
    ("nearest-neighbor window", neighbored),
]:
    rmse = float(np.sqrt(np.mean((fit.ys - np.exp(-fit.xs / 6.0) * np.sin(2.0 * fit.xs)) ** 2)))
    print(f"{name:<24} n_out={fit.n:<4} rmse vs clean = {rmse:.4f}")

write_svg(
    OUT / "binning.svg",
    [
        Layer(s.xs, s.ys, kind="points", color="#9ecae1", label="raw"),
        Layer(binned.xs, binned.ys, color="#08306b", label="equal-width bins"),
        Layer(counted.xs, counted.ys, color="#a63603", label="equal-count bins"),
    ],
    title="Bin averaging, 40 bins",
    x_label="x",
    y_label="y",
)
write_svg(
    OUT / "local_averages.svg",
    [
        Layer(s.xs, s.ys, kind="points", color="#9ecae1", label="raw"),
        Layer(widthed.xs, widthed.ys, color="#08306b", label="width 0.5"),
        Layer(neighbored.xs, neighbored.ys, color="#31a354", label="75 neighbors"),
    ],
    title="Moving local averages",
    x_label="x",
    y_label="y",
)
print(f"wrote {OUT / 'binning.svg'} and {OUT / 'local_averages.svg'}")
