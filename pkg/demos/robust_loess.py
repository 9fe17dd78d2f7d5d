"""Loess: local regression, the span knob, and robustness iterations.

Two experiments. First, the span sweep: the fraction of the data
entering each local fit trades variance against bias exactly like a
kernel bandwidth. Second, contamination: a handful of wild points drag
the plain fit visibly off the trend, while two robustness iterations
(bisquare reweighting of large residuals) pull it back.
"""

from pathlib import Path

import numpy as np

from torsmooth import LoessSpec, Series, loess_smooth
from torsmooth.svgplot import Layer, write_svg

OUT = Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

rng = np.random.default_rng(303)
n = 500
xs = np.linspace(0.0, 10.0, n)
clean = np.sin(xs) * np.exp(-0.08 * xs)
noisy = clean + rng.normal(0.0, 0.12, n)
s = Series(xs, noisy)

span_layers = [Layer(xs, noisy, kind="points", color="#9ecae1", label="raw")]
for span, color in [(0.05, "#a63603"), (0.25, "#08306b"), (0.8, "#756bb1")]:
    fit = loess_smooth(s, LoessSpec(span=span, degree=2))
    rmse = float(np.sqrt(np.mean((fit.ys - clean) ** 2)))
    print(f"span {span:<5} degree 2  rmse = {rmse:.4f}")
    span_layers.append(Layer(fit.xs, fit.ys, color=color, label=f"span {span}"))
write_svg(OUT / "loess_span.svg", span_layers,
          title="Loess span sweep", x_label="x", y_label="y")

# contaminate 2 percent of the points with gross errors
bad = rng.choice(n, size=10, replace=False)
dirty = noisy.copy()
dirty[bad] += rng.choice([-1.0, 1.0], size=10) * rng.uniform(1.5, 3.0, 10)
sd = Series(xs, dirty)

plain = loess_smooth(sd, LoessSpec(span=0.25, degree=2, robust_iters=0))
robust = loess_smooth(sd, LoessSpec(span=0.25, degree=2, robust_iters=2))
for name, fit in [("plain", plain), ("robust x2", robust)]:
    rmse = float(np.sqrt(np.mean((fit.ys - clean) ** 2)))
    worst = float(np.max(np.abs(fit.ys - clean)))
    print(f"{name:<10} rmse = {rmse:.4f}  worst deviation = {worst:.4f}")

write_svg(
    OUT / "loess_robust.svg",
    [
        Layer(xs, dirty, kind="points", color="#9ecae1", label="contaminated"),
        Layer(xs, clean, color="#737373", width=1.0, label="true trend"),
        Layer(plain.xs, plain.ys, color="#a63603", label="robust_iters=0"),
        Layer(robust.xs, robust.ys, color="#08306b", label="robust_iters=2"),
    ],
    title="Loess with 2% gross contamination",
    x_label="x",
    y_label="y",
)
print(f"wrote {OUT / 'loess_span.svg'} and {OUT / 'loess_robust.svg'}")
