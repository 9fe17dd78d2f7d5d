"""Savitzky-Golay: polynomial-preserving smoothing and derivatives.

The filter is a single convolution whose weights come from a local
least-squares polynomial fit, so any polynomial up to the fit degree
passes through untouched. That makes it the workhorse for
differentiating noisy records: ask the local fit for its slope instead
of differencing the noise.
"""

from pathlib import Path

import numpy as np

from torsmooth import SavGolSpec, Series, savgol_apply, savgol_coefficients
from torsmooth.svgplot import Layer, write_svg

OUT = Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

# the classical quadratic 5-point weights, straight from the filter
w = savgol_coefficients(SavGolSpec(window=5, degree=2, deriv=0))
print("5-point quadratic weights * 35:", np.round(w * 35).astype(int).tolist())

rng = np.random.default_rng(404)
n = 2000
xs = np.linspace(0.0, 10.0, n)
clean = np.sin(xs) + 0.3 * xs
dy_clean = np.cos(xs) + 0.3
s = Series(xs, clean + rng.normal(0.0, 0.08, n))

smoothed = savgol_apply(s, SavGolSpec(window=99, degree=3))
deriv = savgol_apply(s, SavGolSpec(window=99, degree=3, deriv=1))

# naive finite differences on the same noisy record, for contrast
naive = np.gradient(s.ys, s.xs)

rmse_s = float(np.sqrt(np.mean((smoothed.ys - clean) ** 2)))
rmse_d = float(np.sqrt(np.mean((deriv.ys - dy_clean) ** 2)))
rmse_n = float(np.sqrt(np.mean((naive - dy_clean) ** 2)))
print(f"smoothing rmse = {rmse_s:.4f}")
print(f"derivative rmse: savgol = {rmse_d:.4f}, finite differences = {rmse_n:.1f}")

write_svg(
    OUT / "savgol_smooth.svg",
    [
        Layer(s.xs, s.ys, kind="points", color="#9ecae1", label="raw"),
        Layer(smoothed.xs, smoothed.ys, color="#08306b", label="savgol 99/3"),
    ],
    title="Savitzky-Golay smoothing",
    x_label="x",
    y_label="y",
)
write_svg(
    OUT / "savgol_derivative.svg",
    [
        Layer(xs, naive, kind="points", color="#9ecae1", label="np.gradient of raw"),
        Layer(xs, dy_clean, color="#737373", width=1.0, label="true dy/dx"),
        Layer(deriv.xs, deriv.ys, color="#a63603", label="savgol 99/3 deriv=1"),
    ],
    title="Differentiating a noisy record",
    x_label="x",
    y_label="dy/dx",
)
print(f"wrote {OUT / 'savgol_smooth.svg'} and {OUT / 'savgol_derivative.svg'}")
