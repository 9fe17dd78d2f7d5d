"""Uniform front door over the individual smoothing routines.

Downstream code (the reduction pipeline, the command line tool) wants to
carry "which smoother, with which settings" as a single value without
caring which module implements it. ``SmootherSpec`` is that value: a
method tag plus the method's own spec object, built through the class
methods so the pairing cannot go wrong. ``apply_smoother`` dispatches
and always hands back a series on the *same* abscissas as the input,
whatever the underlying routine natively produces.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpecError
from .kernels import Kernel, nadaraya_watson
from .loess import LoessSpec, loess_smooth
from .savgol import SavGolSpec, savgol_apply
from .series import Series
from .splines import SmoothParam, eval as spline_eval, smoothing_spline

METHODS = ("loess", "savgol", "kernel", "smoothing-spline")


@dataclass(frozen=True)
class SmootherSpec:
    """Tagged choice of smoothing method.

    Do not call the constructor directly; use :meth:`loess`,
    :meth:`savgol`, :meth:`kernel` or :meth:`smoothing_spline` so the
    parameter object always matches the tag.
    """

    method: str
    params: object

    def __post_init__(self):
        if self.method not in METHODS:
            raise InvalidSpecError(
                f"unknown smoother method {self.method!r}, "
                f"expected one of {METHODS}"
            )
        expected = {
            "loess": LoessSpec,
            "savgol": SavGolSpec,
            "kernel": _KernelParams,
            "smoothing-spline": SmoothParam,
        }[self.method]
        if not isinstance(self.params, expected):
            raise InvalidSpecError(
                f"smoother {self.method!r} needs {expected.__name__} "
                f"parameters, got {type(self.params).__name__}"
            )

    @classmethod
    def loess(cls, spec: LoessSpec) -> "SmootherSpec":
        return cls("loess", spec)

    @classmethod
    def savgol(cls, spec: SavGolSpec) -> "SmootherSpec":
        return cls("savgol", spec)

    @classmethod
    def kernel(cls, kernel: Kernel, bandwidth: float) -> "SmootherSpec":
        return cls("kernel", _KernelParams(kernel, float(bandwidth)))

    @classmethod
    def smoothing_spline(cls, param: SmoothParam) -> "SmootherSpec":
        return cls("smoothing-spline", param)


@dataclass(frozen=True)
class _KernelParams:
    """Kernel regression needs two values, so they travel together."""

    kernel: Kernel
    bandwidth: float

    def __post_init__(self):
        if not (np.isfinite(self.bandwidth) and self.bandwidth > 0.0):
            raise InvalidSpecError(
                f"bandwidth must be finite and positive, got {self.bandwidth}"
            )


def apply_smoother(s: Series, spec: SmootherSpec) -> Series:
    """Run the selected smoother and return fitted values on ``s.xs``.

    Errors raised by the underlying routine (span too small, series too
    short, non-uniform spacing, ...) propagate unchanged; callers that
    need stage attribution wrap this call themselves.
    """
    if spec.method == "loess":
        return loess_smooth(s, spec.params)
    if spec.method == "savgol":
        return savgol_apply(s, spec.params)
    if spec.method == "kernel":
        p = spec.params
        return nadaraya_watson(s, p.kernel, p.bandwidth, s.xs)
    pp = smoothing_spline(s, spec.params)
    return Series(s.xs, spline_eval(pp, s.xs))
