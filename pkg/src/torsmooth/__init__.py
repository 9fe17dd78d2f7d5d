"""torsmooth: scatterplot smoothing and torsion-test data reduction.

The package has two halves. The smoothing half covers the classical
local methods for noisy 2-D records: binning and local averages, kernel
(Nadaraya-Watson) regression, robust loess, Savitzky-Golay filters, and
cubic splines (interpolating, shape-preserving, smoothing). The
reduction half turns torque-twist records from solid-bar torsion tests
into surface shear stress-strain curves, where those smoothers earn
their keep: the stress formulas differentiate measured data.

Most users want ``Series``, one smoother, and (for torsion work)
``reduce`` with a ``ReductionConfig``. The ``torsmooth`` command line
tool wraps the same pipeline for batch use.
"""

from .errors import (
    AllWeightsZeroError,
    DegreesOfFreedomError,
    EmptyInputError,
    EmptyResultError,
    EmptyWindowError,
    InsufficientDataError,
    InvalidKnotsError,
    InvalidSpecError,
    LengthMismatchError,
    NearSingularWeightError,
    NonUniformSpacingError,
    ParseError,
    RankDeficientError,
    SeriesTooShortError,
    SpanTooSmallError,
    StageError,
    TooFewPointsError,
    TooManyBinsError,
    TorsmoothError,
    WouldEmptyError,
    ZeroTwistError,
)
from .kernels import Kernel, kernel_weight, nadaraya_watson
from .loess import LoessSpec, loess_smooth, loess_smooth_windowed
from .outliers import OutlierReport, detect_outliers, remove_outliers
from .polyfit import PolyFit, residual_variance, wls_polyfit
from .savgol import SavGolSpec, savgol_apply, savgol_coefficients
from .series import (
    BinStrategy,
    FixedWidth,
    NearestNeighbors,
    Series,
    bin_average,
    drop_nonpositive,
    from_columns,
    local_average,
    resample_uniform,
)
from .smoothers import SmootherSpec, apply_smoother
from .splines import (
    PiecewisePoly,
    SmoothParam,
    bspline_basis,
    clamped_cubic,
    natural_cubic,
    pchip,
    smoothing_spline,
)
from .torsion import (
    ReductionConfig,
    SavGolDerivative,
    SpecimenGeometry,
    SplineDerivative,
    StressStrain,
    TorqueTwist,
    elastic_profile,
    power_law_profile,
    reduce,
    shear_strain,
    shear_strain_rate,
    stress_fields_backofen,
    stress_hill,
    torque_curve,
    torque_from_stress_profile,
    voce_profile,
)

__version__ = "0.1.0"
