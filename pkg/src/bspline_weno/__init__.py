"""B-spline quasi-interpolation with nonlinear (WENO-type) weights on uniform grids."""

from .core_spline import (
    P_MAX,
    BoundaryPolicy,
    DomainError,
    QuasiCoefficients,
    Rational,
    StencilWindow,
    UniformGrid1D,
    active_index_set,
    bspline_eval,
    central_factorial,
    lp_apply,
    quasi_coefficients,
    quasi_interpolate,
)
from .tensor import Mode, TensorEvaluator, TensorGrid, tensor_interpolate, tensor_lp
from .weno import PsiKind, WeightScheme, nonlinear_weights, smoothness_indicator, weno_interpolate

__version__ = "0.1.0"
