"""
Nonlinear (WENO-type) weighting of the B-spline partition of unity.

The B-spline values C_k = B_p(x/h - k) are replaced by

    w_k = C_k Psi(I_k) / sum_j C_j Psi(I_j),   Psi = 1 / psi,

where I_k is a squared undivided difference over the stencil of L_p at k.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Optional

import numpy as np

from .core_spline import (
    BoundaryPolicy,
    UniformGrid1D,
    _check_degree,
    basis_values,
    candidate_values,
    combine,
    locate,
    prepare,
    to_grid_units,
)

__all__ = [
    "PsiKind",
    "WeightScheme",
    "difference_weights",
    "indicator_values",
    "smoothness_indicator",
    "psi_eval",
    "nonlinear_weights",
    "weights_from_indicators",
    "weno_interpolate",
    "weno_details",
]


class PsiKind(str, enum.Enum):
    S = "s"  # psi(x) = h**eps_exp + x
    C = "c"  # psi(x) = C + x / h
    D = "d"  # psi(x) = exp(x / h)


@dataclass(frozen=True)
class WeightScheme:
    kind: PsiKind = PsiKind.D
    epsilon_exponent: int = 2
    constant_c: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", PsiKind(self.kind))
        if isinstance(self.epsilon_exponent, bool) or int(self.epsilon_exponent) != self.epsilon_exponent \
                or self.epsilon_exponent < 1:
            raise ValueError(f"epsilon_exponent must be an integer >= 1, got {self.epsilon_exponent}")
        if not self.constant_c > 0:
            raise ValueError(f"constant_c must be positive, got {self.constant_c}")
        object.__setattr__(self, "epsilon_exponent", int(self.epsilon_exponent))
        object.__setattr__(self, "constant_c", float(self.constant_c))


def difference_weights(p: int) -> np.ndarray:
    """Signed binomial weights of the undivided difference used for degree p.

    Order p for even p, order p - 1 for odd p; both span 2[p/2] + 1 samples.
    """
    p = _check_degree(p)
    q = p - (p % 2)
    hw = q // 2
    return np.array([(-1) ** (j + 1) * math.comb(q, j + hw) for j in range(-hw, hw + 1)], dtype=float)


def indicator_values(samples: np.ndarray, p: int) -> np.ndarray:
    """Smoothness indicator at every index; NaN where the stencil leaves the array."""
    w = difference_weights(p)
    hw = (w.size - 1) // 2
    out = np.full(samples.shape, np.nan)
    if samples.size > 2 * hw:
        out[hw:samples.size - hw] = np.correlate(samples, w, mode="valid") ** 2
    return out


def smoothness_indicator(grid: UniformGrid1D, k: int, p: int, boundary=BoundaryPolicy.INTERIOR) -> float:
    ext, offset = prepare(grid, p, boundary)
    hw = p // 2
    i = k + offset
    if i - hw < 0 or i + hw >= ext.size:
        raise IndexError(f"indicator stencil of degree {p} at index {k} leaves the grid")
    window = ext[i - hw:i + hw + 1]
    return float(np.dot(difference_weights(p), window) ** 2)


def psi_eval(scheme: WeightScheme, x, h: float):
    if not h > 0:
        raise ValueError("h must be positive")
    if scheme.kind is PsiKind.S:
        return h ** scheme.epsilon_exponent + x
    if scheme.kind is PsiKind.C:
        return scheme.constant_c + x / h
    return np.exp(x / h)


def weights_from_indicators(C, I, h, scheme: WeightScheme, Psi: Optional[Callable] = None, axis=-1):
    """Normalized nonlinear weights from B-optimal weights ``C`` and indicators ``I``.

    Entries with C == 0 are outside the active set and receive zero weight
    regardless of their indicator. ``Psi`` overrides the scheme's kernel.
    """
    C = np.asarray(C, dtype=float)
    active = C > 0
    I = np.where(active, np.asarray(I, dtype=float), 0.0)
    if Psi is not None:
        alpha = C * Psi(I)
    elif scheme.kind is PsiKind.D:
        # exp(-I/h) relative to the smallest active indicator: same ratios, no overflow
        I_min = np.min(np.where(active, I, np.inf), axis=axis, keepdims=True)
        alpha = C * np.exp(-np.where(active, I - I_min, 0.0) / h)
    else:
        alpha = C / psi_eval(scheme, I, h)
    alpha = np.where(active, alpha, 0.0)
    total = np.sum(alpha, axis=axis, keepdims=True)
    assert np.all(total > 0), "degenerate weight normalization"
    return alpha / total


def nonlinear_weights(p: int, h: float, x_star: float, indicators: Mapping[int, float],
                      scheme: WeightScheme, Psi: Optional[Callable] = None) -> dict:
    """Weights w_k(x*) for each k in the active set of x* (grid origin at 0)."""
    p = _check_degree(p)
    n_lo, vals = basis_values(p, to_grid_units(x_star, 0.0, h))
    ks = [int(n_lo[0]) + j for j in range(p + 1) if vals[0, j] > 0]
    missing = [k for k in ks if k not in indicators]
    if missing:
        raise KeyError(f"indicators missing for active indices {missing}")
    C = np.array([vals[0, j] for j in range(p + 1) if vals[0, j] > 0])
    I = np.array([indicators[k] for k in ks], dtype=float)
    w = weights_from_indicators(C, I, h, scheme, Psi)
    return dict(zip(ks, w.tolist()))


def weno_details(grid: UniformGrid1D, p: int, x_star, scheme: WeightScheme,
                 boundary=BoundaryPolicy.INTERIOR, Psi: Optional[Callable] = None):
    """Per-point B-optimal weights, nonlinear weights, candidates and active mask."""
    boundary = BoundaryPolicy(boundary)
    ext, offset = prepare(grid, p, boundary)
    L = candidate_values(ext, p)
    ind = indicator_values(ext, p)
    u = to_grid_units(x_star, grid.origin, grid.spacing)
    loc = locate(u, p, ext.size, offset, boundary, grid.origin, grid.spacing, len(grid))
    I = np.where(loc.active, ind[loc.index], 0.0)
    w = weights_from_indicators(loc.weights, I, grid.spacing, scheme, Psi)
    cand = np.where(loc.active, L[loc.index], 0.0)
    return loc.weights, w, cand, loc.active


def weno_interpolate(grid: UniformGrid1D, p: int, x_star, scheme: WeightScheme = WeightScheme(),
                     boundary=BoundaryPolicy.INTERIOR, Psi: Optional[Callable] = None):
    """Nonlinear quasi-interpolant at ``x_star`` (scalar or array)."""
    _, w, cand, active = weno_details(grid, p, x_star, scheme, boundary, Psi)
    out = combine(w, cand, active)
    return float(out[0]) if np.ndim(x_star) == 0 else out.reshape(np.shape(x_star))
