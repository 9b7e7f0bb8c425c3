"""
Cardinal B-splines, exact quasi-interpolation coefficients and the linear
quasi-interpolation operator on uniformly sampled 1-D data.

The operator evaluated here is

    Q_p f(x) = sum_n L_p(f_{n-[p/2]}, ..., f_{n+[p/2]}) B_p(x/h - n)

where B_p is the centered cardinal B-spline of degree p and L_p is a local
linear combination of samples with exact rational coefficients.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "P_MAX",
    "Rational",
    "BoundaryPolicy",
    "DomainError",
    "QuasiCoefficients",
    "UniformGrid1D",
    "StencilWindow",
    "central_factorial",
    "quasi_coefficients",
    "bspline_eval",
    "basis_values",
    "lp_apply",
    "active_index_set",
    "candidate_values",
    "combine",
    "normalize_weights",
    "quasi_interpolate",
]

P_MAX = 7

# Exact rationals are stdlib fractions (always normalized, positive denominator).
Rational = Fraction


class DomainError(ValueError):
    """Evaluation point outside the admissible domain of a grid."""

    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval


class BoundaryPolicy(str, enum.Enum):
    INTERIOR = "interior"
    CONSTANT = "constant"
    LINEAR = "linear"


def _check_degree(p):
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise TypeError(f"degree must be an integer, got {p!r}")
    if not 1 <= p <= P_MAX:
        raise ValueError(f"degree must lie in 1..{P_MAX}, got {p}")
    return int(p)


@lru_cache(maxsize=None)
def central_factorial(i: int, j: int) -> Fraction:
    """Central factorial number of the first kind t(i, j)."""
    if i < 0 or j < 0:
        raise ValueError("central_factorial is defined for i, j >= 0")
    if j > i:
        return Fraction(0)
    if j == i:
        return Fraction(1)
    if j == 0:
        return Fraction(0)
    if j == 1:
        prod = Fraction(1)
        for l in range(1, i):
            prod *= Fraction(i, 2) - l
        return prod
    return central_factorial(i - 2, j - 2) - Fraction(i - 2, 2) ** 2 * central_factorial(i - 2, j)


@dataclass(frozen=True)
class QuasiCoefficients:
    """Coefficients c_{p,j}, j = -[p/2] .. [p/2], of the local operator L_p."""

    degree: int
    coeffs: tuple

    @property
    def half_width(self) -> int:
        return self.degree // 2

    def __getitem__(self, j: int) -> Fraction:
        hw = self.half_width
        if not -hw <= j <= hw:
            raise IndexError(j)
        return self.coeffs[j + hw]

    def __len__(self):
        return len(self.coeffs)

    def as_float(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs])


@lru_cache(maxsize=None)
def quasi_coefficients(p: int) -> QuasiCoefficients:
    p = _check_degree(p)
    hw = p // 2
    ceil_half = (p + 2) // 2  # ceil((p + 1) / 2)
    coeffs = []
    for j in range(-hw, hw + 1):
        total = Fraction(0)
        for l in range(ceil_half):
            lead = central_factorial(2 * l + p + 1, p + 1) / math.comb(2 * l + p + 1, p + 1)
            for i in range(2 * l + 1):
                # Kronecker delta: only the i matching this j contributes
                if l - i + ceil_half == j + 1 + hw:
                    total += lead * Fraction((-1) ** i, math.factorial(i) * math.factorial(2 * l - i))
        coeffs.append(total)
    return QuasiCoefficients(p, tuple(coeffs))


def bspline_eval(p, u):
    """Centered cardinal B-spline of degree ``p`` at ``u``.

    Uses the Cox-de Boor recursion on the integer knots 0..p+1 shifted by
    (p+1)/2. Accepts scalars or arrays.
    """
    p = _check_degree(p)
    scalar = np.ndim(u) == 0
    t = np.asarray(u, dtype=float) + 0.5 * (p + 1)
    N = [((t >= k) & (t < k + 1)).astype(float) for k in range(p + 1)]
    for d in range(1, p + 1):
        N = [((t - k) * N[k] + (k + d + 1 - t) * N[k + 1]) / d for k in range(p + 1 - d)]
    out = N[0]
    return float(out) if scalar else out


def basis_values(p, u):
    """Nonzero shifted B-spline values around each abscissa ``u`` (grid units).

    Returns ``(n_lo, vals)`` with ``vals[:, j] = B_p(u - (n_lo + j))`` for
    j = 0..p. Every index with B_p(u - n) > 0 is among these; the last
    column vanishes exactly when u sits on a knot.
    """
    u = np.asarray(u, dtype=float).ravel()
    t = u + 0.5 * (p + 1)
    k = np.floor(t)
    tau = t - k
    vals = np.ones((u.size, 1))
    for d in range(1, p + 1):
        new = np.zeros((u.size, d + 1))
        for j in range(d + 1):
            acc = 0.0
            if j >= 1:
                acc = (tau + d - j) * vals[:, j - 1]
            if j < d:
                acc = acc + (j + 1 - tau) * vals[:, j]
            new[:, j] = acc / d
        vals = new
    n_lo = k.astype(np.int64) - p
    return n_lo, vals


def active_index_set(p: int, h: float, x_star: float) -> list:
    """Indices n with B_p(x*/h - n) > 0, ascending."""
    p = _check_degree(p)
    if h <= 0:
        raise ValueError("spacing must be positive")
    u = x_star / h
    half = 0.5 * (p + 1)
    lo = math.floor(u - half) + 1
    return [n for n in range(lo, lo + p + 1) if abs(u - n) < half]


@dataclass(frozen=True)
class StencilWindow:
    center: int
    values: np.ndarray

    @property
    def half_width(self) -> int:
        return (len(self.values) - 1) // 2


def lp_apply(coeffs: QuasiCoefficients, window) -> float:
    values = window.values if isinstance(window, StencilWindow) else window
    values = np.asarray(values, dtype=float)
    if values.shape != (len(coeffs),):
        raise ValueError(
            f"window of length {values.size} does not match {len(coeffs)} coefficients")
    return float(np.dot(coeffs.as_float(), values))


@dataclass(frozen=True)
class UniformGrid1D:
    """Samples ``samples[n] = f(origin + n * spacing)``."""

    origin: float
    spacing: float
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        arr = np.array(self.samples, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("samples must be a non-empty 1-D sequence")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "origin", float(self.origin))
        object.__setattr__(self, "spacing", float(self.spacing))

    def __len__(self):
        return self.samples.size

    @property
    def end(self) -> float:
        return self.origin + (self.samples.size - 1) * self.spacing

    def window(self, n: int, p: int) -> StencilWindow:
        hw = p // 2
        if n - hw < 0 or n + hw >= self.samples.size:
            raise IndexError(f"stencil of degree {p} at index {n} leaves the grid")
        return StencilWindow(n, self.samples[n - hw:n + hw + 1])


def candidate_values(samples: np.ndarray, p: int) -> np.ndarray:
    """L_p applied at every index; NaN where the stencil leaves the array."""
    c = quasi_coefficients(p).as_float()
    hw = p // 2
    out = np.full(samples.shape, np.nan)
    if samples.size > 2 * hw:
        out[hw:samples.size - hw] = lp_correlate(samples, c, 0)
    return out


def lp_correlate(a, c, axis):
    """'valid' L_p along ``axis`` in the form f_n + sum_j c_j (f_{n+j} - f_n).

    Exact on constant data, unlike a plain correlation whose float
    coefficients do not sum to exactly one.
    """
    a = np.asarray(a, dtype=float)
    hw = (c.size - 1) // 2
    n = a.shape[axis]

    def part(j):
        sl = [slice(None)] * a.ndim
        sl[axis] = slice(hw + j, n - hw + j)
        return a[tuple(sl)]

    center = part(0)
    acc = np.zeros_like(center)
    for j in range(-hw, hw + 1):
        if j:
            acc += c[j + hw] * (part(j) - center)
    return center + acc


def normalize_weights(C, active):
    """Zero the inactive entries and rescale each point's block to sum to one.

    B-spline values only sum to one up to rounding; normalizing here keeps the
    linear weights bit-identical to nonlinear weights built from a constant kernel.
    """
    C = np.where(active, C, 0.0)
    total = C.reshape(C.shape[0], -1).sum(axis=1)
    return C / total.reshape((-1,) + (1,) * (C.ndim - 1))


def combine(weights, candidates, active):
    """sum_k w_k L_k, anchored at the heaviest candidate so equal candidates come back exactly."""
    npts = weights.shape[0]
    w = weights.reshape(npts, -1)
    L = np.where(active, candidates, 0.0).reshape(npts, -1)
    anchor = L[np.arange(npts), np.argmax(w, axis=1)]
    return anchor + np.sum(w * np.where(active.reshape(npts, -1), L - anchor[:, None], 0.0), axis=1)


def extension_pad(p: int) -> int:
    """Ghost samples per side that make the whole sample span admissible."""
    return p // 2 + (p + 2) // 2


def extend_samples(samples: np.ndarray, pad: int, boundary) -> np.ndarray:
    boundary = BoundaryPolicy(boundary)
    if boundary is BoundaryPolicy.INTERIOR or pad == 0:
        return samples
    if boundary is BoundaryPolicy.CONSTANT:
        return np.pad(samples, pad, mode="edge")
    if samples.size < 2:
        raise ValueError("linear extrapolation needs at least two samples")
    k = np.arange(pad, 0, -1)
    left = samples[0] - k * (samples[1] - samples[0])
    right = samples[-1] + k[::-1] * (samples[-1] - samples[-2])
    return np.concatenate([left, samples, right])


def admissible_interval(n_samples: int, p: int, boundary, origin: float = 0.0, h: float = 1.0):
    """Closed interval of x where ``quasi_interpolate`` may be evaluated."""
    boundary = BoundaryPolicy(boundary)
    if boundary is not BoundaryPolicy.INTERIOR:
        return origin, origin + (n_samples - 1) * h
    hw = p // 2
    lo = hw + 0.5 * (p + 1) - 1
    hi = n_samples - hw - 0.5 * (p + 1)
    return origin + lo * h, origin + hi * h


def to_grid_units(x, origin, h):
    """Abscissae in grid units, snapping near-knot roundoff onto the knot."""
    u = (np.asarray(x, dtype=float).ravel() - origin) / h
    half = np.round(2.0 * u) / 2.0
    close = np.abs(u - half) <= 1e-11 * np.maximum(1.0, np.abs(u))
    return np.where(close, half, u)


class _Located:
    """Candidate indices and B-optimal weights for a batch of points."""

    __slots__ = ("index", "weights", "active")

    def __init__(self, index, weights, active):
        self.index = index
        self.weights = weights
        self.active = active


def locate(u, p, n_ext, offset, boundary, origin, h, n_samples):
    """Map grid-unit abscissae onto rows of candidate indices (extended array).

    Raises DomainError if an active candidate needs samples that do not exist.
    """
    n_lo, vals = basis_values(p, u)
    idx = n_lo[:, None] + np.arange(p + 1)[None, :] + offset
    active = vals > 0
    hw = p // 2
    bad = active & ((idx < hw) | (idx > n_ext - 1 - hw))
    lo, hi = admissible_interval(n_samples, p, boundary, origin, h)
    if boundary is not BoundaryPolicy.INTERIOR:
        x = origin + u * h
        bad_pts = (x < lo - 1e-12 * max(1.0, abs(lo))) | (x > hi + 1e-12 * max(1.0, abs(hi)))
    else:
        bad_pts = bad.any(axis=1)
    if np.any(bad_pts):
        first = origin + float(u[np.argmax(bad_pts)]) * h
        raise DomainError(
            f"x = {first:.17g} lies outside the admissible interval [{lo:.17g}, {hi:.17g}] "
            f"for degree {p} with boundary policy '{boundary.value}'", (lo, hi))
    np.clip(idx, 0, n_ext - 1, out=idx)
    return _Located(idx, vals, active)


def prepare(grid: UniformGrid1D, p: int, boundary):
    """Extended samples and their offset for a boundary policy."""
    p = _check_degree(p)
    boundary = BoundaryPolicy(boundary)
    if len(grid) < p + 1:
        raise ValueError(f"grid has {len(grid)} samples; degree {p} needs at least {p + 1}")
    pad = 0 if boundary is BoundaryPolicy.INTERIOR else extension_pad(p)
    ext = extend_samples(grid.samples, pad, boundary)
    return ext, pad


def quasi_interpolate(grid: UniformGrid1D, p: int, x_star, boundary=BoundaryPolicy.INTERIOR):
    """Linear quasi-interpolant Q_p of the grid data at ``x_star``."""
    boundary = BoundaryPolicy(boundary)
    ext, offset = prepare(grid, p, boundary)
    L = candidate_values(ext, p)
    u = to_grid_units(x_star, grid.origin, grid.spacing)
    loc = locate(u, p, ext.size, offset, boundary, grid.origin, grid.spacing, len(grid))
    out = combine(normalize_weights(loc.weights, loc.active), L[loc.index], loc.active)
    return float(out[0]) if np.ndim(x_star) == 0 else out.reshape(np.shape(x_star))
