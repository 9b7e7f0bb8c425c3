"""
Tensor-product quasi-interpolation of gridded data in one to three dimensions.

Linear mode weights each block value L_p(f_{n,p}) with prod_l B_{p_l}(x_l/h - n_l).
Nonlinear mode weights candidate n with

    alpha_n = prod_l C_l(n_l) Psi(I_l(n)),   W_n = alpha_n / sum_m alpha_m,

normalized over the whole active block (``normalization="line"`` instead
normalizes each axis factor along its grid line and renormalizes the
product). The axis-l indicator I_l(n) is the largest axis-l line indicator
over the candidate's stencil block (``footprint="stencil"``) or only the one
on the line through n (``footprint="line"``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .core_spline import (
    BoundaryPolicy,
    _check_degree,
    combine,
    normalize_weights,
    extend_samples,
    extension_pad,
    locate,
    lp_correlate,
    quasi_coefficients,
    to_grid_units,
)
from .weno import PsiKind, WeightScheme, difference_weights, psi_eval, weights_from_indicators

__all__ = ["Mode", "TensorGrid", "degree_vector", "tensor_lp", "tensor_interpolate", "TensorEvaluator"]

_CHUNK_ELEMENTS = 1 << 21


class Mode(str, enum.Enum):
    LINEAR = "linear"
    WENO = "weno"


@dataclass(frozen=True)
class TensorGrid:
    """Row-major samples ``samples[n] = f(origin + n * spacing)`` (last axis fastest)."""

    origin: tuple
    spacing: float
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.samples, dtype=float)
        if not 1 <= arr.ndim <= 3:
            raise ValueError(f"tensor grids have 1 to 3 axes, got {arr.ndim}")
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        origin = tuple(float(o) for o in np.atleast_1d(self.origin))
        if len(origin) != arr.ndim:
            raise ValueError(f"origin has {len(origin)} components for a {arr.ndim}-D grid")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "spacing", float(self.spacing))

    @property
    def ndim(self) -> int:
        return self.samples.ndim

    @property
    def dims(self) -> tuple:
        return self.samples.shape


def degree_vector(p, k: int) -> tuple:
    if np.ndim(p) == 0:
        p = (p,) * k
    p = tuple(_check_degree(int(q)) for q in p)
    if len(p) != k:
        raise ValueError(f"degree vector has {len(p)} entries for a {k}-D grid")
    return p


def tensor_lp(coeffs_per_axis: Sequence, block) -> float:
    """Nested sum of c_{p1,j1} ... c_{pk,jk} f_{n+j} over a block."""
    block = np.asarray(block, dtype=float)
    shape = tuple(len(c) for c in coeffs_per_axis)
    if block.shape != shape:
        raise ValueError(f"block shape {block.shape} does not match coefficient lengths {shape}")
    out = block
    for c in coeffs_per_axis:
        out = np.tensordot(np.asarray([float(v) for v in c], dtype=float), out, axes=(0, 0))
    return float(out)


def _correlate_axis(a, w, axis):
    """'valid' correlation of ``a`` with weights ``w`` along ``axis``."""
    n = a.shape[axis]
    m = w.size
    out = 0.0
    for j in range(m):
        sl = [slice(None)] * a.ndim
        sl[axis] = slice(j, n - m + 1 + j)
        out = out + w[j] * a[tuple(sl)]
    return out


def _max_axis(a, width, axis):
    """'valid' running maximum of ``width`` entries along ``axis``."""
    if width == 1:
        return a
    return np.lib.stride_tricks.sliding_window_view(a, width, axis=axis).max(axis=-1)


def _crop(a, widths):
    sl = tuple(slice(w, a.shape[i] - w) for i, w in enumerate(widths))
    return a[sl]


class TensorEvaluator:
    """Candidate and indicator tables for one grid, degree vector and boundary policy.

    Built once; evaluation afterwards only reads the tables.
    """

    def __init__(self, grid: TensorGrid, p, boundary=BoundaryPolicy.INTERIOR, footprint: str = "stencil",
                 normalization: str = "global"):
        if footprint not in ("stencil", "line"):
            raise ValueError(f"footprint must be 'stencil' or 'line', got {footprint!r}")
        if normalization not in ("global", "line"):
            raise ValueError(f"normalization must be 'global' or 'line', got {normalization!r}")
        self.normalization = normalization
        self.grid = grid
        self.footprint = footprint
        self.p = degree_vector(p, grid.ndim)
        self.boundary = BoundaryPolicy(boundary)
        for l, (n, q) in enumerate(zip(grid.dims, self.p)):
            if n < q + 1:
                raise ValueError(f"axis {l} has {n} samples; degree {q} needs at least {q + 1}")
        ext = grid.samples
        pads = []
        for l, q in enumerate(self.p):
            pad = 0 if self.boundary is BoundaryPolicy.INTERIOR else extension_pad(q)
            if pad:
                ext = np.apply_along_axis(extend_samples, l, ext, pad, self.boundary)
            pads.append(pad)
        self.pads = tuple(pads)
        self.ext_dims = ext.shape
        self.hw = tuple(q // 2 for q in self.p)
        L = ext
        for l, q in enumerate(self.p):
            L = lp_correlate(L, quasi_coefficients(q).as_float(), l)
        self.L = np.ascontiguousarray(L)
        self.I = []
        for l, q in enumerate(self.p):
            d = _correlate_axis(ext, difference_weights(q), l) ** 2
            for m in range(grid.ndim):
                if m == l:
                    continue
                if footprint == "stencil":
                    d = _max_axis(d, 2 * self.hw[m] + 1, m)
                else:
                    d = _crop(d, [self.hw[m] if a == m else 0 for a in range(grid.ndim)])
            self.I.append(np.ascontiguousarray(d))

    def _locate(self, x):
        g = self.grid
        out = []
        for l, q in enumerate(self.p):
            u = to_grid_units(x[:, l], g.origin[l], g.spacing)
            loc = locate(u, q, self.ext_dims[l], self.pads[l], self.boundary,
                         g.origin[l], g.spacing, g.dims[l])
            # index into the cropped tables
            out.append((loc.index - self.hw[l], loc.weights, loc.active))
        return out

    def _block(self, table, idx):
        k = len(idx)
        grids = []
        for l, ix in enumerate(idx):
            shape = [ix.shape[0]] + [1] * k
            shape[l + 1] = ix.shape[1]
            grids.append(np.clip(ix, 0, table.shape[l] - 1).reshape(shape))
        return table[tuple(grids)]

    @staticmethod
    def _axis_view(arr, l, k):
        shape = [arr.shape[0]] + [1] * k
        shape[l + 1] = arr.shape[1]
        return arr.reshape(shape)

    def weights(self, x, mode=Mode.LINEAR, scheme: WeightScheme = WeightScheme(),
                Psi: Optional[Callable] = None):
        """Block weights (npts, p1+1, ..., pk+1) and the matching candidate block."""
        k = self.grid.ndim
        x = np.asarray(x, dtype=float)
        x = x.reshape(-1, 1) if (k == 1 and x.ndim < 2) else np.atleast_2d(x)
        if x.shape[1] != k:
            raise ValueError(f"points have {x.shape[1]} coordinates for a {k}-D grid")
        mode = Mode(mode)
        located = self._locate(x)
        idx = [ix for ix, _, _ in located]
        cand = self._block(self.L, idx)
        active = np.ones(cand.shape, dtype=bool)
        for l, (_, _, act) in enumerate(located):
            active = active & self._axis_view(act, l, k)
        cand = np.where(active, cand, 0.0)
        if mode is Mode.LINEAR:
            W = np.ones(cand.shape)
            for l, (_, B, _) in enumerate(located):
                W = W * self._axis_view(B, l, k)
            return normalize_weights(W, active), cand, active
        h = self.grid.spacing
        if self.normalization == "global":
            C = np.ones(cand.shape)
            for l, (_, B, _) in enumerate(located):
                C = C * self._axis_view(B, l, k)
            C = np.where(active, C, 0.0)
            Is = [self._block(self.I[l], idx) for l in range(k)]
            flat = (C.shape[0], -1)
            if Psi is None and scheme.kind is PsiKind.D:
                # prod_l exp(-I_l/h) = exp(-sum_l I_l / h)
                W = weights_from_indicators(C.reshape(flat), sum(Is).reshape(flat), h, scheme)
            else:
                kernel = Psi or (lambda I: 1.0 / psi_eval(scheme, I, h))
                alpha = np.where(active, C * np.prod([kernel(np.where(active, I, 0.0)) for I in Is], axis=0), 0.0)
                total = alpha.reshape(flat).sum(axis=1)
                assert np.all(total > 0), "degenerate weight normalization"
                W = alpha / total.reshape((-1,) + (1,) * k)
            return W.reshape(C.shape), cand, active
        W = np.ones(cand.shape)
        for l, (_, B, act) in enumerate(located):
            I = self._block(self.I[l], idx)
            C = np.broadcast_to(self._axis_view(np.where(act, B, 0.0), l, k), cand.shape)
            W = W * weights_from_indicators(C, I, h, scheme, Psi, axis=l + 1)
        W = np.where(active, W, 0.0)
        total = W.reshape(W.shape[0], -1).sum(axis=1)
        W = W / total.reshape((-1,) + (1,) * k)
        return W, cand, active

    def __call__(self, x, mode=Mode.LINEAR, scheme: WeightScheme = WeightScheme(),
                 Psi: Optional[Callable] = None):
        x = np.asarray(x, dtype=float)
        x = x.reshape(-1, 1) if (self.grid.ndim == 1 and x.ndim < 2) else np.atleast_2d(x)
        block = int(np.prod([q + 1 for q in self.p]))
        chunk = max(1, _CHUNK_ELEMENTS // block)
        out = np.empty(x.shape[0])
        for start in range(0, x.shape[0], chunk):
            W, cand, active = self.weights(x[start:start + chunk], mode, scheme, Psi)
            out[start:start + chunk] = combine(W, cand, active)
        return out


def tensor_interpolate(grid: TensorGrid, p, x_star, mode=Mode.LINEAR,
                       scheme: WeightScheme = WeightScheme(), boundary=BoundaryPolicy.INTERIOR,
                       Psi: Optional[Callable] = None, footprint: str = "stencil"):
    """Evaluate the tensor-product quasi-interpolant at one point (k-vector) or many (npts, k)."""
    x = np.asarray(x_star, dtype=float)
    single = x.ndim == 0 or (x.ndim == 1 and grid.ndim > 1)
    pts = x.reshape(1, -1) if single else x.reshape(-1, grid.ndim)
    out = TensorEvaluator(grid, p, boundary, footprint)(pts, mode, scheme, Psi)
    return float(out[0]) if single else out
