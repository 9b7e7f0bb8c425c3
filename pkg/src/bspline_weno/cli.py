"""
Command-line front end.

    bspline-weno interp GRID [--points FILE | --refine R] [options]
    bspline-weno convergence (--table N | --function F --degree p | --self-test) [options]
    bspline-weno compare (GRID | --function F --m M) [options]
    bspline-weno sample --function F --m M [--ghost G]

Exit status: 0 on success, 2 on malformed input or configuration, 3 when an
evaluation point is outside the admissible domain.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core_spline import BoundaryPolicy, DomainError, P_MAX, UniformGrid1D, admissible_interval, quasi_interpolate
from .tensor import Mode, TensorEvaluator, TensorGrid, degree_vector
from .testbed import (
    Region,
    RefinementStudy,
    TestFunction,
    dense_points,
    dumps_json,
    evaluate_function,
    fmt,
    orders_from_errors,
    overshoot_report,
    run_refinement,
    run_table,
    sample,
    _cut_cells_mask,
    _region_mask_1d,
)
from .weno import PsiKind, WeightScheme, weno_interpolate

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN = 0, 2, 3


class InputError(ValueError):
    """Malformed input file or invalid configuration (exit 2)."""


# ---------------------------------------------------------------- grid files

@dataclass(frozen=True)
class GridFile:
    dims: tuple
    origin: tuple
    spacing: float
    values: np.ndarray  # shape == dims

    @property
    def ndim(self) -> int:
        return len(self.dims)

    def to_grid(self):
        if self.ndim == 1:
            return UniformGrid1D(self.origin[0], self.spacing, self.values)
        return TensorGrid(self.origin, self.spacing, self.values)

    @classmethod
    def from_grid(cls, grid) -> "GridFile":
        if isinstance(grid, UniformGrid1D):
            return cls((len(grid),), (grid.origin,), grid.spacing, np.asarray(grid.samples))
        return cls(tuple(grid.dims), tuple(grid.origin), grid.spacing, np.asarray(grid.samples))


_HEADER = ("dims", "origin", "spacing")


def parse_grid(text: str, name: str = "<grid>") -> GridFile:
    lines = text.splitlines()
    header = {}
    pos = 0
    for key in _HEADER:
        while pos < len(lines) and not lines[pos].strip():
            pos += 1
        if pos == len(lines):
            raise InputError(f"{name}: missing '{key}:' header line")
        line = lines[pos]
        head, sep, rest = line.partition(":")
        if not sep or head.strip() != key:
            raise InputError(f"{name}:{pos + 1}: expected '{key}:' header, got {line.strip()!r}")
        fields = rest.split()
        try:
            if key == "dims":
                vals = tuple(int(f) for f in fields)
            else:
                vals = tuple(float(f) for f in fields)
        except ValueError:
            raise InputError(f"{name}:{pos + 1}: non-numeric field in {line.strip()!r}") from None
        header[key] = (vals, pos + 1)
        pos += 1
    dims, dline = header["dims"]
    origin, oline = header["origin"]
    svals, sline = header["spacing"]
    if not 1 <= len(dims) <= 3 or any(n < 1 for n in dims):
        raise InputError(f"{name}:{dline}: dims must be 1 to 3 positive integers")
    if len(origin) != len(dims):
        raise InputError(f"{name}:{oline}: origin has {len(origin)} components, dims has {len(dims)}")
    if len(svals) != 1 or not svals[0] > 0 or not math.isfinite(svals[0]):
        raise InputError(f"{name}:{sline}: spacing must be one positive number")
    spacing = svals[0]
    values = []
    for i in range(pos, len(lines)):
        for tok in lines[i].split():
            try:
                v = float(tok)
            except ValueError:
                raise InputError(f"{name}:{i + 1}: bad value {tok!r}") from None
            if not math.isfinite(v):
                raise InputError(f"{name}:{i + 1}: non-finite value {tok!r}")
            values.append(v)
    expected = math.prod(dims)
    if len(values) != expected:
        raise InputError(f"{name}:{dline}: dims {' x '.join(map(str, dims))} need {expected} values, "
                         f"found {len(values)}")
    return GridFile(dims, origin, spacing, np.array(values).reshape(dims))


def format_grid(gf: GridFile) -> str:
    out = [
        "dims: " + " ".join(str(n) for n in gf.dims),
        "origin: " + " ".join(fmt(o) for o in gf.origin),
        "spacing: " + fmt(gf.spacing),
    ]
    rows = np.asarray(gf.values).reshape(-1, gf.dims[-1])
    out.extend(" ".join(fmt(v) for v in row) for row in rows)
    return "\n".join(out) + "\n"


def read_grid(path: str) -> GridFile:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    return parse_grid(text, path)


def read_points(path: str, k: int) -> np.ndarray:
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    pts = []
    for i, line in enumerate(lines):
        line = line.split("#", 1)[0].replace(",", " ").strip()
        if not line:
            continue
        try:
            row = [float(t) for t in line.split()]
        except ValueError:
            raise InputError(f"{path}:{i + 1}: non-numeric coordinate in {lines[i].strip()!r}") from None
        if len(row) != k or not all(math.isfinite(v) for v in row):
            raise InputError(f"{path}:{i + 1}: expected {k} finite coordinates")
        pts.append(row)
    if not pts:
        raise InputError(f"{path}: no evaluation points")
    return np.array(pts)


# ------------------------------------------------------------------- config

@dataclass(frozen=True)
class RunConfig:
    degree: tuple
    scheme: WeightScheme
    boundary: BoundaryPolicy
    mode: Mode
    refine: int

    @classmethod
    def from_args(cls, args, k: int) -> "RunConfig":
        degree = parse_degree(args.degree)
        if len(degree) == 1:
            degree = degree * k
        elif len(degree) != k:
            raise InputError(f"--degree has {len(degree)} entries for a {k}-D grid")
        try:
            scheme = WeightScheme(PsiKind(args.scheme), args.eps_exp, args.psi_c)
        except ValueError as e:
            raise InputError(str(e)) from None
        if args.refine < 1:
            raise InputError("--refine must be at least 1")
        return cls(degree, scheme, BoundaryPolicy(args.boundary), Mode(args.mode), args.refine)


def parse_degree(text: str) -> tuple:
    try:
        degree = tuple(int(t) for t in str(text).split(","))
    except ValueError:
        raise InputError(f"--degree expects integers, got {text!r}") from None
    if not 1 <= len(degree) <= 3 or any(not 1 <= p <= P_MAX for p in degree):
        raise InputError(f"--degree entries must lie in 1..{P_MAX}")
    return degree


def _check_grid(gf: GridFile, cfg: RunConfig):
    for l, (n, p) in enumerate(zip(gf.dims, cfg.degree)):
        if n < p + 1:
            raise InputError(f"axis {l} has {n} samples; degree {p} needs at least {p + 1}")


def refine_points(gf: GridFile, cfg: RunConfig) -> np.ndarray:
    """Lattice with ``refine`` sub-intervals per sample interval, clipped to the admissible box."""
    axes = []
    for l in range(gf.ndim):
        lo, hi = admissible_interval(gf.dims[l], cfg.degree[l], cfg.boundary, gf.origin[l], gf.spacing)
        i = np.arange((gf.dims[l] - 1) * cfg.refine + 1)
        x = gf.origin[l] + i * gf.spacing / cfg.refine
        tol = 1e-12 * gf.spacing
        x = x[(x >= lo - tol) & (x <= hi + tol)]
        if x.size == 0:
            raise DomainError(f"axis {l}: admissible interval [{lo:.17g}, {hi:.17g}] contains no lattice point",
                              (lo, hi))
        axes.append(x)
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in mesh], axis=1)


def evaluate(gf: GridFile, cfg: RunConfig, pts: np.ndarray, mode: Optional[Mode] = None) -> np.ndarray:
    mode = cfg.mode if mode is None else mode
    grid = gf.to_grid()
    if gf.ndim == 1:
        x, p = pts[:, 0], cfg.degree[0]
        if mode is Mode.LINEAR:
            return quasi_interpolate(grid, p, x, cfg.boundary)
        return weno_interpolate(grid, p, x, cfg.scheme, cfg.boundary)
    return TensorEvaluator(grid, cfg.degree, cfg.boundary)(pts, mode, cfg.scheme)


def _write(text: str, out: Optional[str]):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


_COORDS = ("x", "y", "z")


# ----------------------------------------------------------------- commands

def cmd_interp(args) -> int:
    gf = read_grid(args.grid)
    cfg = RunConfig.from_args(args, gf.ndim)
    _check_grid(gf, cfg)
    pts = read_points(args.points, gf.ndim) if args.points else refine_points(gf, cfg)
    values = evaluate(gf, cfg, pts)
    head = list(_COORDS[:gf.ndim]) + ["value"]
    if args.format == "json":
        text = dumps_json({"points": pts.tolist(), "values": values.tolist(), "degree": list(cfg.degree),
                           "mode": cfg.mode, "boundary": cfg.boundary,
                           "scheme": None if cfg.mode is Mode.LINEAR else vars(cfg.scheme)})
    else:
        text = _csv(head, (list(map(float, p)) + [float(v)] for p, v in zip(pts, values)))
    _write(text, args.out)
    return EXIT_OK


def _self_test_report():
    levels = list(range(2, 9))
    errors = [2.0 ** (-3 * l) for l in levels]
    from .testbed import ConvergenceReport
    return ConvergenceReport(levels, [2 ** l for l in levels], errors, orders_from_errors(errors),
                             [False] * len(levels), {"function": "synthetic 2^(-3l)"})


def _emit_reports(reports: dict, fmt_kind: str, out):
    if fmt_kind == "json":
        text = dumps_json({k: vars(r) for k, r in reports.items()}) if len(reports) > 1 \
            else next(iter(reports.values())).to_json()
    elif len(reports) == 1:
        text = next(iter(reports.values())).to_csv()
    else:
        rows = []
        for name, r in reports.items():
            for l, m, e, o, fl in r.rows():
                rows.append([name, l, m, fmt(e), "" if o is None else fmt(o), str(fl).lower()])
        text = _csv(["scheme", "level", "m", "E", "O", "floored"], rows)
    _write(text, out)


def _parse_levels(text: str) -> tuple:
    try:
        if "-" in text:
            a, b = text.split("-")
            return tuple(range(int(a), int(b) + 1))
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InputError(f"--levels expects 'a-b' or a comma list, got {text!r}") from None


def cmd_convergence(args) -> int:
    if args.self_test:
        _emit_reports({"synthetic": _self_test_report()}, args.format, args.out)
        return EXIT_OK
    params = {"epsilon_exponent": args.eps_exp, "constant_c": args.psi_c}
    if args.table is not None:
        if args.mode == "linear":
            rows = ["linear"]
        elif args.scheme is not None:
            rows = [args.scheme]
        else:
            rows = None
        try:
            reports = run_table(args.table, rows, params)
        except KeyError as e:
            raise InputError(e.args[0]) from None
        _emit_reports(reports, args.format, args.out)
        return EXIT_OK
    if args.function is None:
        raise InputError("convergence needs --table, --function or --self-test")
    try:
        fn = TestFunction(args.function)
    except ValueError:
        raise InputError(f"unknown function {args.function!r}") from None
    if fn.ndim != 1:
        raise InputError(f"convergence studies run on the 1-D functions, not {fn.value}")
    (p,) = parse_degree(args.degree)
    try:
        study = RefinementStudy(_parse_levels(args.levels), args.r_dense, Region(args.region))
        scheme = WeightScheme(PsiKind(args.scheme or "d"), **params)
        report = run_refinement(study, fn, p, Mode(args.mode), scheme)
    except ValueError as e:
        if isinstance(e, DomainError):
            raise
        raise InputError(str(e)) from None
    _emit_reports({report.metadata["mode"]: report}, args.format, args.out)
    return EXIT_OK


def _builtin(args, ghost):
    try:
        fn = TestFunction(args.function)
    except ValueError:
        raise InputError(f"unknown function {args.function!r}") from None
    if args.m is None:
        raise InputError("--function needs --m")
    if args.m < 2:
        raise InputError("--m must be at least 2")
    return fn, GridFile.from_grid(sample(fn, args.m, ghost=ghost, r=args.radius))


def cmd_compare(args) -> int:
    fn = None
    if args.grid:
        gf = read_grid(args.grid)
    elif args.function:
        fn, gf = _builtin(args, max(parse_degree(args.degree)) + 1)
    else:
        raise InputError("compare needs a grid file or --function")
    cfg = RunConfig.from_args(args, gf.ndim)
    _check_grid(gf, cfg)
    if args.points:
        pts = read_points(args.points, gf.ndim)
    elif fn is not None:
        x = dense_points(args.m, cfg.refine - 1)
        mesh = np.meshgrid(*([x] * gf.ndim), indexing="ij")
        pts = np.stack([g.ravel() for g in mesh], axis=1)
    else:
        pts = refine_points(gf, cfg)
    lin = evaluate(gf, cfg, pts, Mode.LINEAR)
    nl = evaluate(gf, cfg, pts, Mode.WENO)
    summary = {"degree": list(cfg.degree), "scheme": vars(cfg.scheme), "boundary": cfg.boundary,
               "points": int(pts.shape[0])}
    exact = None
    if fn is not None:
        exact = evaluate_function(fn, *pts.T, r=args.radius)
        e_lin, e_nl = np.abs(lin - exact), np.abs(nl - exact)
        regions = {"all": np.ones(pts.shape[0], dtype=bool)}
        h = gf.spacing
        if fn.has_jump and fn.ndim == 1:
            regions["smooth"] = _region_mask_1d(pts[:, 0], h, cfg.degree[0], Region.SMOOTH_ONLY, True)
            regions["near_jump"] = _region_mask_1d(pts[:, 0], h, cfg.degree[0], Region.NEAR_JUMP, True)
        elif fn.has_jump:
            band = _cut_cells_mask(pts, h, fn.default_radius if args.radius is None else args.radius)
            regions["off_band"] = ~band
            regions["band"] = band
        summary["function"] = fn.value
        summary["max_error"] = {
            name: {"linear": float(e_lin[m].max()) if m.any() else None,
                   "weno": float(e_nl[m].max()) if m.any() else None}
            for name, m in regions.items()}
        if fn.has_jump and fn.ndim == 1:
            summary["overshoot"] = overshoot_report(fn, cfg.degree[0], None, cfg.scheme, args.m, cfg.refine - 1)
    else:
        lo, hi = float(gf.values.min()), float(gf.values.max())
        summary["data_range"] = [lo, hi]
        summary["range_excess"] = {
            "linear": max(0.0, float(lin.max()) - hi, lo - float(lin.min())),
            "weno": max(0.0, float(nl.max()) - hi, lo - float(nl.min()))}
    coords = list(_COORDS[:gf.ndim])
    if args.format == "csv":
        head = coords + ["linear", "weno"] + (["exact", "err_linear", "err_weno"] if exact is not None else [])
        cols = [pts[:, i] for i in range(gf.ndim)] + [lin, nl]
        if exact is not None:
            cols += [exact, np.abs(lin - exact), np.abs(nl - exact)]
        text = _csv(head, (list(map(float, r)) for r in zip(*cols)))
    else:
        doc = {"summary": summary}
        if not args.summary_only:
            doc["points"] = pts.tolist()
            doc["linear"] = lin.tolist()
            doc["weno"] = nl.tolist()
            if exact is not None:
                doc["exact"] = exact.tolist()
        text = dumps_json(doc)
    _write(text, args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.ghost < 0:
        raise InputError("--ghost must be non-negative")
    _, gf = _builtin(args, args.ghost)
    _write(format_grid(gf), args.out)
    return EXIT_OK


# ------------------------------------------------------------------- parser

def _add_run_options(p, degree_default="3"):
    p.add_argument("--degree", default=degree_default, help="p, or p1,p2[,p3] per axis")
    p.add_argument("--scheme", choices=[k.value for k in PsiKind], default="d")
    p.add_argument("--psi-c", type=float, default=1.0, help="constant in psi_c (default 1)")
    p.add_argument("--eps-exp", type=int, default=2, help="exponent e of h^e in psi_s (default 2)")
    p.add_argument("--boundary", choices=[b.value for b in BoundaryPolicy], default="interior")
    p.add_argument("--refine", type=int, default=4, help="sub-intervals per sample interval")
    p.add_argument("--out", help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bspline-weno", description=__doc__.split("\n\n")[0].strip())
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interp", help="evaluate a grid file at points")
    p.add_argument("grid")
    _add_run_options(p)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="weno")
    p.add_argument("--points", help="file of evaluation points, one per line")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("convergence", help="grid-refinement study / table presets")
    p.add_argument("--table", help="preset 1-9 or smooth-pN / jump-pN")
    p.add_argument("--function", help="poly1d or piecewise_sin1d")
    p.add_argument("--degree", default="3")
    p.add_argument("--scheme", choices=[k.value for k in PsiKind])
    p.add_argument("--psi-c", type=float, default=1.0)
    p.add_argument("--eps-exp", type=int, default=2)
    p.add_argument("--mode", choices=[m.value for m in Mode])
    p.add_argument("--levels", default="4-10", help="'a-b' or comma list of l (m = 2^l)")
    p.add_argument("--region", choices=[r.value for r in Region], default="all")
    p.add_argument("--r-dense", type=int, help="points inside each sample interval")
    p.add_argument("--self-test", action="store_true")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("compare", help="linear vs nonlinear on the same points")
    p.add_argument("grid", nargs="?")
    _add_run_options(p)
    p.add_argument("--function")
    p.add_argument("--m", type=int, help="samples per axis on [0,1] for --function")
    p.add_argument("--radius", type=float, help="interface radius for circle2d / ball3d")
    p.add_argument("--points")
    p.add_argument("--summary-only", action="store_true")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_compare, mode="weno")

    p = sub.add_parser("sample", help="write a benchmark function as a grid file")
    p.add_argument("--function", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ghost", type=int, default=0, help="extra samples per side beyond [0,1]")
    p.add_argument("--radius", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except (InputError, ValueError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
