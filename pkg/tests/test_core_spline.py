from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bspline_weno import core_spline as cs
from bspline_weno.core_spline import (
    BoundaryPolicy,
    DomainError,
    UniformGrid1D,
    active_index_set,
    basis_values,
    bspline_eval,
    central_factorial,
    lp_apply,
    quasi_coefficients,
    quasi_interpolate,
)
from bspline_weno.reference import COEFFICIENTS

from oracles import bspline_truncated_power, coefficients_by_reproduction, quasi_interpolant_bruteforce


@pytest.mark.parametrize("p", sorted(COEFFICIENTS))
def test_coefficients_match_published_table(p):
    c = quasi_coefficients(p)
    assert len(c) == 2 * len(COEFFICIENTS[p]) - 1
    for j, (num, den) in COEFFICIENTS[p].items():
        assert c[j] == c[-j] == Fraction(num, den)


@pytest.mark.parametrize("p", range(1, 8))
def test_coefficients_match_reproduction_oracle(p):
    assert list(quasi_coefficients(p).coeffs) == coefficients_by_reproduction(p)


@pytest.mark.parametrize("p", range(1, 8))
def test_coefficients_symmetric_and_sum_to_one(p):
    c = quasi_coefficients(p)
    assert sum(c.coeffs) == 1
    for j in range(-c.half_width, c.half_width + 1):
        assert c[j] == c[-j]
    assert all(isinstance(v, Fraction) for v in c.coeffs)


def test_coefficient_indexing_and_degree_validation():
    c = quasi_coefficients(3)
    assert c[0] == Fraction(4, 3) and c[-1] == Fraction(-1, 6)
    with pytest.raises(IndexError):
        c[2]
    for bad in (0, 8, -1):
        with pytest.raises(ValueError):
            quasi_coefficients(bad)
    with pytest.raises(TypeError):
        quasi_coefficients(2.0)


def test_central_factorial_small_values():
    # t(i, j) for the x^[i] = x (x + i/2 - 1) ... (x - i/2 + 1) expansion
    assert central_factorial(2, 2) == 1
    assert central_factorial(3, 1) == Fraction(-1, 4)
    assert central_factorial(4, 2) == -1
    assert central_factorial(5, 3) == Fraction(-5, 2)
    assert central_factorial(3, 4) == 0


@pytest.mark.parametrize("p", range(1, 8))
def test_bspline_matches_truncated_power(p):
    u = np.linspace(-(p + 2) / 2, (p + 2) / 2, 173)
    ours = bspline_eval(p, u)
    ref = np.array([float(bspline_truncated_power(p, Fraction(v))) for v in u])
    np.testing.assert_allclose(ours, ref, atol=1e-14)


def test_bspline_known_values():
    assert bspline_eval(3, 0.0) == pytest.approx(2 / 3)
    assert bspline_eval(3, 1.0) == pytest.approx(1 / 6)
    assert bspline_eval(2, 0.0) == pytest.approx(3 / 4)
    assert bspline_eval(1, 0.5) == pytest.approx(0.5)
    assert bspline_eval(3, 2.0) == 0.0
    assert isinstance(bspline_eval(3, 0.3), float)


@settings(max_examples=200, deadline=None)
@given(p=st.integers(1, 7), u=st.floats(-1e3, 1e3, allow_nan=False))
def test_partition_of_unity(p, u):
    _, vals = basis_values(p, u)
    assert abs(vals.sum() - 1.0) <= 1e-14
    assert np.all(vals >= 0)


@settings(max_examples=100, deadline=None)
@given(p=st.integers(1, 7), x=st.floats(-50, 50, allow_nan=False), h=st.floats(0.01, 3.0))
def test_active_set_is_exactly_the_support(p, x, h):
    ks = active_index_set(p, h, x)
    u = x / h
    assert 1 <= len(ks) <= p + 1
    assert ks == sorted(ks)
    for n in range(ks[0] - 2, ks[-1] + 3):
        assert (n in ks) == (abs(u - n) < (p + 1) / 2)


def test_basis_values_agree_with_pointwise_eval():
    u = np.array([-0.37, 0.0, 0.5, 2.25, 7.9])
    for p in range(1, 8):
        n_lo, vals = basis_values(p, u)
        for i in range(u.size):
            for j in range(p + 1):
                assert vals[i, j] == pytest.approx(bspline_eval(p, u[i] - (n_lo[i] + j)), abs=1e-14)


def test_lp_apply_and_window():
    grid = UniformGrid1D(0.0, 0.5, [1.0, 2.0, 4.0, 8.0, 16.0])
    w = grid.window(2, 3)
    assert w.center == 2 and list(w.values) == [2.0, 4.0, 8.0]
    assert lp_apply(quasi_coefficients(3), w) == pytest.approx(-2 / 6 + 16 / 3 - 8 / 6)
    with pytest.raises(ValueError):
        lp_apply(quasi_coefficients(3), [1.0, 2.0])
    with pytest.raises(IndexError):
        grid.window(0, 3)


def test_grid_validation():
    with pytest.raises(ValueError):
        UniformGrid1D(0.0, 0.0, [1.0, 2.0])
    with pytest.raises(ValueError):
        UniformGrid1D(0.0, 1.0, [])
    g = UniformGrid1D(1.0, 0.25, [0, 1, 2])
    assert g.end == 1.5
    with pytest.raises(ValueError):
        g.samples[0] = 3.0


@pytest.mark.parametrize("p", range(1, 8))
def test_interpolant_matches_bruteforce_sum(p):
    rng = np.random.default_rng(p)
    f = rng.normal(size=30)
    grid = UniformGrid1D(-0.4, 0.2, f)
    lo, hi = cs.admissible_interval(30, p, BoundaryPolicy.INTERIOR, -0.4, 0.2)
    xs = np.concatenate([rng.uniform(lo, hi, 20), [lo, hi]])
    coeffs = quasi_coefficients(p).coeffs
    ours = quasi_interpolate(grid, p, xs)
    ref = [quasi_interpolant_bruteforce(f, -0.4, 0.2, p, x, coeffs) for x in xs]
    np.testing.assert_allclose(ours, ref, rtol=1e-13, atol=1e-13)


@settings(max_examples=60, deadline=None)
@given(p=st.integers(1, 7), deg=st.integers(0, 7), seed=st.integers(0, 2 ** 16))
def test_polynomial_reproduction(p, deg, seed):
    if deg > p:
        return
    rng = np.random.default_rng(seed)
    coef = rng.uniform(-1, 1, deg + 1)
    h = 0.1
    x_nodes = -1.0 + h * np.arange(25)
    grid = UniformGrid1D(-1.0, h, np.polyval(coef, x_nodes))
    lo, hi = cs.admissible_interval(25, p, BoundaryPolicy.INTERIOR, -1.0, h)
    x = np.linspace(lo, hi, 97)
    exact = np.polyval(coef, x)
    scale = max(1.0, np.abs(exact).max())
    assert np.max(np.abs(quasi_interpolate(grid, p, x) - exact)) <= 1e-10 * scale


def test_scalar_and_shape_handling():
    grid = UniformGrid1D(0.0, 1.0, np.arange(10.0))
    assert isinstance(quasi_interpolate(grid, 3, 4.5), float)
    out = quasi_interpolate(grid, 3, np.full((2, 3), 4.5))
    assert out.shape == (2, 3)
    np.testing.assert_allclose(out, 4.5)


def test_interior_domain_error_reports_interval():
    grid = UniformGrid1D(0.0, 1.0, np.arange(10.0))
    lo, hi = cs.admissible_interval(10, 3, "interior")
    assert (lo, hi) == (2.0, 7.0)
    quasi_interpolate(grid, 3, [lo, hi])
    with pytest.raises(DomainError) as err:
        quasi_interpolate(grid, 3, 7.01)
    assert err.value.interval == (2.0, 7.0)
    assert "[2, 7]" in str(err.value)


def test_too_few_samples():
    with pytest.raises(ValueError):
        quasi_interpolate(UniformGrid1D(0.0, 1.0, [1.0, 2.0]), 3, 0.5)


@pytest.mark.parametrize("p", range(1, 8))
def test_constant_policy_reproduces_constants_on_whole_span(p):
    grid = UniformGrid1D(0.0, 0.1, np.full(p + 1, 2.5))
    x = np.linspace(0.0, grid.end, 41)
    np.testing.assert_allclose(quasi_interpolate(grid, p, x, "constant"), 2.5, rtol=0, atol=1e-14)


@pytest.mark.parametrize("p", range(1, 8))
def test_linear_policy_reproduces_lines_on_whole_span(p):
    xs = 0.1 * np.arange(12)
    grid = UniformGrid1D(0.0, 0.1, 3 * xs - 1)
    x = np.linspace(0.0, grid.end, 57)
    np.testing.assert_allclose(quasi_interpolate(grid, p, x, "linear"), 3 * x - 1, atol=1e-13)


def test_extension_policies_reject_points_outside_span():
    grid = UniformGrid1D(0.0, 0.1, np.arange(12.0))
    with pytest.raises(DomainError):
        quasi_interpolate(grid, 3, -0.05, "constant")
    with pytest.raises(DomainError):
        quasi_interpolate(grid, 3, 1.2, "linear")


def test_near_knot_roundoff_is_snapped():
    grid = UniformGrid1D(0.0, 0.1, np.arange(30.0) ** 2)
    # 0.3 / 0.1 is not exactly 3 in binary
    assert quasi_interpolate(grid, 3, 0.3 * 7) == pytest.approx(quasi_interpolate(grid, 3, 2.1), abs=1e-12)
    assert cs.to_grid_units(0.3, 0.0, 0.1)[0] == 3.0
