import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from bspline_weno.cli import GridFile, format_grid, main, parse_grid, InputError
from bspline_weno.testbed import overshoot_report
from bspline_weno.weno import WeightScheme


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write_grid(tmp_path, values, origin=(0.0,), spacing=0.1, name="g.txt"):
    values = np.asarray(values, dtype=float)
    path = tmp_path / name
    path.write_text(format_grid(GridFile(values.shape, tuple(origin), spacing, values)))
    return str(path)


def test_grid_round_trip_is_bit_exact():
    rng = np.random.default_rng(0)
    for shape in [(7,), (4, 5), (3, 2, 4)]:
        vals = rng.normal(size=shape) * 10.0 ** rng.integers(-300, 300, size=shape)
        gf = GridFile(shape, tuple(rng.normal(size=len(shape))), 1 / 3, vals)
        back = parse_grid(format_grid(gf))
        assert back.dims == gf.dims and back.origin == gf.origin and back.spacing == gf.spacing
        assert np.array_equal(back.values, vals)


@pytest.mark.parametrize("text,line", [
    ("dims: 3\norigin: 0\nspacing: 0.5\n1 2\n", 1),
    ("dims: 3\norigin: 0 0\nspacing: 0.5\n1 2 3\n", 2),
    ("dims: 3\norigin: 0\nspacing: -1\n1 2 3\n", 3),
    ("dims: 3\norigin: 0\nspacing: 0.5\n1 x 3\n", 4),
    ("dim: 3\norigin: 0\nspacing: 0.5\n1 2 3\n", 1),
    ("dims: 3\nspacing: 0.5\norigin: 0\n1 2 3\n", 2),
    ("dims: 3\norigin: 0\nspacing: 0.5\n1 nan 3\n", 4),
])
def test_malformed_grids_name_the_line(text, line):
    with pytest.raises(InputError, match=f":{line}:"):
        parse_grid(text)


def test_interp_constant_refine_weno(tmp_path, capsys):
    path = write_grid(tmp_path, np.full(12, 4.5))
    code, out, _ = run(["interp", path, "--refine", "4", "--mode", "weno", "--degree", "3"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "value"]
    assert len(rows) - 1 == 7 * 4 + 1  # admissible [0.2, 0.9] for 12 samples, p = 3
    assert all(float(r[1]) == 4.5 for r in rows[1:])


def test_interp_dims_mismatch_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("dims: 4 4\norigin: 0 0\nspacing: 0.1\n" + " ".join(["1"] * 15) + "\n")
    code, _, err = run(["interp", str(path)], capsys)
    assert code == 2 and "bad.txt:1" in err


def test_interp_domain_violation_exits_3(tmp_path, capsys):
    path = write_grid(tmp_path, np.arange(12.0))
    pts = tmp_path / "pts.txt"
    pts.write_text("0.5\n0.05\n")
    code, _, err = run(["interp", path, "--points", str(pts), "--degree", "3"], capsys)
    assert code == 3 and "admissible interval [0.2" in err


def test_interp_points_file_and_json(tmp_path, capsys):
    x = 0.1 * np.arange(10)
    y = 0.1 * np.arange(8)
    vals = np.add.outer(2 * x, -y)
    path = write_grid(tmp_path, vals, origin=(0.0, 0.0))
    pts = tmp_path / "pts.csv"
    pts.write_text("# x, y\n0.45, 0.35\n0.5 0.3\n")
    code, out, _ = run(["interp", path, "--points", str(pts), "--degree", "3,2", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    np.testing.assert_allclose(doc["values"], [0.9 - 0.35, 1.0 - 0.3], atol=1e-13)
    bad = tmp_path / "bad.csv"
    bad.write_text("0.45\n")
    assert run(["interp", path, "--points", str(bad)], capsys)[0] == 2


@pytest.mark.parametrize("argv", [
    ["--degree", "0"], ["--degree", "3,3"], ["--degree", "a"], ["--refine", "0"], ["--eps-exp", "0"],
    ["--psi-c", "-1"],
])
def test_config_validation_exits_2(tmp_path, capsys, argv):
    path = write_grid(tmp_path, np.arange(12.0))
    assert run(["interp", path] + argv, capsys)[0] == 2


def test_unreadable_and_too_small_grid(tmp_path, capsys):
    assert run(["interp", str(tmp_path / "missing.txt")], capsys)[0] == 2
    path = write_grid(tmp_path, [1.0, 2.0, 3.0])
    code, _, err = run(["interp", path, "--degree", "3"], capsys)
    assert code == 2 and "needs at least 4" in err


def test_convergence_table_3_classical_row(capsys):
    code, out, _ = run(["convergence", "--table", "3", "--mode", "linear"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))[1:]
    expected = [3.6275, 3.8563, 3.9370, 3.9704, 3.9857, 3.9929]
    assert [int(r[0]) for r in rows] == list(range(4, 11))
    for r, o in zip(rows[1:], expected):
        assert abs(float(r[3]) - o) <= 0.05


def test_convergence_quadratic_near_jump_psi_s(capsys):
    code, out, _ = run(["convergence", "--table", "jump-p2", "--scheme", "s"], capsys)
    assert code == 0
    last = list(csv.reader(io.StringIO(out)))[-1]
    assert abs(float(last[3]) - 1.0) <= 0.02


def test_convergence_all_rows_csv_and_json(capsys):
    code, out, _ = run(["convergence", "--table", "2"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["scheme", "level", "m", "E", "O", "floored"]
    assert {r[0] for r in rows[1:]} == {"linear", "s", "c", "d"}
    code, out, _ = run(["convergence", "--table", "2", "--format", "json"], capsys)
    assert set(json.loads(out)) == {"linear", "s", "c", "d"}


def test_convergence_self_test(capsys):
    code, out, _ = run(["convergence", "--self-test"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))[2:]
    assert all(float(r[3]) == 3.0 for r in rows)


def test_convergence_custom_study(capsys):
    code, out, _ = run(["convergence", "--function", "poly1d", "--degree", "4", "--levels", "4,5,6",
                        "--mode", "linear"], capsys)
    assert code == 0 and len(out.splitlines()) == 4


@pytest.mark.parametrize("argv", [
    ["--table", "12"], ["--table", "smooth-p9"], ["--function", "nope"], ["--function", "circle2d"], [],
    ["--function", "poly1d", "--levels", "x"],
])
def test_convergence_bad_ids_exit_2(capsys, argv):
    assert run(["convergence"] + argv, capsys)[0] == 2


def test_compare_constant_is_exact(tmp_path, capsys):
    path = write_grid(tmp_path, np.full((9, 9), -2.0), origin=(0.0, 0.0))
    code, out, _ = run(["compare", path, "--refine", "3"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["summary"]["range_excess"] == {"linear": 0.0, "weno": 0.0}
    assert all(v == -2.0 for v in doc["linear"] + doc["weno"])


def test_compare_poly1d_within_factor_10(capsys):
    code, out, _ = run(["compare", "--function", "poly1d", "--m", "256", "--degree", "3", "--summary-only"], capsys)
    s = json.loads(out)["summary"]["max_error"]["all"]
    assert code == 0 and s["linear"] / 10 <= s["weno"] <= 10 * s["linear"]


def test_compare_circle_off_band(capsys):
    code, out, _ = run(["compare", "--function", "circle2d", "--m", "64", "--degree", "3,3", "--refine", "3",
                        "--summary-only"], capsys)
    s = json.loads(out)["summary"]["max_error"]["off_band"]
    assert code == 0 and s["weno"] < s["linear"]


def test_compare_csv_and_overshoot(capsys):
    code, out, _ = run(["compare", "--function", "piecewise_sin1d", "--m", "50", "--format", "csv"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "x,linear,weno,exact,err_linear,err_weno"
    code, out, _ = run(["compare", "--function", "piecewise_sin1d", "--m", "50", "--summary-only"], capsys)
    assert json.loads(out)["summary"]["overshoot"]["weno"]["hull_excess"] <= 1e-12


def test_figure_profile_is_non_oscillatory(tmp_path, capsys):
    grid = tmp_path / "jump.txt"
    assert run(["sample", "--function", "piecewise_sin1d", "--m", "400", "--ghost", "4", "--out", str(grid)],
               capsys)[0] == 0
    out = tmp_path / "profile.csv"
    code, _, _ = run(["interp", str(grid), "--degree", "3", "--scheme", "d", "--refine", "10", "--out", str(out)],
                     capsys)
    assert code == 0
    rows = np.array([[float(v) for v in r] for r in list(csv.reader(out.open()))[1:]])
    x, v = rows[:, 0], rows[:, 1]
    near = np.abs(x - 0.5) <= 5 / 399
    data = parse_grid(grid.read_text()).values
    nodes = (np.arange(data.size) - 4) / 399
    local = data[np.abs(nodes - 0.5) <= 5 / 399]
    assert v[near].max() <= local.max() + 1e-12 and v[near].min() >= local.min() - 1e-12
    assert overshoot_report("piecewise_sin1d", 3, scheme=WeightScheme("d"), m=400, r_dense=9)["weno"]["hull_excess"] <= 1e-12


def test_outputs_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        run(["compare", "--function", "piecewise_sin1d", "--m", "40", "--out", str(p)], capsys)
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bspline_weno", "convergence", "--self-test", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["orders"][1] == 3.0
    proc = subprocess.run([sys.executable, "-m", "bspline_weno", "interp"], capture_output=True, text=True)
    assert proc.returncode == 2
