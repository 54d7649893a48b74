import csv
import io
import math
import pathlib
import random

import pytest
from scipy.optimize import minimize_scalar

import lphodge

ROOT = pathlib.Path(__file__).resolve().parents[2]


def path_complex(m, weights=None):
    rows, cols, vals = [], [], []
    for e in range(m - 1):
        rows += [e, e]
        cols += [e, e + 1]
        vals += [-1, 1]
    cx = {"dims": [m, m - 1], "d": [{"k": 0, "rows": rows, "cols": cols, "vals": vals}]}
    if weights is not None:
        cx["weights"] = weights
    return cx


def cycle_complex(m):
    rows, cols, vals = [], [], []
    for e in range(m):
        rows += [e, e]
        cols += [e, (e + 1) % m]
        vals += [-1, 1]
    return {"dims": [m, m], "d": [{"k": 0, "rows": rows, "cols": cols, "vals": vals}]}


def test_pinched_matches_closed_forms():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(3, 9)
        k = rng.randint(2, n - 1)
        delta = rng.uniform(0.05, 1.0)
        p = rng.uniform(1.1, 6.0)
        r = lphodge.pinched(n, k, delta, p)
        assert r["low_threshold"] == pytest.approx(delta * (n - k - 1) / k + 1, rel=1e-14)
        assert r["high_threshold"] == pytest.approx((n - k) / (delta * (k - 1)) + 1, rel=1e-14)
        assert r["torsion_threshold"] == pytest.approx(delta * (n - k) / (k - 1) + 1, rel=1e-14)
        assert r["torsion_side_condition"] == (k - 1 < n / p)


def test_pinched_rejects_bad_input():
    with pytest.raises(ValueError):
        lphodge.pinched(4, 2, 1.5, 2.0)
    with pytest.raises(ValueError):
        lphodge.pinched(4, 2, 1.0, 1.0)


def test_symmetric_dimension_and_verdicts():
    for n in range(1, 7):
        r = lphodge.symmetric(f"A{n}", 1, "1.5")
        assert r["dim_x"] == n * (n + 3) // 2
    assert lphodge.symmetric("A2", 1, "3/2")["verdict"] == "vanishes-reduced"
    assert lphodge.symmetric("A2", 1)["verdict"] is None
    with pytest.raises(ValueError):
        lphodge.symmetric("Q3", 1, "2")


def test_table_matches_golden_csv():
    assert lphodge.gromov_table_csv() == (ROOT / "data" / "gromov_table.csv").read_text()
    rows = list(csv.DictReader(io.StringIO(lphodge.gromov_table_csv())))
    assert len(rows) == len(lphodge.gromov_table())


def test_cycle_representative_is_constant():
    m = 5
    z = {"k": 1, "coeffs": [float(m)] + [0.0] * (m - 1)}
    for p in (1.5, 2.0, 3.0):
        r = lphodge.solve(cycle_complex(m), z, p, "representative")
        assert r["converged"]
        assert r["h"]["coeffs"] == pytest.approx([1.0] * m, abs=1e-8)


def test_path_primitive_matches_scalar_minimizer():
    w = [1.0, 2.0, 0.5, 1.5]
    cx = path_complex(4, [w, [1.0, 1.0, 1.0]])
    z = {"k": 1, "coeffs": [1.0, -2.0, 0.5]}
    offsets = [0.0, 1.0, -1.0, -0.5]
    for p in (1.5, 2.5, 4.0):
        energy = lambda c: sum(wi * abs(c + a) ** p for wi, a in zip(w, offsets))
        c = minimize_scalar(energy, bracket=(-3, 3), tol=1e-12).x
        r = lphodge.solve(cx, z, p)
        assert r["converged"]
        assert r["h"]["coeffs"] == pytest.approx([c + a for a in offsets], abs=1e-6)
        assert r["energy"] == pytest.approx(energy(c), rel=1e-9)


def test_solve_rejects_non_exact():
    with pytest.raises(ValueError):
        lphodge.solve(cycle_complex(4), {"k": 1, "coeffs": [1.0, 0, 0, 0]}, 2.0)


def test_verify_fast_suites():
    for suite in ("exterior", "roots", "discrete"):
        rep = lphodge.verify(suite)
        assert rep["summary"]["failed"] == 0
        assert rep["summary"]["passed"] == rep["summary"]["total"] > 0
    assert math.isfinite(lphodge.low_threshold(5, 2, 0.5))
