from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from solitary.deform import (RESIDUAL_TOL, DeformError, build_fd_cached, equalize_critical_values,
                             expected_solitary_count, seed_problem, sign_interpolation, working_level)
from solitary.polycore import CompiledPoly, Polynomial
from solitary.singular import critical_points_2d

X, Y = Polynomial.gens("x", "y")


def test_sign_interpolation_single_point():
    Q = sign_interpolation(X ** 2 + Y ** 2, [(0.3, -0.2)], [1])
    assert abs(float(Q.eval((0.3, -0.2))) - 1) < 1e-12


def test_sign_interpolation_pecker_quintic_alternating():
    prob = seed_problem(5)
    pts = [s.location for s in prob.seeds]
    signs = [(-1) ** i for i in range(len(pts))]
    Q = sign_interpolation(prob.P, pts, signs)
    assert len(pts) == 6
    vals = CompiledPoly(Q.numeric()).value(np.array(pts))
    assert np.max(np.abs(vals - signs)) < 1e-12


def test_sign_interpolation_errors():
    with pytest.raises(np.linalg.LinAlgError):
        sign_interpolation(X + Y, [(0.0, 0.0), (0.0, 0.0)], [1, -1])
    with pytest.raises(ValueError):
        sign_interpolation(X + Y, [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (2.0, 3.0)], [1, 1, 1, 1])


@pytest.mark.parametrize("d", [3, 4])
def test_small_perturbation_separates_levels(d):
    # minima pushed up, maxima pushed down: P + eps Q has min > 0 > max
    prob = seed_problem(d)
    pts = [s.location for s in prob.seeds]
    signs = [1 if s.parity == "even" else -1 for s in prob.seeds]
    Q = sign_interpolation(prob.P, pts, signs)
    f = prob.P + Fraction(1, 1000) * prob.P.coeff_scale() * Q.exact()
    rep = critical_points_2d(f.numeric(), verify=False, extra_seeds=np.array(pts))
    for p, s in zip(pts, signs):
        near = min(rep.points, key=lambda c: np.hypot(c.location[0] - p[0], c.location[1] - p[1]))
        assert near.kind == ("min" if s > 0 else "max")
        assert np.sign(near.value) == s


def test_seed_parities_and_counts():
    for d, n in [(2, 1), (3, 1), (4, 4), (5, 6)]:
        prob = seed_problem(d)
        assert len(prob.seeds) == n
        assert {s.parity for s in prob.seeds} <= {"even", "odd"}


def test_equalized_seed_is_a_fixed_point():
    P = X ** 2 + Y ** 2 + Fraction(1, 100)
    res = equalize_critical_values(P, Polynomial.const(0, ("x", "y")), 0.0, [(0.0, 0.0)], [1])
    assert res.iterations == 0
    assert res.alpha == 1 and res.beta == 0
    assert res.f == 100 * X ** 2 + 100 * Y ** 2 + 1


def test_working_level():
    assert working_level(float("inf")) == 1e-2
    assert working_level(1e-5) == pytest.approx(1e-7)


def test_expected_count_formula():
    assert expected_solitary_count(0, 6, 5) == 12
    assert expected_solitary_count(2, 13, 7) == 45
    assert expected_solitary_count(1, 0, 3) == 1


@pytest.mark.parametrize("d", [2, 3])
def test_build_fd_small(d):
    fd = build_fd_cached(d)
    assert fd.extrema == (d - 1) * (d - 2) // 2 or (d == 2 and fd.extrema == 1)
    assert fd.residual_max < RESIDUAL_TOL
    for t in fd.critical_points:
        assert abs(abs(t.value) - 1) < RESIDUAL_TOL


def test_branch_b_mirrors_values():
    a, b = build_fd_cached(3, "A"), build_fd_cached(3, "B")
    assert [t.value for t in a.critical_points] == pytest.approx([-t.value for t in b.critical_points],
                                                                 abs=1e-9)
    assert [t.kind for t in a.critical_points] == [t.kind for t in b.critical_points]


def test_deform_error_carries_diagnostics():
    err = DeformError("boom", {"stage": "x"})
    assert err.diagnostics == {"stage": "x"}


@pytest.mark.slow
def test_build_fd_quintic_certificate():
    fd = build_fd_cached(5)
    assert fd.extrema == 6
    assert fd.residual_max < RESIDUAL_TOL
    assert all(h["index_conserved"] for h in fd.history)
    assert all(h["max_drift"] < h["radius"] and h["min_pair_distance"] > 2 * h["radius"] for h in fd.history)
