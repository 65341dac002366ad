from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from solitary.constructions import chmutov, pecker_curve, separable_surface, tchebychev
from solitary.constructions.surfaces import SurfaceSpec
from solitary.polycore import Polynomial
from solitary.singular import (A1_MINUS, A1_SOLITARY, OTHER, ForbiddenBasePoint, NonIsolatedSingularity,
                               NotSingular, classify, critical_points_1d, critical_points_2d,
                               curve_solitary_census, default_eps, real_critical_points, smooth_solitary,
                               surface_census, verify_smoothing)

x, y, z = Polynomial.gens("x", "y", "z")


@pytest.mark.parametrize("F,label,order", [
    (x ** 2 + y ** 2 + z ** 2, A1_SOLITARY, 2),
    (x ** 2 + y ** 2 - z ** 2, A1_MINUS, 2),
    (x ** 2 + y ** 2 + z ** 4, "A3_solitary", 4),
    (x ** 2 + 10 ** 6 * y ** 2 + z ** 6, "A5_solitary", 6),
    (x ** 2 + y ** 2 - z ** 4, OTHER, None),
    (x ** 2 + y ** 2 + z ** 3, OTHER, None),
])
def test_classify_normal_forms(F, label, order):
    sp = classify(F, (0.0, 0.0, 0.0))
    assert sp.label == label
    if order is not None:
        assert sp.order == order


def test_classify_shifted_point_and_rank():
    F = (x - 1) ** 2 + 2 * (y + 3) ** 2 + (z - Fraction(1, 2)) ** 4
    sp = classify(F, (1.0, -3.0, 0.5))
    assert sp.label == "A3_solitary"
    assert sp.signature[2] == 1


def test_classify_not_singular():
    with pytest.raises(NotSingular):
        classify(x ** 2 + y ** 2 + z ** 2 - 1, (1.0, 0.0, 0.0))


def test_curve_parity():
    assert classify(x.with_vars(("x", "y")) ** 2 + y.with_vars(("x", "y")) ** 2, (0.0, 0.0)).parity == "even"
    X, Y = Polynomial.gens("x", "y")
    sp = classify(-(X ** 2 + Y ** 4), (0.0, 0.0))
    assert sp.label == "A3_solitary" and sp.parity == "odd"


def test_critical_points_1d_tchebychev():
    pts = critical_points_1d(tchebychev(6))
    assert len(pts) == 5
    assert all(abs(abs(p.value) - 1) < 1e-12 for p in pts)


def test_critical_points_2d_agree_with_oracle():
    X, Y = Polynomial.gens("x", "y")
    f = X ** 3 - 3 * X + Y ** 4 - 2 * Y ** 2
    rep = critical_points_2d(f, verify=True)
    assert rep.found == 6 == rep.oracle_count
    assert len(real_critical_points(f)) == 6


@pytest.mark.parametrize("d,expected", [(3, 1), (4, 3), (5, 6)])
def test_pecker_curve_census(d, expected):
    census = curve_solitary_census(pecker_curve(d))
    assert census.solitary == expected
    assert census.crossings == 0


def test_non_isolated_singularity_detected():
    X, Y = Polynomial.gens("x", "y")
    with pytest.raises(NonIsolatedSingularity):
        curve_solitary_census((X ** 2 + Y ** 2 - 1) ** 2)


def test_chmutov_three_nodes_with_oracle():
    census = surface_census(chmutov(3, real=True), oracle=True)
    assert census.count(A1_MINUS) == 3
    assert census.certification["oracle_agrees"]


def test_separable_sphere_census():
    s = separable_surface(x.with_vars(("x", "y")) ** 2 + y.with_vars(("x", "y")) ** 2,
                          -z.with_vars(("z",)) ** 2)
    census = surface_census(s)
    assert census.counts[A1_SOLITARY] == 1


def test_general_surface_census():
    F = ((x ** 2 - 1) ** 2 + (y ** 2 - 1) ** 2 + z ** 2)
    census = surface_census(SurfaceSpec("general", 4, F=F))
    assert census.count(A1_SOLITARY) == 4


def test_smoothing_keeps_points_and_removes_singularity():
    F = ((x - 1) ** 2 + y ** 2 + z ** 2).homogenize("w")
    Ft = smooth_solitary(F, default_eps(F))
    (chk,) = verify_smoothing(Ft, [(1, 1, 0, 0)])
    assert chk.on_surface and chk.grad_norm > 1e-8


def test_smoothing_forbidden_base_point():
    F = (x ** 2 + y ** 2 + z ** 2).homogenize("w")
    with pytest.raises(ForbiddenBasePoint):
        smooth_solitary(F, default_eps(F))


def test_smoothing_needs_homogeneous_input():
    with pytest.raises(ValueError):
        smooth_solitary(x ** 2 + 1, [Fraction(1, 1000)])


def test_grid_density_does_not_change_census():
    s = chmutov(4, real=True)
    a = surface_census(s, grid_n=48).counts
    b = surface_census(s, grid_n=80).counts
    assert a == b
    assert np.sum(list(a.values())) == 14
