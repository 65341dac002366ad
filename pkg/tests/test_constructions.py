from __future__ import annotations

import math
from fractions import Fraction

import pytest

from solitary.constructions import (chmutov, conic_pair_quartic, degenerate_tchebychev_certified,
                                    degenerate_tchebychev_onesided_certified, folding, folding_offset,
                                    pecker_curve, pecker_double_points, real_folding, separable_surface,
                                    tchebychev)
from solitary.constructions.surfaces import SurfaceSpec
from solitary.polycore import Polynomial
from solitary.singular import critical_points_1d


def test_tchebychev_small_cases():
    (z,) = Polynomial.gens("z")
    assert tchebychev(0) == Polynomial.const(1, ("z",))
    assert tchebychev(1) == z
    assert tchebychev(2) == 2 * z ** 2 - 1
    assert tchebychev(3) == 4 * z ** 3 - 3 * z


@pytest.mark.parametrize("d", [4, 7, 10])
def test_tchebychev_cosine_identity(d):
    T = tchebychev(d)
    for theta in (0.1, 0.7, 2.3):
        assert math.isclose(float(T.eval((math.cos(theta),))), math.cos(d * theta), abs_tol=1e-12)


def test_tchebychev_rejects_negative():
    with pytest.raises(ValueError):
        tchebychev(-1)


@pytest.mark.parametrize("d,k", [(7, 2), (9, 2), (5, 1)])
def test_degenerate_tchebychev(d, k):
    deg = degenerate_tchebychev_certified(d, k)
    assert deg.certified()
    assert deg.poly.degree() == d
    for e in deg.extrema:
        assert abs(abs(e.value) - 1) < 1e-9
        assert e.order == 2 * k - 1 or e.order == 2 * k  # vanishing derivatives up to 2k-1


def test_degenerate_tchebychev_7_2_counts():
    deg = degenerate_tchebychev_certified(7, 2)
    assert (deg.n_min, deg.n_max) == (1, 1)


def test_onesided_degenerate_has_only_top_extrema():
    deg = degenerate_tchebychev_onesided_certified(9, 2, "y")
    assert deg.certified()
    assert all(e.value > 0 for e in deg.extrema)


def test_folding_offset_is_certified_as_two():
    assert {folding_offset(d) for d in range(2, 6)} == {2}


def test_folding_small_degree_values():
    # F_1 = u + v + 2 and F_2 = u^2 + v^2 - 2(u + v) + 2 up to the normalization
    F2 = folding(2)
    assert F2.eval((3, 3)) == 8
    assert F2.degree() == 2


@pytest.mark.parametrize("d", [2, 3, 5])
def test_real_folding_is_real_and_has_d_lines_at_infinity(d):
    R = real_folding(d)
    assert all(isinstance(c, (int, Fraction)) for c in R.terms.values())
    assert R.degree() == d


def test_pecker_curve_degree_and_parametrization():
    for d in range(3, 7):
        P = pecker_curve(d)
        assert P.degree() == d
        for t in (Fraction(1, 3), Fraction(-2), Fraction(5, 7)):
            assert P.eval((t ** d, (t - 1) ** (d - 1))) == 0


@pytest.mark.parametrize("d", [3, 4, 5, 6, 7])
def test_pecker_double_point_count(d):
    assert len(pecker_double_points(d)) == (d - 1) * (d - 2) // 2


def test_pecker_rejects_small_degree():
    with pytest.raises(ValueError):
        pecker_curve(2)


def test_conic_pair_vanishes_at_four_points():
    C = conic_pair_quartic()
    r = Fraction(4, 5)
    # x^2 = y^2 = 4/5: evaluate the quartic through the squares
    x, y = Polynomial.gens("x", "y")
    assert C.degree() == 4
    assert (C.eval((1, 1)) > 0) and all(abs(float(C.eval((sx * math.sqrt(r), sy * math.sqrt(r))))) < 1e-12
                                        for sx in (-1, 1) for sy in (-1, 1))


def test_chmutov_spec_and_json_round_trip():
    s = chmutov(4, real=True)
    assert s.kind == "separable" and s.degree == 4
    back = SurfaceSpec.from_json(s.to_json())
    assert back.polynomial() == s.polynomial()


def test_separable_surface_validation():
    x, y, z = Polynomial.gens("x", "y", "z")
    with pytest.raises(ValueError):
        separable_surface(x * z, z ** 2)
    s = separable_surface(x ** 2 + y ** 2, z ** 2)
    assert s.polynomial() == x ** 2 + y ** 2 - z ** 2


def test_tchebychev_extrema_values():
    pts = critical_points_1d(tchebychev(8))
    assert sorted(round(p.value) for p in pts) == [-1, -1, -1, -1, 1, 1, 1]
