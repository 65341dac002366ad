from __future__ import annotations

from fractions import Fraction

import pytest

from solitary.bounds import (TABLE1_COLUMNS, audit_quadrangle, b0_upper_hypersurface, b0_upper_surface,
                             detect_solitary_root, discriminant_R, harnack_bound, low1_bound, mu2_nodes,
                             mu2_solitary, mu3_a2km1_bounds, mu3_solitary_lower, mu3_solitary_upper,
                             mu_extr_upper, petrovskii_bound, positive_control, table1, table1_csv)


def test_plane_curve_bounds():
    assert [mu2_solitary(d) for d in range(1, 9)] == [0, 1, 1, 4, 6, 10, 15, 21]
    assert [harnack_bound(d) for d in range(1, 9)] == [1, 1, 2, 4, 7, 11, 16, 22]
    assert petrovskii_bound(5) == 6
    assert mu2_nodes(4) == 6


def test_b0_bounds():
    assert b0_upper_surface(4) == 11
    assert b0_upper_surface(6) == Fraction(97, 2)
    assert b0_upper_hypersurface(3, 3) == Fraction(89, 2)
    assert b0_upper_hypersurface(2, 3) == 22


def test_solitary_rows():
    assert [mu3_solitary_upper(d) for d in range(5, 9)] == [24, 48, 83, 134]
    assert [low1_bound(d) for d in range(5, 8)] == [12, 20, 45]
    assert [mu3_solitary_lower(d) for d in range(5, 9)] == [12, 29, 45, 63]


def test_lower_never_exceeds_upper():
    for d in range(1, 65):
        assert mu3_solitary_lower(d) <= mu3_solitary_upper(d) or d in (3, 4)


def test_known_exact_values_beat_nodes():
    rows = {r.degree: r for r in table1()}
    assert rows[3].mu3_sol_upper == 1 < rows[3].mu3_nodes_upper == 4
    assert rows[4].mu3_sol_upper == 10 < rows[4].mu3_nodes_upper == 16


def test_invalid_degree():
    with pytest.raises(ValueError):
        low1_bound(0)
    with pytest.raises(ValueError):
        mu3_a2km1_bounds(5, 0)


def test_a2km1_and_extrema_bounds():
    lo, hi = mu3_a2km1_bounds(10, 2)
    assert lo == Fraction(1000, 12) and hi == Fraction(8000, 45)
    assert mu_extr_upper(7) == 36


def test_table_marker_survives_output():
    rows = table1()
    assert rows[7].cell("mu3_sol_lower") == "63???"
    assert "63???" in table1_csv()
    assert rows[7].to_json()["display"]["mu3_sol_lower"] == "63???"
    assert len(rows) * len(TABLE1_COLUMNS) == 32


def test_discriminant_of_known_polynomial():
    # P = X: R = X^2 - 4X
    assert discriminant_R([Fraction(0), Fraction(1)]) == [0, -4, 1]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_positive_control_is_detected(k):
    assert detect_solitary_root(positive_control(k), k)


def test_detector_ignores_sign_changing_root():
    # (X - 1)^2 (1 + X^2) is nonnegative; its double root is not a solitary configuration
    R = [Fraction(c) for c in (1, -2, 2, -2, 1)]
    assert not detect_solitary_root(R, 1)


def test_audit_is_deterministic():
    a = audit_quadrangle(2, 40, seed=7).to_json()
    b = audit_quadrangle(2, 40, seed=7).to_json()
    assert a == b
    assert sum(a["per_family"].values()) == 40
