from __future__ import annotations

from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from solitary.polycore import (CompiledPoly, Polynomial, QQ, RR, isolate_real_roots, poly_from_json,
                               poly_to_json, real_root_count, real_roots_mp, resultant)

VARS = ("x", "y")
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def polys(draw, max_terms=6, max_deg=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = (draw(st.integers(0, max_deg)), draw(st.integers(0, max_deg)))
        terms[e] = draw(fractions)
    return Polynomial(VARS, terms)


points = st.tuples(fractions, fractions)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), points)
def test_evaluation_is_a_homomorphism(p, q, pt):
    assert (p * q).eval(pt) == p.eval(pt) * q.eval(pt)
    assert (p + q).eval(pt) == p.eval(pt) + q.eval(pt)


@settings(max_examples=60, deadline=None)
@given(polys(), points)
def test_json_round_trip_exact(p, pt):
    back = poly_from_json(poly_to_json(p))
    assert back == p
    assert back.eval(pt) == p.eval(pt)


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_product_rule(p, q):
    assert (p * q).diff("x") == p.diff("x") * q + p * q.diff("x")


def test_float_json_round_trip():
    p = Polynomial(VARS, {(1, 0): 0.1, (0, 2): -1e-17, (0, 0): 3.0}, RR)
    back = poly_from_json(poly_to_json(p))
    assert back.domain == RR
    assert back.terms == p.terms


def test_malformed_json():
    with pytest.raises(ValueError):
        poly_from_json({"terms": []})


def test_resultant_implicitizes_a_parabola():
    x, y, t = Polynomial.gens("x", "y", "t")
    R = resultant(x - t ** 2, y - t, "t").with_vars(VARS)
    assert R == x.with_vars(VARS) - y.with_vars(VARS) ** 2 or R == y.with_vars(VARS) ** 2 - x.with_vars(VARS)


def test_resultant_vanishes_on_common_root():
    (z,) = Polynomial.gens("z")
    a = (z - 2) * (z + 1)
    b = (z - 2) * (z ** 2 + 1)
    assert resultant(a, b, "z").is_zero()
    assert not resultant(a, (z - 3) * (z + 5), "z").is_zero()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=1, max_size=5,
                unique=True),
       st.lists(st.integers(1, 3), min_size=5, max_size=5))
def test_root_isolation_of_known_products(roots, mults):
    (z,) = Polynomial.gens("z")
    p = Polynomial.const(1, ("z",))
    for r, m in zip(roots, mults):
        p = p * (z - r) ** m
    p = p * (z ** 2 + 1)
    ivs = isolate_real_roots(p)
    assert len(ivs) == len(roots) == real_root_count(p)
    want = sorted(zip(roots, mults))
    for iv, (r, m) in zip(sorted(ivs, key=lambda i: i.lo), want):
        assert iv.lo <= r <= iv.hi
        assert iv.multiplicity == m


def test_real_roots_mp_precision():
    (z,) = Polynomial.gens("z")
    roots = real_roots_mp(z ** 2 - 2, dps=50)
    with mpmath.workdps(50):
        assert abs(roots[-1][0] - mpmath.sqrt(2)) < mpmath.mpf(10) ** -45


def test_compiled_matches_exact(rng):
    x, y = Polynomial.gens("x", "y")
    p = 3 * x ** 4 - x * y ** 3 + Fraction(1, 3) * y ** 2 - 7
    cp = CompiledPoly(p)
    X = rng.uniform(-2, 2, size=(20, 2))
    exact = np.array([float(p.eval(tuple(map(float, r)))) for r in X])
    assert np.allclose(cp.value(X), exact, rtol=1e-13, atol=1e-12)
    gx = p.diff("x")
    assert np.allclose(cp.grad(X)[:, 0], [float(gx.eval(tuple(r))) for r in X], rtol=1e-13, atol=1e-12)


def test_domain_promotion():
    x, = Polynomial.gens("x")
    assert (x + 0.5).domain == RR
    assert (x + Fraction(1, 2)).domain == QQ
