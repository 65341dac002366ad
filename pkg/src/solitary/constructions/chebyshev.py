"""Tchebychev polynomials and their degenerate relatives."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import math

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.optimize import root

from ..polycore import Polynomial, QQ, RR


@lru_cache(maxsize=None)
def _cheb_coeffs(d: int) -> tuple[int, ...]:
    if d == 0:
        return (1,)
    if d == 1:
        return (0, 1)
    a, b = _cheb_coeffs(d - 2), _cheb_coeffs(d - 1)
    out = [0] * (d + 1)
    for i, c in enumerate(b):
        out[i + 1] += 2 * c
    for i, c in enumerate(a):
        out[i] -= c
    return tuple(out)


def tchebychev(d: int, var: str = "z") -> Polynomial:
    """T_d with T_0 = 1, T_1 = z and T_d = 2 z T_{d-1} - T_{d-2}.

    >>> str(tchebychev(3))
    '4*z^3 - 3*z'
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    return Polynomial.univariate(list(_cheb_coeffs(d)), var)


@dataclass
class DegenerateExtremum:
    location: float
    value: float
    kind: str  # "min" or "max"
    order: int  # vanishing order of the derivative
    derivative_residual: float
    next_derivative: float


@dataclass
class DegenerateTchebychev:
    """A polynomial together with the certificate of its degenerate extrema."""

    poly: Polynomial
    d: int
    k: int
    extrema: list[DegenerateExtremum] = field(default_factory=list)
    residual: float = 0.0
    fallback: bool = False
    exact: bool = False

    @property
    def n_max(self) -> int:
        return sum(e.kind == "max" for e in self.extrema)

    @property
    def n_min(self) -> int:
        return sum(e.kind == "min" for e in self.extrema)

    def certified(self, tol: float = 1e-9) -> bool:
        return self.residual < tol and all(abs(e.next_derivative) > 1e-6 for e in self.extrema)

    def to_json(self) -> dict:
        return {
            "d": self.d, "k": self.k, "exact": self.exact, "fallback": self.fallback,
            "residual": self.residual,
            "extrema": [vars(e) for e in self.extrema],
        }


def _positive_factor(e: int, s_out: Fraction) -> list[Fraction]:
    """Coefficients of (1 + z^2)^(e//2) * (z - s_out)^(e % 2), constant first."""
    out = [Fraction(1)]
    for _ in range(e // 2):
        out = _mul(out, [Fraction(1), Fraction(0), Fraction(1)])
    if e % 2:
        out = _mul(out, [-s_out, Fraction(1)])
    return out


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _integrate(c, const=0):
    return [const] + [x / (i + 1) for i, x in enumerate(c)]


def _peval(c, z):
    acc = 0
    for x in reversed(c):
        acc = acc * z + x
    return acc


_S_OUT = Fraction(-2)


def _derivative_profile(points, c, k, rfac):
    g1 = [c]
    for s in points:
        for _ in range(2 * k - 1):
            g1 = _mul(g1, [-s, 1])
    return _mul(g1, rfac)


def _certify(coeffs, points, values, k, to_float) -> tuple[list[DegenerateExtremum], float]:
    fc = [to_float(x) for x in coeffs]
    scale = max(abs(x) for x in fc)
    extrema = []
    residual = 0.0
    for s, v in zip(points, values):
        s_f = to_float(s)
        val = float(npoly.polyval(s_f, fc))
        # each derivative is measured against its own rounding scale at s
        dres = 0.0
        for j in range(1, 2 * k):
            dj = npoly.polyder(fc, j)
            dres = max(dres, abs(npoly.polyval(s_f, dj)) / max(npoly.polyval(abs(s_f), np.abs(dj)), 1e-300))
        nxt = float(npoly.polyval(s_f, npoly.polyder(fc, 2 * k)))
        residual = max(residual, abs(val - v), dres)
        kind = "max" if v > 0 else "min"
        extrema.append(DegenerateExtremum(s_f, val, kind, 2 * k - 1, dres, nxt / scale))
    return extrema, residual


def degenerate_tchebychev_certified(d: int, k: int, var: str = "z") -> DegenerateTchebychev:
    """Degree-d polynomial whose extrema at +-1 have derivative vanishing order 2k-1.

    The derivative is taken of the shape ``c * prod (z - s_i)^(2k-1) * r(z)``
    with ``2n`` alternating extrema, ``n = (d-1) // (4k-2)``, the outer two
    pinned at -1 and +1, and a fixed factor ``r`` without roots in [-1, 1]
    absorbing the remaining degree. The free parameters (scale and inner
    locations) are fixed by requiring the values to alternate between -1 and
    +1, a square system solved by Newton's method. When all unknowns come out
    rational the polynomial is returned exactly.
    """
    if d < 1 or k < 1:
        raise ValueError("need d >= 1 and k >= 1")
    if k == 1:
        T = tchebychev(d, var)
        ext = []
        for j in range(1, d):
            s = math.cos(j * math.pi / d)
            v = 1.0 if j % 2 == 0 else -1.0
            ext.append(DegenerateExtremum(s, v, "max" if v > 0 else "min", 1, 0.0, float("nan")))
        coeffs = [Fraction(c) for c in _cheb_coeffs(d)]
        extrema, res = _certify(coeffs, [e.location for e in ext], [e.value for e in ext], 1, float)
        return DegenerateTchebychev(T, d, k, extrema, res, exact=True)
    n = (d - 1) // (4 * k - 2)
    if n == 0:
        return DegenerateTchebychev(tchebychev(d, var), d, k, [], 0.0, fallback=True, exact=True)
    m = 2 * n
    e = d - 1 - m * (2 * k - 1)
    rfac = _positive_factor(e, _S_OUT)
    targets = [(-1.0) ** (i + 1) for i in range(m)]  # -1, +1, -1, ...

    def build(theta):
        c = theta[0]
        pts = [-1.0] + list(theta[1:]) + [1.0]
        g1 = _derivative_profile(pts, c, k, [float(x) for x in rfac])
        G = _integrate(g1)
        G[0] = -1.0 - _peval(G, -1.0)
        return G, pts

    def equations(theta):
        G, pts = build(theta)
        return np.array([_peval(G, s) - t for s, t in zip(pts[1:], targets[1:])])

    inner = [-math.cos(math.pi * i / (m - 1)) for i in range(1, m - 1)]
    G1, pts0 = build(np.array([1.0] + inner))
    # the first gap must rise by 2; the integral is linear in c
    c0 = 2.0 / (_peval(G1, pts0[1]) - _peval(G1, pts0[0]))
    sol = root(equations, np.array([c0] + inner), method="hybr", options={"xtol": 1e-15})
    theta = sol.x
    # a few plain Newton steps with a finite-difference Jacobian to squeeze the residual
    for _ in range(5):
        F = equations(theta)
        if np.max(np.abs(F)) < 1e-15:
            break
        J = np.empty((len(F), len(theta)))
        for j in range(len(theta)):
            h = 1e-7 * max(1.0, abs(theta[j]))
            tp = theta.copy()
            tp[j] += h
            J[:, j] = (equations(tp) - F) / h
        theta = theta - np.linalg.lstsq(J, F, rcond=None)[0]

    # try an exact rational reading of the solution
    q_theta = [Fraction(float(x)).limit_denominator(10**6) for x in theta]
    q_pts = [Fraction(-1)] + q_theta[1:] + [Fraction(1)]
    g1 = _derivative_profile(q_pts, q_theta[0], k, rfac)
    G = _integrate(g1, Fraction(0))
    G[0] = -1 - _peval(G, Fraction(-1))
    exact = all(_peval(G, s) == t for s, t in zip(q_pts, [Fraction(int(t)) for t in targets]))
    if exact:
        coeffs = G
        poly = Polynomial.univariate(coeffs, var, QQ)
        pts = q_pts
    else:
        coeffs, pts = build(theta)
        poly = Polynomial.univariate(list(coeffs), var, RR)
    extrema, res = _certify(coeffs, pts, targets, k, float)
    if not sol.success and res > 1e-9:
        raise RuntimeError(f"degenerate Tchebychev solver did not converge (best residual {res:.3g})")
    return DegenerateTchebychev(poly, d, k, extrema, res, exact=exact)


def degenerate_tchebychev(d: int, k: int, var: str = "z") -> Polynomial:
    return degenerate_tchebychev_certified(d, k, var).poly


def degenerate_tchebychev_onesided_certified(d: int, k: int, var: str = "y") -> DegenerateTchebychev:
    """Degree-d polynomial with ``d // (2k)`` minima at +1 of derivative order 2k-1.

    Built exactly as ``1 + prod (z - s_i)^(2k) * q(z)`` with rational ``s_i``
    spread over [-1, 1] and ``q`` positive near them.
    """
    if d < 1 or k < 1:
        raise ValueError("need d >= 1 and k >= 1")
    n = d // (2 * k)
    if n == 0:
        return DegenerateTchebychev(tchebychev(d, var), d, k, [], 0.0, fallback=True, exact=True)
    pts = [Fraction(0)] if n == 1 else [Fraction(-1) + Fraction(2 * i, n - 1) for i in range(n)]
    c = [Fraction(1)]
    for s in pts:
        for _ in range(2 * k):
            c = _mul(c, [-s, 1])
    c = _mul(c, _positive_factor(d - 2 * k * n, _S_OUT))
    c[0] += 1
    poly = Polynomial.univariate(c, var, QQ)
    extrema, res = _certify(c, pts, [1.0] * n, k, float)
    for ex in extrema:
        ex.kind = "min"
    return DegenerateTchebychev(poly, d, k, extrema, res, exact=True)


def degenerate_tchebychev_onesided(d: int, k: int, var: str = "y") -> Polynomial:
    return degenerate_tchebychev_onesided_certified(d, k, var).poly
