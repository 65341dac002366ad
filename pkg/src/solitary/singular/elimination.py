"""Elimination oracle: all real solutions of a bivariate polynomial system.

The system ``p = q = 0`` is sheared by ``x = X - lam * Y`` so that distinct
solutions get distinct ``X``-coordinates, ``Y`` is eliminated with a
resultant, and the real roots of the eliminant are isolated exactly.  If the
eliminant is square-free every root carries exactly one complex solution,
which is then necessarily real, so the real count is certified.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import logging

import mpmath

from ..polycore import Polynomial, resultant
from ..polycore.univariate import real_roots_mp

log = logging.getLogger(__name__)

SHEARS = (Fraction(0), Fraction(3, 7), Fraction(-5, 11), Fraction(2, 13), Fraction(-7, 17), Fraction(11, 19))


@dataclass
class RealSolution:
    x: mpmath.mpf
    y: mpmath.mpf
    multiplicity: int
    certified: bool

    def point(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


def _mp(c):
    return mpmath.mpf(c.numerator) / c.denominator if hasattr(c, "denominator") else mpmath.mpf(c)


def _coeffs_in_y(p: Polynomial, x0) -> tuple[list, list]:
    """Coefficients (highest first) of p(x0, Y) and their rounding scales."""
    dy = p.degree_in(p.vars[1])
    out = [mpmath.mpf(0)] * (dy + 1)
    scale = [mpmath.mpf(0)] * (dy + 1)
    for (i, j), c in p.terms.items():
        t = _mp(c) * x0 ** i
        out[dy - j] += t
        scale[dy - j] += abs(t)
    return out, scale


def _abs_scale(p: Polynomial, pt) -> mpmath.mpf:
    s = mpmath.mpf(0)
    for (i, j), c in p.terms.items():
        s += abs(_mp(c)) * abs(pt[0]) ** i * abs(pt[1]) ** j
    return s


def real_solutions(p: Polynomial, q: Polynomial, dps: int = 60) -> list[RealSolution]:
    """All isolated real solutions of ``p = q = 0`` in two variables."""
    if p.nvars != 2 or q.nvars != 2 or p.vars != q.vars:
        raise ValueError("need two polynomials over the same two variables")
    p, q = p.exact(), q.exact()
    xv, yv = p.vars
    X, Y = Polynomial.gens(xv, yv)
    best = None
    for lam in SHEARS:
        ps = p.subs({xv: X - lam * Y, yv: Y}, (xv, yv))
        qs = q.subs({xv: X - lam * Y, yv: Y}, (xv, yv))
        if ps.degree_in(yv) <= 0 or qs.degree_in(yv) <= 0:
            continue
        R = resultant(ps, qs, yv)
        if R.is_zero():
            raise ArithmeticError("the system has a curve of common zeros")
        if R.degree() <= 0:
            return []
        with mpmath.workdps(dps):
            roots = real_roots_mp(R.with_vars((xv,)), dps)
        squarefree = all(m == 1 for _, m in roots)
        best = (lam, ps, qs, roots, squarefree)
        if squarefree:
            break
    if best is None:
        raise ArithmeticError("no shear gives positive degree in the eliminated variable")
    lam, ps, qs, roots, squarefree = best
    out = []
    with mpmath.workdps(dps):
        tol = mpmath.mpf(10) ** (-(dps // 2))
        for x0, mult in roots:
            cands = []
            for poly in (ps, qs):
                c, sc = _coeffs_in_y(poly, x0)
                # drop leading coefficients that vanish at x0 (a root escaping to infinity)
                while len(c) > 1 and abs(c[0]) <= tol * sc[0]:
                    c, sc = c[1:], sc[1:]
                if len(c) > 1:
                    try:
                        cands.extend(mpmath.polyroots(c, maxsteps=400, extraprec=4 * dps))
                    except mpmath.libmp.NoConvergence:
                        cands.extend(mpmath.polyroots(c, maxsteps=2000, extraprec=8 * dps))
            found = []
            for y0 in cands:
                if abs(mpmath.im(y0)) > tol * (1 + abs(y0)):
                    continue
                y0 = mpmath.re(y0)
                pt = (x0, y0)
                ok = all(abs(_mpeval(poly, pt)) <= tol * (1 + _abs_scale(poly, pt)) for poly in (ps, qs))
                if ok and not any(abs(y0 - y1) <= tol * (1 + abs(y1)) for y1 in found):
                    found.append(y0)
            if squarefree and len(found) > 1:
                raise ArithmeticError("square-free eliminant with two solutions over one root")
            for y0 in found:
                out.append(RealSolution(x0 - lam * y0, y0, mult, squarefree))
    out.sort(key=lambda s: (s.x, s.y))
    return out


def _mpeval(p: Polynomial, pt):
    total = mpmath.mpf(0)
    for e, c in p.terms.items():
        t = _mp(c)
        for v, k in zip(pt, e):
            if k:
                t *= v ** k
        total += t
    return total


def real_critical_points(f: Polynomial, dps: int = 60) -> list[RealSolution]:
    """All real critical points of a bivariate polynomial via elimination."""
    gx, gy = f.exact().gradient()
    if gx.is_zero() or gy.is_zero():
        raise ArithmeticError("a partial derivative vanishes identically")
    if gx.degree() == 0 or gy.degree() == 0:
        return []
    return real_solutions(gx, gy, dps)


def critical_values(f: Polynomial, sols: list[RealSolution], dps: int = 60) -> list[mpmath.mpf]:
    with mpmath.workdps(dps):
        return [_mpeval(f.exact(), (s.x, s.y)) for s in sols]


def hessian_mp(f: Polynomial, s: RealSolution, dps: int = 60):
    H = f.exact().hessian()
    with mpmath.workdps(dps):
        return [[_mpeval(H[i][j], (s.x, s.y)) for j in range(2)] for i in range(2)]
