"""Plane curves with many solitary points."""
from __future__ import annotations

from dataclasses import dataclass
import math

import mpmath

from ..polycore import Polynomial, resultant
from .chebyshev import degenerate_tchebychev_onesided, tchebychev


@dataclass(frozen=True)
class DoublePointParam:
    """Two parameters ``t != s`` with the same image under ``t -> (t^d, (t-1)^(d-1))``."""

    xi: complex
    eta: complex
    t: complex
    s: complex
    image: tuple[float, float]
    imag_residual: float

    def to_json(self) -> dict:
        c = lambda z: [z.real, z.imag]  # noqa: E731
        return {"xi": c(self.xi), "eta": c(self.eta), "t": c(self.t), "s": c(self.s),
                "image": list(self.image), "imag_residual": self.imag_residual}


def pecker_parametrization(d: int):
    return (lambda t: t ** d), (lambda t: (t - 1) ** (d - 1))


def pecker_curve(d: int) -> Polynomial:
    """Implicit equation of the rational curve ``t -> (t^d, (t-1)^(d-1))``.

    Normalized to integer content one, with a positive coefficient on the
    highest power of ``x``.
    """
    if d < 3:
        raise ValueError("Pecker curves need d >= 3")
    x, y, t = Polynomial.gens("x", "y", "t")
    R = resultant(x - t ** d, y - (t - 1) ** (d - 1), "t").with_vars(("x", "y")).primitive()
    lead = max(R.terms, key=lambda e: (e[0], e[1]))
    return -R if R.terms[lead] < 0 else R


def pecker_double_points(d: int, tol: float = 1e-8) -> list[DoublePointParam]:
    """The (d-1)(d-2)/2 double points from pairs of roots of unity.

    ``t^d = s^d`` and ``(t-1)^(d-1) = (s-1)^(d-1)`` with ``s = xi t`` and
    ``s - 1 = eta (t - 1)`` give ``t = (1 - eta) / (xi - eta)``.
    """
    if d < 3:
        raise ValueError("Pecker curves need d >= 3")
    found: list[DoublePointParam] = []
    with mpmath.workdps(40):
        for a in range(1, d):
            xi = mpmath.expjpi(mpmath.mpf(2 * a) / d)
            for b in range(1, d - 1):
                eta = mpmath.expjpi(mpmath.mpf(2 * b) / (d - 1))
                t = (1 - eta) / (xi - eta)
                s = xi * t
                if any(_same_pair(t, s, q.t, q.s, tol) for q in found):
                    continue
                X = t ** d
                Y = (t - 1) ** (d - 1)
                imag = max(abs(mpmath.im(X)) / max(1, abs(X)), abs(mpmath.im(Y)) / max(1, abs(Y)))
                found.append(DoublePointParam(complex(xi), complex(eta), complex(t), complex(s),
                                              (float(mpmath.re(X)), float(mpmath.re(Y))), float(imag)))
    expected = (d - 1) * (d - 2) // 2
    if len(found) != expected:
        raise ArithmeticError(f"found {len(found)} double points, expected {expected}")
    return found


def _same_pair(t, s, u, v, tol) -> bool:
    return (abs(t - u) < tol and abs(s - v) < tol) or (abs(t - v) < tol and abs(s - u) < tol)


def conjugate_lines_conic() -> Polynomial:
    """``x^2 + y^2``, the union of the lines ``x = +-iy``."""
    x, y = Polynomial.gens("x", "y")
    return x ** 2 + y ** 2


def conic_pair() -> tuple[Polynomial, Polynomial]:
    x, y = Polynomial.gens("x", "y")
    return x ** 2 + 4 * y ** 2 - 4, 4 * x ** 2 + y ** 2 - 4


def conic_pair_quartic() -> Polynomial:
    """``C1^2 + C2^2`` for two ellipses meeting in four real points."""
    c1, c2 = conic_pair()
    return c1 ** 2 + c2 ** 2


def conic_pair_points() -> list[tuple[float, float]]:
    # x^2 = y^2 = 4/5 on both ellipses
    r = math.sqrt(4 / 5)
    return [(sx * r, sy * r) for sx in (-1, 1) for sy in (-1, 1)]


def a2km1_curve(d: int, k: int) -> Polynomial:
    """``T_d(x) - T~_d^{2k}(y)`` with the one-sided degenerate polynomial in ``y``."""
    T = tchebychev(d, "x").with_vars(("x", "y"))
    S = degenerate_tchebychev_onesided(d, k, "y").with_vars(("x", "y"))
    return T - S


def expected_a2km1_curve_count(d: int, k: int) -> int:
    """Maxima of T_d at +1 times the one-sided minima at +1."""
    return ((d - 1) // 2) * (d // (2 * k))


__all__ = [
    "DoublePointParam", "pecker_curve", "pecker_double_points", "pecker_parametrization",
    "conjugate_lines_conic", "conic_pair", "conic_pair_quartic", "conic_pair_points",
    "a2km1_curve", "expected_a2km1_curve_count",
]
