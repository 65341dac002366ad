"""Removing solitary points by ``P + sum_i eps_i X_i dP/dX_i``.

At a singular point ``p`` of a homogeneous ``P`` every summand vanishes, so
``p`` stays on the perturbed surface, while the gradient there becomes
``H(p) (eps * p)`` which is nonzero for a non-degenerate point away from
``(1:0:...:0)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math
from typing import Sequence

from ..polycore import Polynomial


class ForbiddenBasePoint(ValueError):
    pass


def _is_singular_at(P: Polynomial, pt) -> bool:
    return all(g(pt) == 0 for g in P.gradient())


def smooth_solitary(P: Polynomial, eps: Sequence) -> Polynomial:
    """Perturb a homogeneous ``P(X0, ..., Xn)``; ``eps`` has one entry per ``X1..Xn``."""
    if not P.is_homogeneous():
        raise ValueError("P must be homogeneous; homogenize the affine equation first")
    n = P.nvars - 1
    if len(eps) != n:
        raise ValueError(f"need {n} perturbation weights, got {len(eps)}")
    base = (1,) + (0,) * n
    if _is_singular_at(P, base):
        raise ForbiddenBasePoint("P is singular at (1:0:...:0); apply a projective coordinate change "
                                 "moving the singular points off this point first")
    out = P
    gens = Polynomial.gens(*P.vars, domain=P.domain)
    for i, e in enumerate(eps, start=1):
        if e:
            out = out + e * gens[i] * P.diff(P.vars[i])
    return out


@dataclass
class SmoothingCheck:
    point: tuple
    on_surface: bool
    value: object
    grad_norm: float

    @property
    def ok(self) -> bool:
        return self.on_surface and self.grad_norm > 1e-8


def verify_smoothing(P_tilde: Polynomial, points: Sequence[Sequence]) -> list[SmoothingCheck]:
    """Each former singular point must lie on ``P_tilde`` and be a smooth point of it."""
    grads = P_tilde.gradient()
    out = []
    for pt in points:
        pt = tuple(pt)
        val = P_tilde(pt)
        g = [float(q(pt)) for q in grads]
        exact = all(isinstance(c, (int, Fraction)) for c in pt)
        on = val == 0 if exact else abs(float(val)) <= 1e-12 * max(P_tilde.abs_eval(pt), 1.0)
        out.append(SmoothingCheck(pt, bool(on), val, math.sqrt(sum(v * v for v in g))))
    return out


def default_eps(P: Polynomial, rel: Fraction = Fraction(1, 1000)) -> list[Fraction]:
    """Distinct weights of size ``rel`` (times 1, 2, 3, ...), kept exact."""
    return [rel * (i + 1) for i in range(P.nvars - 1)]
