"""Folding polynomials of the A2 root system and their real-line variant.

On the torus ``X Y Z = 1`` put ``u = X + Y + Z`` and ``v = XY + YZ + ZX``
(``v`` is the complex conjugate of ``u`` when ``|X| = |Y| = 1``). The
degree-d folding polynomial is the unique polynomial ``F_d`` with

    F_d(u, v) = c + X^d + Y^d + Z^d + X^-d + Y^-d + Z^-d,

i.e. the function ``c + 2 Re u`` pulled back along the d-fold covering of the
torus. The offset ``c`` is chosen so that the critical values are exactly
{0, -1, 8}; it is determined here by certification rather than assumed.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
import logging
import random

from ..polycore import Polynomial, QQ, monomials
from ..polycore.linalg import solve_exact

log = logging.getLogger(__name__)

FOLDING_CRITICAL_VALUES = (-1.0, 0.0, 8.0)
OFFSET_CANDIDATES = (0, 1, 2)


def _samples(count: int):
    """Deterministic rational torus points (X, Y) with distinct (u, v)."""
    rng = random.Random(20240601)
    seen = set()
    while True:
        X = Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 9))
        Y = Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 9))
        Z = 1 / (X * Y)
        u = X + Y + Z
        v = X * Y + Y * Z + Z * X
        if (u, v) in seen:
            continue
        seen.add((u, v))
        yield X, Y, Z, u, v
        if len(seen) >= count:
            return


def _laurent_rhs(X, Y, Z, d):
    return X**d + Y**d + Z**d + X**-d + Y**-d + Z**-d


@lru_cache(maxsize=None)
def _folding_shape(d: int) -> Polynomial:
    """Interpolate ``F_d - c`` exactly; oversampling certifies the identity."""
    exps = list(monomials(2, d))
    pts = list(_samples(len(exps) + 8))
    A = [[u**i * v**j for i, j in exps] for _, _, _, u, v in pts]
    b = [_laurent_rhs(X, Y, Z, d) for X, Y, Z, _, _ in pts]
    coef = solve_exact(A, b)
    return Polynomial(("x", "y"), dict(zip(exps, coef)), QQ)


def _real_substitute(F: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Return the real and imaginary parts of F(x + iy, x - iy)."""
    d = F.degree()
    x, y = Polynomial.gens("x", "y")
    zero = Polynomial(("x", "y"), {}, QQ)
    A = [Polynomial.const(1, ("x", "y"))]
    B = [zero]
    for _ in range(d):
        a, bb = A[-1], B[-1]
        A.append(x * a - y * bb)
        B.append(x * bb + y * a)
    re, im = zero, zero
    for (i, j), c in F.terms.items():
        # (A_i + i B_i)(A_j - i B_j)
        re = re + c * (A[i] * A[j] + B[i] * B[j])
        im = im + c * (B[i] * A[j] - A[i] * B[j])
    return re, im


def _offset_matches(pts, c: float, tol: float = 1e-6) -> bool:
    # saddles are the crossings of the real lines, so they sit on the zero level
    return all(
        abs(p.value + c) < tol if p.kind == "saddle"
        else min(abs(p.value + c - t) for t in (-1.0, 8.0)) < tol
        for p in pts)


@lru_cache(maxsize=None)
def folding_offset(d: int) -> int:
    """The additive normalization giving critical values {0, -1, 8}.

    The critical points do not depend on the offset, so they are computed once
    for the offset-free shape; every candidate is then checked on the shifted
    values.
    """
    from ..singular.critical import critical_points_2d

    if d == 1:
        return 2
    base = real_folding_of(_folding_shape(d))
    pts = critical_points_2d(base, box=(-3.5, 3.5, -3.5, 3.5), grid_n=48, verify=False).points
    if len(pts) != (d - 1) ** 2:
        raise ArithmeticError(f"folding({d}): found {len(pts)} critical points, expected {(d - 1) ** 2}")
    matches = [c for c in OFFSET_CANDIDATES if _offset_matches(pts, c)]
    log.debug("folding(%d): offsets matching the critical values: %s", d, matches)
    if len(matches) != 1:
        raise ArithmeticError(f"folding({d}): offsets {matches} reproduce the critical values")
    return matches[0]


def folding(d: int) -> Polynomial:
    """The degree-d A2 folding polynomial in ``(x, y)`` with integer coefficients.

    >>> folding(2)((3, 3))
    8
    """
    if d < 1:
        raise ValueError("d must be positive")
    return _folding_shape(d) + folding_offset(d)


def real_folding_of(F: Polynomial) -> Polynomial:
    re, im = _real_substitute(F)
    if not im.is_zero():
        raise ArithmeticError("imaginary part does not cancel; folding normalization is broken")
    return re


def real_folding(d: int) -> Polynomial:
    """``F_d(x + iy, x - iy)``, a product of d real lines."""
    return real_folding_of(folding(d))
