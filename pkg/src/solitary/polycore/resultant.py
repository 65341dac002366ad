"""Sylvester resultants with fraction-free (Bareiss) elimination."""
from __future__ import annotations

from .polynomial import Polynomial, QQ


def sylvester_matrix(p: Polynomial, q: Polynomial, var: str) -> list[list[Polynomial]]:
    m = p.degree_in(var)
    n = q.degree_in(var)
    if m <= 0 or n <= 0:
        raise ValueError(f"both polynomials need positive degree in {var!r} (got {m}, {n})")
    pc = p.coeffs_in(var)
    qc = q.coeffs_in(var)
    rest = next(iter(pc.values())).vars
    zero = Polynomial(rest, {}, QQ)
    size = m + n
    rows: list[list[Polynomial]] = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + m - k] = pc.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + n - k] = qc.get(k, zero)
        rows.append(row)
    return rows


def bareiss_det(mat: list[list[Polynomial]]) -> Polynomial:
    """Determinant over a polynomial ring by Bareiss' fraction-free elimination."""
    a = [list(r) for r in mat]
    n = len(a)
    if n == 0:
        raise ValueError("empty matrix")
    sign = 1
    prev = None
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return Polynomial(a[0][0].vars, {}, QQ)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                v = piv * a[i][j]
                if not aik.is_zero() and not a[k][j].is_zero():
                    v = v - aik * a[k][j]
                if prev is not None and not v.is_zero():
                    v = v.exact_div(prev)
                a[i][j] = v
            a[i][k] = Polynomial(piv.vars, {}, QQ)
        prev = piv
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(p: Polynomial, q: Polynomial, var: str) -> Polynomial:
    """Sylvester resultant of ``p`` and ``q`` eliminating ``var``.

    >>> x, y, t = Polynomial.gens("x", "y", "t")
    >>> str(resultant(x - t**2, y - t, "t"))
    '-y^2 + x'
    """
    if p.domain != QQ or q.domain != QQ:
        raise ValueError("resultants are computed over the exact-rational domain; call .exact() first")
    vs = list(p.vars) + [v for v in q.vars if v not in p.vars]
    p, q = p.with_vars(vs), q.with_vars(vs)
    return bareiss_det(sylvester_matrix(p, q, var))
