"""Exact rational linear algebra for small dense systems."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class InconsistentSystem(ArithmeticError):
    pass


class SingularSystem(ArithmeticError):
    pass


def solve_exact(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``A x = b`` over the rationals.

    ``A`` may have more rows than columns; the extra rows must be consistent
    with the unique solution, otherwise :class:`InconsistentSystem` is raised.
    A rank-deficient column space raises :class:`SingularSystem`.
    """
    rows = [[Fraction(v) for v in r] + [Fraction(bi)] for r, bi in zip(A, b)]
    m = len(rows)
    n = len(rows[0]) - 1 if rows else 0
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if piv is None:
            raise SingularSystem(f"no pivot in column {col}")
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        pr = rows[r]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * p for a, p in zip(rows[i], pr)]
        r += 1
    for i in range(r, m):
        if rows[i][n] != 0:
            raise InconsistentSystem("overdetermined rows disagree with the solution")
    return [rows[i][n] for i in range(n)]
