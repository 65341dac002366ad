"""Vectorised float64 and mpmath evaluation of a polynomial and its derivatives."""
from __future__ import annotations

from fractions import Fraction

import mpmath
import numpy as np

from .polynomial import Polynomial


class _Terms:
    __slots__ = ("exps", "coeffs", "maxdeg")

    def __init__(self, p: Polynomial):
        items = list(p.terms.items())
        n = p.nvars
        if items:
            self.exps = np.array([e for e, _ in items], dtype=np.int64).reshape(len(items), n)
            self.coeffs = np.array([float(c) for _, c in items])
        else:
            self.exps = np.zeros((0, n), dtype=np.int64)
            self.coeffs = np.zeros(0)
        self.maxdeg = int(self.exps.max()) if items else 0

    def monomials(self, X: np.ndarray) -> np.ndarray:
        out = np.ones((X.shape[0], self.exps.shape[0]))
        for j in range(self.exps.shape[1]):
            col = self.exps[:, j]
            if not col.any():
                continue
            pw = X[:, j:j + 1] ** np.arange(self.maxdeg + 1)
            out *= pw[:, col]
        return out

    def __call__(self, X: np.ndarray) -> np.ndarray:
        if not self.coeffs.size:
            return np.zeros(X.shape[0])
        return self.monomials(X) @ self.coeffs


class CompiledPoly:
    """A polynomial with gradient and Hessian prepared for batch evaluation.

    All ``*_at`` methods accept an ``(N, n)`` array (or a single point) and
    return batched results.
    """

    def __init__(self, p: Polynomial):
        self.poly = p
        self.n = p.nvars
        self._f = _Terms(p)
        grad = p.gradient()
        self._g = [_Terms(g) for g in grad]
        hess = p.hessian()
        self._h = [[_Terms(hess[i][j]) for j in range(self.n)] for i in range(self.n)]
        self._abs = _Terms(Polynomial(p.vars, {e: abs(float(c)) for e, c in p.terms.items()}, "RR"))
        self._gabs = [_Terms(Polynomial(p.vars, {e: abs(float(c)) for e, c in g.terms.items()}, "RR"))
                      for g in grad]
        self._mp_cache: dict[int, list] = {}

    @staticmethod
    def _pts(X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        return X.reshape(1, -1) if X.ndim == 1 else X

    def value(self, X) -> np.ndarray:
        return self._f(self._pts(X))

    def grad(self, X) -> np.ndarray:
        X = self._pts(X)
        return np.stack([g(X) for g in self._g], axis=1)

    def hess(self, X) -> np.ndarray:
        X = self._pts(X)
        H = np.empty((X.shape[0], self.n, self.n))
        for i in range(self.n):
            for j in range(i, self.n):
                H[:, i, j] = H[:, j, i] = self._h[i][j](X)
        return H

    def value_scale(self, X) -> np.ndarray:
        """Sum of absolute term values: the rounding-error scale of ``value``."""
        return self._abs(np.abs(self._pts(X)))

    def grad_scale(self, X) -> np.ndarray:
        X = np.abs(self._pts(X))
        return np.stack([g(X) for g in self._gabs], axis=1).max(axis=1)

    def hess_diag_scale(self, X) -> np.ndarray:
        """Rounding scale of each diagonal Hessian entry: the same sum with |coefficients|."""
        if not hasattr(self, "_habs"):
            absp = Polynomial(self.poly.vars, {e: abs(float(c)) for e, c in self.poly.terms.items()}, "RR")
            self._habs = [_Terms(absp.diff(v, 2)) for v in self.poly.vars]
        X = np.abs(self._pts(X))
        return np.stack([h(X) for h in self._habs], axis=1)

    # -- multiprecision --------------------------------------------------------
    def _mp_terms(self, p: Polynomial):
        out = []
        for e, c in p.terms.items():
            if isinstance(c, Fraction):
                mc = mpmath.mpf(c.numerator) / c.denominator
            else:
                mc = mpmath.mpf(c)
            out.append((e, mc))
        return out

    def mp_value(self, pt, p: Polynomial | None = None):
        p = self.poly if p is None else p
        total = mpmath.mpf(0)
        for e, c in self._mp_terms(p):
            term = c
            for x, k in zip(pt, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def mp_grad(self, pt):
        return [self.mp_value(pt, g) for g in self.poly.gradient()]

    def mp_hess(self, pt):
        H = self.poly.hessian()
        return [[self.mp_value(pt, H[i][j]) for j in range(self.n)] for i in range(self.n)]
