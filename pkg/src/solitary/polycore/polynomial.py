"""Sparse multivariate polynomials over QQ (exact) or RR (float64).

A :class:`Polynomial` stores a mapping from exponent tuples to coefficients.
Exact coefficients are kept as ``int`` whenever the value is integral and as
:class:`fractions.Fraction` otherwise, which keeps the integer-heavy paths
(resultants, Sturm sequences) fast.
"""
from __future__ import annotations

import math
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction, float]

QQ = "QQ"
RR = "RR"


def _to_exact(c) -> int | Fraction:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, float):
        if not math.isfinite(c):
            raise ValueError(f"non-finite coefficient {c!r}")
        q = Fraction(c)
        return q.numerator if q.denominator == 1 else q
    # numpy scalars and the like
    if hasattr(c, "item"):
        return _to_exact(c.item())
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _to_float(c) -> float:
    return float(c)


def _norm(c, domain):
    return _to_exact(c) if domain == QQ else _to_float(c)


def _join_domain(a: str, b: str) -> str:
    return QQ if a == QQ and b == QQ else RR


class Polynomial:
    """Immutable sparse polynomial in an ordered tuple of variables.

    >>> x, y = Polynomial.gens("x", "y")
    >>> (x**2 + y**2)((3, 4))
    25
    """

    __slots__ = ("_vars", "_terms", "_domain")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, Scalar] | None = None,
                 domain: str = QQ):
        if domain not in (QQ, RR):
            raise ValueError(f"unknown coefficient domain {domain!r}")
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        n = len(variables)
        clean: dict[tuple, Scalar] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match {n} variables")
            if any(k < 0 for k in e):
                raise ValueError(f"negative exponent in {e}")
            c = _norm(c, domain)
            if c != 0:
                clean[e] = clean.get(e, 0) + c
                if clean[e] == 0:
                    del clean[e]
        self._vars = variables
        self._terms = clean
        self._domain = domain

    # -- construction -----------------------------------------------------
    @classmethod
    def gens(cls, *names: str, domain: str = QQ) -> tuple["Polynomial", ...]:
        out = []
        for i, _ in enumerate(names):
            e = [0] * len(names)
            e[i] = 1
            out.append(cls(names, {tuple(e): 1}, domain))
        return tuple(out)

    @classmethod
    def const(cls, c: Scalar, variables: Sequence[str] = (), domain: str | None = None) -> "Polynomial":
        if domain is None:
            domain = RR if isinstance(c, float) else QQ
        return cls(variables, {(0,) * len(tuple(variables)): c}, domain)

    @classmethod
    def univariate(cls, coeffs: Sequence[Scalar], var: str = "z", domain: str | None = None) -> "Polynomial":
        """Build from coefficients listed from the constant term upwards."""
        if domain is None:
            domain = RR if any(isinstance(c, float) for c in coeffs) else QQ
        return cls((var,), {(i,): c for i, c in enumerate(coeffs)}, domain)

    # -- basic accessors ---------------------------------------------------
    @property
    def vars(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> Mapping[tuple, Scalar]:
        return MappingProxyType(self._terms)

    @property
    def domain(self) -> str:
        return self._domain

    @property
    def nvars(self) -> int:
        return len(self._vars)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, var: str) -> int:
        i = self._index(var)
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def coeff(self, exps: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(exps), 0)

    def constant_term(self) -> Scalar:
        return self._terms.get((0,) * self.nvars, 0)

    def _index(self, var: str) -> int:
        try:
            return self._vars.index(var)
        except ValueError:
            raise ValueError(f"variable {var!r} not in {self._vars}") from None

    def __repr__(self) -> str:
        return f"Polynomial({self._vars}, {self.to_str()!r}, domain={self._domain!r})"

    def to_str(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, key=lambda e: (-sum(e), [-k for k in e])):
            c = self._terms[e]
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self._vars, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = to_str

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            if other._vars != self._vars:
                try:
                    a, b = _align(self, other)
                except ValueError:
                    return False
                return a._terms == b._terms
            return self._terms == other._terms
        if isinstance(other, (int, float, Fraction)):
            return self._terms == ({(0,) * self.nvars: other} if other != 0 else {})
        return NotImplemented

    def __hash__(self):
        return hash((self._vars, frozenset(self._terms.items())))

    # -- domain conversion -------------------------------------------------
    def to_domain(self, domain: str) -> "Polynomial":
        if domain == self._domain:
            return self
        return Polynomial(self._vars, self._terms, domain)

    def exact(self) -> "Polynomial":
        """Exact copy; float coefficients convert to their exact binary value."""
        return self.to_domain(QQ)

    def numeric(self) -> "Polynomial":
        return self.to_domain(RR)

    def with_vars(self, variables: Sequence[str]) -> "Polynomial":
        """Re-express over a superset (in any order) of the current variables."""
        variables = tuple(variables)
        idx = []
        for v in self._vars:
            if v not in variables:
                if self.degree_in(v) > 0:
                    raise ValueError(f"cannot drop variable {v!r} that occurs in the polynomial")
                idx.append(None)
            else:
                idx.append(variables.index(v))
        terms = {}
        for e, c in self._terms.items():
            ne = [0] * len(variables)
            for k, j in zip(e, idx):
                if j is not None:
                    ne[j] = k
            terms[tuple(ne)] = c
        return Polynomial(variables, terms, self._domain)

    def rename(self, mapping: Mapping[str, str]) -> "Polynomial":
        return Polynomial(tuple(mapping.get(v, v) for v in self._vars), self._terms, self._domain)

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, float, Fraction)) or hasattr(other, "item"):
            dom = RR if isinstance(other, float) else QQ
            return Polynomial.const(other, self._vars, _join_domain(dom, self._domain))
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = _align(self, other)
        dom = _join_domain(a._domain, b._domain)
        terms = dict(a._terms)
        for e, c in b._terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(a._vars, terms, dom)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self._vars, {e: -c for e, c in self._terms.items()}, self._domain)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, Fraction)) and not isinstance(other, bool):
            dom = _join_domain(RR if isinstance(other, float) else QQ, self._domain)
            return Polynomial(self._vars, {e: c * other for e, c in self._terms.items()}, dom)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = _align(self, other)
        dom = _join_domain(a._domain, b._domain)
        terms: dict[tuple, Scalar] = {}
        for e1, c1 in a._terms.items():
            for e2, c2 in b._terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial(a._vars, terms, dom)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, Fraction)):
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero")
            if self._domain == QQ and not isinstance(other, float):
                inv = Fraction(1) / Fraction(other)
            else:
                inv = 1.0 / float(other)
            return self * inv
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.const(1, self._vars, self._domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus ----------------------------------------------------------
    def diff(self, var: str, order: int = 1) -> "Polynomial":
        i = self._index(var)
        terms = {}
        for e, c in self._terms.items():
            k = e[i]
            if k < order:
                continue
            f = 1
            for j in range(order):
                f *= k - j
            ne = list(e)
            ne[i] = k - order
            terms[tuple(ne)] = c * f
        return Polynomial(self._vars, terms, self._domain)

    def gradient(self) -> tuple["Polynomial", ...]:
        return tuple(self.diff(v) for v in self._vars)

    def hessian(self) -> tuple[tuple["Polynomial", ...], ...]:
        grad = self.gradient()
        rows = []
        for i, gi in enumerate(grad):
            rows.append(tuple(gi.diff(v) for v in self._vars))
        # enforce exact symmetry (mixed partials commute, but keep one object)
        return tuple(tuple(rows[min(i, j)][max(i, j)] for j in range(self.nvars))
                     for i in range(self.nvars))

    # -- evaluation --------------------------------------------------------
    def eval(self, pt: Sequence) -> Scalar:
        """Evaluate at a point; exact when both the polynomial and point are exact."""
        pt = tuple(pt)
        if len(pt) != self.nvars:
            raise ValueError(f"point has dimension {len(pt)}, polynomial has {self.nvars} variables")
        if self._domain == RR:
            pt = tuple(float(p) if isinstance(p, (int, Fraction)) else p for p in pt)
        elif any(isinstance(p, float) for p in pt):
            pt = tuple(Fraction(p) if isinstance(p, float) else p for p in pt)
        total = 0
        for e, c in self._terms.items():
            term = c
            for p, k in zip(pt, e):
                if k:
                    term = term * p ** k
            total = total + term
        if isinstance(total, Fraction) and total.denominator == 1:
            return total.numerator
        return total

    __call__ = eval

    def abs_eval(self, pt: Sequence[float]) -> float:
        """Sum of absolute term magnitudes at ``pt``; the natural rounding-error scale."""
        total = 0.0
        for e, c in self._terms.items():
            term = abs(float(c))
            for p, k in zip(pt, e):
                if k:
                    term *= abs(float(p)) ** k
            total += term
        return total

    def subs(self, mapping: Mapping[str, "Polynomial | Scalar"], variables: Sequence[str] | None = None
             ) -> "Polynomial":
        """Substitute polynomials (or scalars) for variables.

        The result lives over ``variables`` if given, else over the union of the
        remaining variables and those of the substituted polynomials.
        """
        if variables is None:
            vs = [v for v in self._vars if v not in mapping]
            for val in mapping.values():
                if isinstance(val, Polynomial):
                    vs.extend(v for v in val.vars if v not in vs)
            variables = tuple(vs)
        variables = tuple(variables)
        dom = self._domain
        images = []
        for v in self._vars:
            if v in mapping:
                val = mapping[v]
                if isinstance(val, Polynomial):
                    img = val.with_vars(variables)
                else:
                    img = Polynomial.const(val, variables, RR if isinstance(val, float) else QQ)
            else:
                img = Polynomial.gens(*variables)[variables.index(v)] if v in variables else None
                if img is None:
                    if self.degree_in(v) > 0:
                        raise ValueError(f"variable {v!r} neither substituted nor kept")
                    img = Polynomial.const(1, variables)
            dom = _join_domain(dom, img.domain)
            images.append(img)
        images = [im.to_domain(dom) for im in images]
        powers: list[dict[int, Polynomial]] = [{0: Polynomial.const(1, variables, dom)} for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                lower = max(j for j in cache if j < k)
                cache[k] = power(i, lower) * images[i] ** (k - lower) if k - lower > 1 else cache[lower] * images[i]
            return cache[k]

        acc: dict[tuple, Scalar] = {}
        for e, c in self._terms.items():
            term = Polynomial.const(c, variables, dom)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for te, tc in term._terms.items():
                acc[te] = acc.get(te, 0) + tc
        return Polynomial(variables, acc, dom)

    # -- structure ---------------------------------------------------------
    def homogenize(self, var: str = "w", first: bool = True) -> "Polynomial":
        """Homogenize with a new variable, placed first (``X0``-style) by default."""
        d = self.degree()
        if var in self._vars:
            raise ValueError(f"variable {var!r} already present")
        terms = {}
        for e, c in self._terms.items():
            k = d - sum(e)
            terms[((k,) + e) if first else (e + (k,))] = c
        vs = ((var,) + self._vars) if first else (self._vars + (var,))
        return Polynomial(vs, terms, self._domain)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_part(self, k: int) -> "Polynomial":
        return Polynomial(self._vars, {e: c for e, c in self._terms.items() if sum(e) == k}, self._domain)

    def coeff_scale(self) -> float:
        return max((abs(float(c)) for c in self._terms.values()), default=0.0)

    def content(self) -> Fraction:
        """Positive rational content (gcd of numerators over lcm of denominators)."""
        if self._domain != QQ:
            raise ValueError("content is defined for exact polynomials only")
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            c = Fraction(c)
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Polynomial":
        c = self.content()
        return self if c in (0, 1) else self * (1 / c)

    def as_univariate(self) -> list[Scalar]:
        """Coefficients (constant first) of a polynomial in a single variable."""
        if self.nvars != 1:
            active = [v for v in self._vars if self.degree_in(v) > 0]
            if len(active) > 1:
                raise ValueError(f"polynomial in {self._vars} is not univariate")
            var = active[0] if active else self._vars[0] if self._vars else None
            if var is None:
                return [self.constant_term()]
            i = self._index(var)
            out = [0] * (self.degree_in(var) + 1)
            for e, c in self._terms.items():
                out[e[i]] = c
            return out
        if not self._terms:
            return [0]
        out = [0] * (self.degree() + 1)
        for (k,), c in self._terms.items():
            out[k] = c
        return out

    def coeffs_in(self, var: str) -> dict[int, "Polynomial"]:
        """View as a polynomial in ``var`` with coefficients in the other variables."""
        i = self._index(var)
        rest = self._vars[:i] + self._vars[i + 1:]
        buckets: dict[int, dict] = {}
        for e, c in self._terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: Polynomial(rest, t, self._domain) for k, t in buckets.items()}

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Exact quotient ``self / other``; raises ``ArithmeticError`` on a remainder."""
        a, b = _align(self, other)
        if b.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if a.is_zero():
            return a
        lt_b = max(b._terms)
        lc_b = b._terms[lt_b]
        rem = dict(a._terms)
        quot: dict[tuple, Scalar] = {}
        exact = a._domain == QQ and b._domain == QQ
        while rem:
            lt = max(rem)
            if any(i < j for i, j in zip(lt, lt_b)):
                raise ArithmeticError("polynomial division is not exact")
            c = rem[lt]
            q = Fraction(c) / lc_b if exact else c / lc_b
            if exact and isinstance(q, Fraction) and q.denominator == 1:
                q = q.numerator
            shift = tuple(i - j for i, j in zip(lt, lt_b))
            quot[shift] = q
            for e, cb in b._terms.items():
                ne = tuple(i + j for i, j in zip(e, shift))
                v = rem.get(ne, 0) - q * cb
                if v == 0 or (not exact and abs(v) < 1e-300):
                    rem.pop(ne, None)
                else:
                    rem[ne] = v
            rem.pop(lt, None)
        return Polynomial(a._vars, quot, _join_domain(a._domain, b._domain))


def _align(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    if a.vars == b.vars:
        return a, b
    vs = list(a.vars) + [v for v in b.vars if v not in a.vars]
    return a.with_vars(vs), b.with_vars(vs)


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of total degree <= ``degree``, in graded order."""
    out: list[tuple[int, ...]] = []

    def rec(prefix, remaining, left):
        if left == 1:
            out.append(prefix + (remaining,))
            return
        for k in range(remaining, -1, -1):
            rec(prefix + (k,), remaining - k, left - 1)

    for total in range(degree + 1):
        if nvars == 0:
            if total == 0:
                out.append(())
            continue
        rec((), total, nvars)
    return out


def lcm_denominator(coeffs: Iterable[Scalar]) -> int:
    den = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
    return den
