"""Exact univariate root isolation over QQ.

Polynomials here are plain coefficient lists (constant term first) of Python
integers; rational input is cleared of denominators first.  Real roots are
isolated with Sturm sequences on the factors of the square-free
decomposition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .polynomial import Polynomial, QQ


@dataclass(frozen=True)
class IsolatingInterval:
    """Open interval ``(lo, hi)`` holding exactly one distinct real root.

    ``exact`` is set when the root itself is rational and known exactly.
    """

    lo: Fraction
    hi: Fraction
    multiplicity: int
    exact: Fraction | None = None

    @property
    def mid(self) -> Fraction:
        return self.exact if self.exact is not None else (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.mid)


# -- integer coefficient lists ---------------------------------------------

def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def to_int_coeffs(coeffs: Sequence) -> list[int]:
    """Scale rational coefficients to a primitive integer list with positive lead."""
    qs = [Fraction(c) for c in coeffs]
    den = 1
    for q in qs:
        den = den * q.denominator // math.gcd(den, q.denominator)
    ints = _trim([int(q * den) for q in qs])
    return primitive(ints)


def primitive(p: list[int]) -> list[int]:
    g = 0
    for c in p:
        g = math.gcd(g, c)
        if g == 1:
            break
    if g == 0:
        return [0]
    if p[-1] < 0:
        g = -g
    return [c // g for c in p] if g != 1 else list(p)


def degree(p: Sequence[int]) -> int:
    return len(p) - 1 if any(p) else -1


def derivative(p: Sequence[int]) -> list[int]:
    if len(p) <= 1:
        return [0]
    return [i * p[i] for i in range(1, len(p))]


def prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder with a positive scaling factor |lc(b)|^k (sign preserving)."""
    a = list(a)
    db = degree(b)
    lb = b[-1]
    s = 1 if lb > 0 else -1
    alb = abs(lb)
    while degree(a) >= db and any(a):
        da = degree(a)
        la = a[da]
        shift = da - db
        # a <- |lb| * a - s * la * x^shift * b
        a = [alb * c for c in a[:da + 1]]
        for i, c in enumerate(b):
            a[i + shift] -= s * la * c
        a = _trim(a)
        if not any(a):
            return [0]
    return a


def gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd via the primitive pseudo-remainder sequence."""
    a, b = primitive(a), primitive(b)
    if degree(a) < degree(b):
        a, b = b, a
    while degree(b) > 0:
        r = prem(a, b)
        if not any(r):
            return primitive(b)
        a, b = b, primitive(r)
    if degree(b) == 0:
        return [1]
    return primitive(a)


def divexact(a: list[int], b: list[int]) -> list[int]:
    """Quotient of ``a`` by a divisor ``b``, returned primitive."""
    a = [Fraction(c) for c in a]
    db = degree(b)
    q = [Fraction(0)] * (degree(a) - db + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + db] / b[-1]
        q[k] = c
        if c:
            for i, bc in enumerate(b):
                a[k + i] -= c * bc
    if any(a[:db]):
        raise ArithmeticError("inexact univariate division")
    return to_int_coeffs(q)


def squarefree_decomposition(p: list[int]) -> list[tuple[list[int], int]]:
    """Multiplicity-indexed square-free factors (repeated-gcd formulation)."""
    p = primitive(p)
    if degree(p) <= 0:
        return []
    factors: list[tuple[list[int], int]] = []
    # w_i = gcd chain: p_1 = p / gcd(p, p'), tracks distinct roots with mult >= i
    g = gcd(p, derivative(p))
    w = divexact(p, g) if degree(g) > 0 else list(p)
    i = 1
    while degree(w) > 0:
        y = gcd(w, g) if degree(g) > 0 else [1]
        z = divexact(w, y) if degree(y) > 0 else w
        if degree(z) > 0:
            factors.append((primitive(z), i))
        w = y
        if degree(y) > 0:
            g = divexact(g, y)
        i += 1
    return factors



# -- Sturm sequences -----------------------------------------------------------

def sturm_sequence(p: list[int]) -> list[list[int]]:
    seq = [primitive(p), primitive(derivative(p))]
    while degree(seq[-1]) > 0:
        r = prem(seq[-2], seq[-1])
        if not any(r):
            break
        # keep the sign of -rem: primitive() forces a positive lead, so track it
        neg = [-c for c in r]
        g = 0
        for c in neg:
            g = math.gcd(g, c)
        seq.append([c // g for c in neg])
    return seq


def sign_at(p: Sequence[int], x: Fraction) -> int:
    """Sign of ``p(x)`` using integer arithmetic on the homogenised form."""
    n, m = x.numerator, x.denominator
    acc = 0
    mpow = 1
    # Horner on m^d * p(n/m)
    for k in range(len(p) - 1, -1, -1):
        acc = acc * n + p[k] * mpow
        mpow *= m
    return (acc > 0) - (acc < 0)


def _variations(signs: list[int]) -> int:
    s = [v for v in signs if v != 0]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def variations_at(seq: list[list[int]], x: Fraction) -> int:
    return _variations([sign_at(q, x) for q in seq])


def variations_at_inf(seq: list[list[int]], positive: bool) -> int:
    signs = []
    for q in seq:
        d = degree(q)
        lead = (q[-1] > 0) - (q[-1] < 0)
        if not positive and d % 2 == 1:
            lead = -lead
        signs.append(lead)
    return _variations(signs)


def count_real_roots(p: list[int]) -> int:
    """Number of distinct real roots, from the Sturm sequence signs at ±inf."""
    if degree(p) <= 0:
        return 0
    seq = sturm_sequence(p)
    return variations_at_inf(seq, False) - variations_at_inf(seq, True)


def cauchy_bound(p: Sequence[int]) -> Fraction:
    lead = abs(p[-1])
    m = max(abs(c) for c in p[:-1]) if len(p) > 1 else 0
    b = 1 + Fraction(m, lead)
    # round up to a power of two for cheap bisection points
    k = max(0, math.ceil(math.log2(float(b)))) if b > 1 else 0
    return Fraction(2) ** k


def _isolate_squarefree(p: list[int]) -> list[tuple[Fraction, Fraction, Fraction | None]]:
    seq = sturm_sequence(p)
    total = variations_at_inf(seq, False) - variations_at_inf(seq, True)
    if total == 0:
        return []
    B = cauchy_bound(p)
    out = []
    stack = [(-B, B, total)]
    while stack:
        lo, hi, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            out.append((lo, hi, None))
            continue
        mid = (lo + hi) / 2
        if sign_at(p, mid) == 0:
            out.append((mid, mid, mid))
            # exclude the exact root by nudging the split point on both sides
            eps = (hi - lo) / 4
            while True:
                left, right = mid - eps, mid + eps
                if sign_at(p, left) != 0 and sign_at(p, right) != 0 and \
                        variations_at(seq, left) - variations_at(seq, right) == 1:
                    break
                eps /= 2
            out[-1] = (left, right, mid)
            vl, vr = variations_at(seq, lo), variations_at(seq, hi)
            c1 = vl - variations_at(seq, left)
            c2 = variations_at(seq, right) - vr
            stack.append((lo, left, c1))
            stack.append((right, hi, c2))
            continue
        vm = variations_at(seq, mid)
        stack.append((lo, mid, variations_at(seq, lo) - vm))
        stack.append((mid, hi, vm - variations_at(seq, hi)))
    out.sort(key=lambda t: t[0])
    return out


def isolate_int(p: list[int]) -> list[IsolatingInterval]:
    """Isolate all real roots of an integer polynomial, with multiplicities."""
    if not any(p):
        raise ValueError("cannot isolate the roots of the zero polynomial")
    parts = squarefree_decomposition(list(p))
    intervals: list[tuple[IsolatingInterval, list[int]]] = []
    for f, mult in parts:
        for lo, hi, ex in _isolate_squarefree(f):
            intervals.append((IsolatingInterval(lo, hi, mult, ex), f))
    # make intervals of different factors disjoint
    intervals.sort(key=lambda t: t[0].lo)
    changed = True
    while changed:
        changed = False
        intervals.sort(key=lambda t: t[0].lo)
        for i in range(len(intervals) - 1):
            a, fa = intervals[i]
            b, fb = intervals[i + 1]
            if a.hi > b.lo:
                intervals[i] = (_shrink(a, fa), fa)
                intervals[i + 1] = (_shrink(b, fb), fb)
                changed = True
    return [iv for iv, _ in intervals]


def _shrink(iv: IsolatingInterval, f: list[int]) -> IsolatingInterval:
    w = (iv.hi - iv.lo) / 4
    exact = iv.exact
    if exact is None:
        # a rational root can sit on an endpoint or be hit by a bisection point
        exact = next((e for e in (iv.lo, iv.hi) if sign_at(f, e) == 0), None)
    if exact is None:
        lo, hi = refine_int(f, iv.lo, iv.hi, w)
        if lo < hi:
            return IsolatingInterval(lo, hi, iv.multiplicity, None)
        exact = lo
    return IsolatingInterval(exact - w, exact + w, iv.multiplicity, exact)


def refine_int(f: list[int], lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect a sign-changing isolating interval of a square-free ``f``."""
    slo = sign_at(f, lo)
    shi = sign_at(f, hi)
    if slo == 0 or shi == 0 or slo == shi:
        raise ValueError("interval endpoints must bracket a simple root")
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sign_at(f, mid)
        if s == 0:
            return mid, mid
        if s == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


# -- Polynomial-level API ------------------------------------------------------

def _univariate_ints(p: Polynomial) -> list[int]:
    if p.domain != QQ:
        p = p.exact()
    coeffs = p.as_univariate()
    if not any(coeffs):
        raise ValueError("cannot isolate the roots of the zero polynomial")
    return to_int_coeffs(coeffs)


def isolate_real_roots(p: Polynomial, squarefree_split: bool = True) -> list[IsolatingInterval]:
    """Disjoint isolating intervals for all real roots of a univariate polynomial.

    With ``squarefree_split`` (the default) multiplicities come from the square-free
    decomposition; without it the polynomial is made square-free first and all
    multiplicities are reported as 1.
    """
    ints = _univariate_ints(p)
    if squarefree_split:
        return isolate_int(ints)
    sf = squarefree_part(ints)
    return [IsolatingInterval(lo, hi, 1, ex) for lo, hi, ex in _isolate_squarefree(sf)]


def squarefree_part(p: list[int]) -> list[int]:
    g = gcd(p, derivative(p))
    return divexact(p, g) if degree(g) > 0 else primitive(p)


def real_roots_mp(p: Polynomial, dps: int = 50) -> list[tuple[mpmath.mpf, int]]:
    """Real roots to ``dps`` digits with multiplicities: exact isolation then Newton."""
    ints = _univariate_ints(p)
    out = []
    for f, mult in squarefree_decomposition(ints):
        for lo, hi, ex in _isolate_squarefree(f):
            if ex is not None:
                out.append((_mpq(ex, dps), mult))
                continue
            out.append((polish_root(f, lo, hi, dps), mult))
    out.sort(key=lambda t: t[0])
    return out


def _mpq(q: Fraction, dps: int):
    with mpmath.workdps(dps):
        return mpmath.mpf(q.numerator) / q.denominator


def polish_root(f: list[int], lo: Fraction, hi: Fraction, dps: int = 50) -> mpmath.mpf:
    """High-precision simple root inside a sign-changing interval of square-free ``f``."""
    lo, hi = refine_int(f, lo, hi, (hi - lo) / 2 ** 40 if hi > lo else Fraction(0))
    if lo == hi:
        return _mpq(lo, dps)
    with mpmath.workdps(dps + 10):
        coeffs = [mpmath.mpf(c) for c in reversed(f)]
        dcoeffs = [mpmath.mpf(c) for c in reversed(derivative(f))]
        a, b = _mpq(lo, dps + 10), _mpq(hi, dps + 10)
        x = (a + b) / 2
        for _ in range(200):
            fx = mpmath.polyval(coeffs, x)
            dfx = mpmath.polyval(dcoeffs, x)
            step = fx / dfx if dfx != 0 else mpmath.mpf(0)
            nx = x - step
            if not (a <= nx <= b):
                # fall back to bisection on a bad Newton step
                fa = mpmath.polyval(coeffs, a)
                if mpmath.sign(fa) == mpmath.sign(fx):
                    a = x
                else:
                    b = x
                nx = (a + b) / 2
            if abs(nx - x) <= mpmath.mpf(10) ** (-(dps + 5)) * (1 + abs(nx)):
                x = nx
                break
            x = nx
        return +x


def real_root_count(p: Polynomial) -> int:
    """Distinct real roots of a univariate exact polynomial."""
    ints = _univariate_ints(p)
    return count_real_roots(squarefree_part(ints))
