"""Deforming a curve with solitary points into a polynomial with equalized extrema.

Starting from a plane curve ``P = 0`` whose real singular points are all
solitary, the polynomial ``P + eps Q`` (with ``Q(p_i) = +-1``) turns every
solitary point into a Morse extremum with a small value of prescribed sign.
A Gauss-Newton continuation then moves coefficients and extremum locations
together until every tracked minimum sits at ``+a`` and every maximum at
``-a``; dividing by ``a`` gives values exactly ``+-1``.

``build_fd`` packages the whole route for a degree and the surface builders
combine the result with (degenerate) Tchebychev polynomials.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import logging
import math
from typing import Any, Sequence

import mpmath
import numpy as np
from scipy.optimize import minimize

from .constructions import (
    SurfaceSpec,
    conic_pair_points,
    conic_pair_quartic,
    conjugate_lines_conic,
    degenerate_tchebychev_certified,
    pecker_curve,
    pecker_double_points,
    separable_surface,
    tchebychev,
)
from .polycore import CompiledPoly, Polynomial, QQ, RR, monomials
from .singular.census import SingularityCensus
from .singular.classify import classify
from .singular.critical import CriticalPoint, critical_points_1d, critical_points_2d, signature

log = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-9  # certificate bound on |f(q_i) -+ 1| and |grad f(q_i)|


class DeformError(ArithmeticError):
    def __init__(self, msg: str, diagnostics: dict | None = None):
        super().__init__(msg)
        self.diagnostics = diagnostics or {}


# -- monomial basis ----------------------------------------------------------------

class _Basis:
    """Monomials of total degree <= d in (x, y)."""

    def __init__(self, d: int):
        self.d = d
        self.exps = np.array(list(monomials(2, d)), dtype=int)
        self.size = len(self.exps)

    def value(self, pts: np.ndarray) -> np.ndarray:
        i, j = self.exps[:, 0], self.exps[:, 1]
        return np.power(pts[:, 0:1], i) * np.power(pts[:, 1:2], j)

    def poly(self, c: np.ndarray) -> Polynomial:
        return Polynomial(("x", "y"), {tuple(int(k) for k in e): float(v) for e, v in zip(self.exps, c)}, RR)


# -- data types --------------------------------------------------------------------

@dataclass
class SolitarySeed:
    location: tuple[float, float]
    parity: str  # even | odd


@dataclass
class DeformProblem:
    P: Polynomial
    seeds: list[SolitarySeed]
    target_min: float = 1.0
    target_max: float = -1.0
    eps_rel: float = 1e-3
    a_final: float = 1e-2
    steps: int = 8
    label: str = ""
    chart: list[list[str]] | None = None

    def __post_init__(self):
        if not self.seeds:
            raise ValueError("no solitary points to deform")


@dataclass
class TrackedPoint:
    location: tuple[float, float]
    value: float
    kind: str
    seed: tuple[float, float]
    grad_norm: float
    signature: tuple[int, int, int]


@dataclass
class DeformResult:
    """Equalized polynomial with its tracked extrema.

    ``alpha`` counts minima and ``beta`` maxima sitting on their branch
    level: +1 / -1 on branch A, the mirrored -1 / +1 on branch B. ``f`` is
    exact (dyadic rational coefficients); ``level`` is the working level
    ``a`` that was divided out and ``gap`` the nearest foreign critical value
    of the seed that bounded it.
    """

    f: Polynomial
    critical_points: list[TrackedPoint]
    alpha: int
    beta: int
    residual_max: float
    branch: str
    label: str = ""
    chart: list[list[str]] | None = None
    history: list[dict[str, Any]] = field(default_factory=list)
    iterations: int = 0
    level: float = 1e-2
    gap: float | None = None

    @property
    def extrema(self) -> int:
        return self.alpha + self.beta

    def to_json(self) -> dict[str, Any]:
        from .polycore import poly_to_json

        return {
            "label": self.label, "branch": self.branch, "alpha": self.alpha, "beta": self.beta,
            "residual_max": self.residual_max, "iterations": self.iterations, "chart": self.chart,
            "level": self.level, "gap": self.gap,
            "polynomial": poly_to_json(self.f),
            "critical_points": [
                {"location": list(t.location), "value": t.value, "kind": t.kind, "seed": list(t.seed),
                 "grad_norm": t.grad_norm, "signature": list(t.signature)}
                for t in self.critical_points
            ],
            "history": self.history,
        }


# -- sign interpolation -------------------------------------------------------------

def sign_interpolation(P: Polynomial, points: Sequence[Sequence[float]], signs: Sequence[float],
                       degree: int | None = None) -> Polynomial:
    """Minimal-norm polynomial of degree ``deg P`` with ``Q(p_i) = signs_i``."""
    d = P.degree() if degree is None else degree
    basis = _Basis(d)
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) > basis.size:
        raise ValueError(f"{len(pts)} conditions exceed the {basis.size} coefficients of degree {d}")
    A = basis.value(pts)
    if np.linalg.matrix_rank(A) < len(pts):
        raise np.linalg.LinAlgError("interpolation matrix is rank deficient (points in special position)")
    c, *_ = np.linalg.lstsq(A, np.asarray(signs, dtype=float), rcond=None)
    return basis.poly(c)


# -- Gauss-Newton equalization -------------------------------------------------------
#
# Residuals are evaluated in multiprecision and corrections solved in float64
# (iterative refinement). Pecker seeds have saddles whose values lie within
# 1e-11 .. 1e-16 of the solitary level, so the working level can be tiny and
# plain float64 residuals would drown in cancellation.

def _mpf(c) -> mpmath.mpf:
    return mpmath.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else mpmath.mpf(c)


def _to_fraction(x: mpmath.mpf, bits: int = 64) -> Fraction:
    return Fraction(int(mpmath.nint(x * mpmath.mpf(2) ** bits)), 2 ** bits)


class _MpState:
    """Values, gradients and Hessians of ``sum c_e x^e`` at the tracked points."""

    def __init__(self, exps: np.ndarray, c: list, q: list):
        d = int(exps.sum(axis=1).max())
        m = len(q)
        N = len(exps)
        self.val, self.gx, self.gy, self.hxx, self.hxy, self.hyy = ([None] * m for _ in range(6))
        self.V, self.Dx, self.Dy = np.zeros((m, N)), np.zeros((m, N)), np.zeros((m, N))
        for k, (x, y) in enumerate(q):
            px = [mpmath.mpf(1)]
            py = [mpmath.mpf(1)]
            for _ in range(d):
                px.append(px[-1] * x)
                py.append(py[-1] * y)
            v = gx = gy = hxx = hxy = hyy = mpmath.mpf(0)
            for n, (i, j) in enumerate(exps):
                i, j = int(i), int(j)
                cij = c[n]
                mono = px[i] * py[j]
                v += cij * mono
                self.V[k, n] = float(mono)
                if i:
                    t = i * px[i - 1] * py[j]
                    gx += cij * t
                    self.Dx[k, n] = float(t)
                    if i > 1:
                        hxx += cij * i * (i - 1) * px[i - 2] * py[j]
                    if j:
                        hxy += cij * i * j * px[i - 1] * py[j - 1]
                if j:
                    t = j * px[i] * py[j - 1]
                    gy += cij * t
                    self.Dy[k, n] = float(t)
                    if j > 1:
                        hyy += cij * j * (j - 1) * px[i] * py[j - 2]
            self.val[k], self.gx[k], self.gy[k] = v, gx, gy
            self.hxx[k], self.hxy[k], self.hyy[k] = hxx, hxy, hyy

    def residual(self, targets) -> list:
        return [v - t for v, t in zip(self.val, targets)] + list(self.gx) + list(self.gy)

    def jacobian(self) -> np.ndarray:
        m, N = self.V.shape
        J = np.zeros((3 * m, N + 2 * m))
        J[:m, :N], J[m:2 * m, :N], J[2 * m:, :N] = self.V, self.Dx, self.Dy
        for i in range(m):
            J[i, N + 2 * i], J[i, N + 2 * i + 1] = float(self.gx[i]), float(self.gy[i])
            J[m + i, N + 2 * i], J[m + i, N + 2 * i + 1] = float(self.hxx[i]), float(self.hxy[i])
            J[2 * m + i, N + 2 * i], J[2 * m + i, N + 2 * i + 1] = float(self.hxy[i]), float(self.hyy[i])
        return J

    def kinds(self) -> list[int]:
        """+1 for a local minimum, -1 for a maximum, 0 for a saddle or degenerate point."""
        out = []
        for a, b, c in zip(self.hxx, self.hxy, self.hyy):
            det = a * c - b * b
            out.append(0 if det <= 0 else (1 if a > 0 else -1))
        return out

    def signature(self, i: int) -> tuple[int, int, int]:
        return signature(np.array([[float(self.hxx[i]), float(self.hxy[i])],
                                   [float(self.hxy[i]), float(self.hyy[i])]]), rtol=1e-14)


def _gauss_newton_mp(exps, c, q, targets, tol, max_iter=40):
    """Minimal-norm Gauss-Newton; returns (c, q, residual, iterations, state)."""
    N = len(exps)
    for it in range(max_iter + 1):
        st = _MpState(exps, c, q)
        r = st.residual(targets)
        res = max(abs(v) for v in r)
        if res <= tol or it == max_iter:
            return c, q, res, it, st
        step, *_ = np.linalg.lstsq(st.jacobian(), -np.array([float(v) for v in r]), rcond=None)
        c = [ci + mpmath.mpf(float(s)) for ci, s in zip(c, step[:N])]
        q = [(x + mpmath.mpf(float(step[N + 2 * k])), y + mpmath.mpf(float(step[N + 2 * k + 1])))
             for k, (x, y) in enumerate(q)]
    raise AssertionError("unreachable")


def equalize_critical_values(P: Polynomial, Q: Polynomial, eps0: float, seeds: Sequence[Sequence[float]],
                             signs: Sequence[float], kinds: Sequence[int] | None = None,
                             a_final: float = 1e-2, steps: int = 8, branch: str = "A",
                             label: str = "") -> DeformResult:
    """Drive the critical point near each seed of ``P + eps0 Q`` to level ``signs_i * a_final``.

    ``kinds_i`` (default ``signs_i``) is the Hessian type each point must
    keep: +1 a minimum, -1 a maximum. Levels grow geometrically from
    ``eps0`` to ``a_final`` in ``steps`` stages; afterwards ``f / a_final``
    is rounded to dyadic rationals, giving an exact polynomial whose
    tracked extrema sit at ``signs_i`` up to the reported residual.
    """
    d = max(P.degree(), Q.degree())
    basis = _Basis(d)
    exps = basis.exps
    seeds = np.asarray(seeds, dtype=float).reshape(-1, 2)
    signs = [int(np.sign(s)) for s in signs]
    kinds = signs if kinds is None else [int(k) for k in kinds]
    m = len(seeds)
    dists = [np.linalg.norm(seeds[i] - seeds[j]) for i in range(m) for j in range(i + 1, m)]
    radius = min(dists) / 3 if dists else 0.25 * (1 + float(np.linalg.norm(seeds[0])))
    dps = 40 + max(0, int(math.ceil(-math.log10(a_final))))
    history: list[dict[str, Any]] = []
    with mpmath.workdps(dps):
        Pc = P.with_vars(("x", "y"))
        Qc = Q.with_vars(("x", "y"))
        c = [_mpf(Pc.coeff(tuple(int(k) for k in e))) + _mpf(eps0) * _mpf(Qc.coeff(tuple(int(k) for k in e)))
             for e in exps]
        q = [(mpmath.mpf(float(x)), mpmath.mpf(float(y))) for x, y in seeds]

        def check(stage: str, st: _MpState, res):
            loc = np.array([[float(x), float(y)] for x, y in q])
            drift = np.linalg.norm(loc - seeds, axis=1)
            pair = min((float(np.linalg.norm(loc[i] - loc[j])) for i in range(m) for j in range(i + 1, m)),
                       default=float("inf"))
            got = st.kinds()
            entry = {"stage": stage, "residual": float(res), "max_drift": float(np.max(drift)),
                     "radius": float(radius), "min_pair_distance": pair,
                     "index_conserved": got == kinds}
            history.append(entry)
            if np.any(drift >= radius) or pair <= 2 * radius:
                raise DeformError(f"{stage}: a tracked point left its tracking disc", entry)
            if got != kinds:
                raise DeformError(f"{stage}: critical point index changed (count not conserved)", entry)

        levels = np.geomspace(eps0, a_final, steps + 1) if eps0 > 0 else np.array([a_final])
        iters = 0
        for j, a in enumerate(levels):
            tol = max(a * 1e-20, mpmath.mpf(10) ** (-(dps - 8)))
            tgt = [mpmath.mpf(float(a)) * s for s in signs] if j < len(levels) - 1 else \
                [_mpf(Fraction(repr(a_final))) * s for s in signs]
            c, q, res, it, st = _gauss_newton_mp(exps, c, q, tgt, tol)
            iters += it
            check(f"level {j} (a={a:.3g})", st, res)
            if res > tol:
                raise DeformError(f"Gauss-Newton stalled at level {a:.3g} (residual {float(res):.3g})",
                                  history[-1])
        inv = 1 / _mpf(Fraction(repr(a_final)))
        coeffs = {tuple(int(k) for k in e): _to_fraction(ci * inv) for e, ci in zip(exps, c)}
        f = Polynomial(("x", "y"), coeffs, QQ)
        # polish locations on the exact rounded polynomial and measure the certificate
        fc = [_mpf(f.coeff(tuple(int(k) for k in e))) for e in exps]
        for _ in range(6):
            st = _MpState(exps, fc, q)
            q = [(x - (st.hyy[k] * st.gx[k] - st.hxy[k] * st.gy[k]) / (st.hxx[k] * st.hyy[k] - st.hxy[k] ** 2),
                  y - (st.hxx[k] * st.gy[k] - st.hxy[k] * st.gx[k]) / (st.hxx[k] * st.hyy[k] - st.hxy[k] ** 2))
                 for k, (x, y) in enumerate(q)]
        st = _MpState(exps, fc, q)
        residual = max(max(abs(st.val[k] - signs[k]), abs(st.gx[k]), abs(st.gy[k])) for k in range(m))
        check("rescaled", st, residual)
        if residual >= RESIDUAL_TOL:
            raise DeformError(f"equalization residual {float(residual):.3g} exceeds {RESIDUAL_TOL}", history[-1])
        tracked = []
        for k in range(m):
            sig = st.signature(k)
            kind = {1: "min", -1: "max"}.get(st.kinds()[k], "other")
            grad = float(mpmath.sqrt(st.gx[k] ** 2 + st.gy[k] ** 2))
            tracked.append(TrackedPoint((float(q[k][0]), float(q[k][1])), float(st.val[k]), kind,
                                        (float(seeds[k, 0]), float(seeds[k, 1])), grad, sig))
    lo = -1 if branch == "A" else 1
    alpha = sum(t.kind == "min" and abs(t.value + lo) < 1e-6 for t in tracked)
    beta = sum(t.kind == "max" and abs(t.value - lo) < 1e-6 for t in tracked)
    return DeformResult(f, tracked, alpha, beta, float(residual), branch, label, history=history,
                        iterations=iters, level=float(a_final))


# -- seeds -------------------------------------------------------------------------

def _chart_objective(m, P, V):
    """log(spread) - 2 log(worst Hessian conditioning) of the solitary points in chart ``m``.

    The Hessian of a solitary point is proportional to ``|<n, u>|^2`` for the
    complex branch normal ``n``; its eigenvalue ratio is the squared ratio of
    singular values of ``[Re w; Im w]`` with ``w`` the pushed-forward tangent.
    """
    M = m.reshape(3, 3)
    Q = P @ M.T
    w = Q[:, 2]
    if np.min(np.abs(w)) < 1e-9 * np.max(np.abs(Q)):
        return 1e9
    q = Q[:, :2] / w[:, None]
    W = (V @ M[:2, :2].T) * w[:, None] - Q[:, :2] * (V @ M[2, :2])[:, None]
    sv = np.linalg.svd(np.stack([W.real, W.imag], axis=1), compute_uv=False)
    worst = float(np.min(sv[:, 1] / sv[:, 0]))
    D = np.linalg.norm(q[:, None] - q[None], axis=2)
    iu = np.triu_indices(len(q), 1)
    return float(np.log(D[iu].max() / D[iu].min()) - 2 * np.log(max(worst, 1e-300)))


def _exact_inverse(M):
    from .polycore.linalg import solve_exact

    cols = [solve_exact(M, [1 if i == j else 0 for i in range(3)]) for j in range(3)]
    return [[cols[j][i] for j in range(3)] for i in range(3)]


@lru_cache(maxsize=None)
def pecker_chart(d: int, starts: int = 12, seed: int = 0) -> tuple[tuple[Fraction, ...], ...]:
    """A rational projective chart in which the Pecker solitary points are well conditioned.

    Balances the spread of the points against the worst Hessian eigenvalue
    ratio, by Nelder-Mead from a fixed set of random starts, then normalizes the images
    to the unit disc and rounds the matrix to small rationals.
    """
    dps = pecker_double_points(d)
    pts = np.array([[q.image[0], q.image[1], 1.0] for q in dps])
    t = np.array([complex(q.t) for q in dps])
    V = np.stack([d * t ** (d - 1), (d - 1) * (t - 1) ** (d - 2)], axis=1)
    if len(pts) < 3:
        return ((Fraction(1), Fraction(0), Fraction(0)), (Fraction(0), Fraction(1), Fraction(0)),
                (Fraction(0), Fraction(0), Fraction(1)))
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(starts):
        r = minimize(_chart_objective, rng.normal(size=9), args=(pts, V), method="Nelder-Mead",
                     options={"maxiter": 6000, "xatol": 1e-10, "fatol": 1e-12})
        if best is None or r.fun < best.fun:
            best = r
    M = best.x.reshape(3, 3)
    Q = pts @ M.T
    q = Q[:, :2] / Q[:, 2:3]
    centre = q.mean(axis=0)
    scale = np.max(np.linalg.norm(q - centre, axis=1))
    A = np.array([[1 / scale, 0, -centre[0] / scale], [0, 1 / scale, -centre[1] / scale], [0, 0, 1]])
    M = A @ M
    M = M / np.max(np.abs(M))
    return tuple(tuple(Fraction(float(v)).limit_denominator(512) for v in row) for row in M)


def apply_chart(P: Polynomial, M) -> Polynomial:
    """``P`` in the chart where ``(X, Y, W) = M (x, y, 1)``, dehomogenized at ``W = 1``."""
    Minv = _exact_inverse([list(r) for r in M])
    X, Y = Polynomial.gens("x", "y")
    Ph = P.with_vars(("x", "y")).homogenize("w", first=False)
    lin = [Minv[i][0] * X + Minv[i][1] * Y + Minv[i][2] for i in range(3)]
    return Ph.subs({"x": lin[0], "y": lin[1], "w": lin[2]}, ("x", "y"))


def chart_point(M, p) -> tuple[float, float]:
    v = np.array([[float(a) for a in row] for row in M]) @ np.array([p[0], p[1], 1.0])
    return float(v[0] / v[2]), float(v[1] / v[2])


def _polish_solitary(P: Polynomial, approx: Sequence[Sequence[float]]) -> list[SolitarySeed]:
    cp = CompiledPoly(P.numeric())
    out = []
    for p in approx:
        x = np.array(p, dtype=float)
        for _ in range(30):
            x = x - np.linalg.solve(cp.hess(x)[0], cp.grad(x)[0])
        sp = classify(P.numeric(), x, rank_rtol=1e-10)
        if sp.real_type != "A1_solitary":
            raise DeformError(f"seed point {tuple(x)} is not an A1 solitary point ({sp.label})")
        out.append(SolitarySeed((float(x[0]), float(x[1])), sp.parity))
    return out


def seed_problem(d: int) -> DeformProblem:
    """The seed curve for degree d with its solitary points and parities.

    d = 2 uses the conjugate lines, d = 4 the pair of ellipses, every other
    degree the Pecker curve in its conditioned chart. The curve is scaled to
    unit coefficient size (exactly, by a rational factor); for even d its sign
    is chosen so that odd points, which become maxima paired with the more
    numerous minima of T_d, form the majority.
    """
    chart = None
    if d == 2:
        P = conjugate_lines_conic()
        approx = [(0.0, 0.0)]
    elif d == 4:
        P = conic_pair_quartic()
        approx = conic_pair_points()
    elif d >= 3:
        M = pecker_chart(d)
        P = apply_chart(pecker_curve(d), M)
        approx = [chart_point(M, q.image) for q in pecker_double_points(d)]
        chart = [[str(v) for v in row] for row in M]
    else:
        raise ValueError("degree must be at least 2")
    P = P.exact()
    P = P * (1 / Fraction(P.coeff_scale()).limit_denominator(10 ** 12))
    seeds = _polish_solitary(P, approx)
    if d % 2 == 0:
        even = sum(s.parity == "even" for s in seeds)
        if even > len(seeds) - even:
            P = -P
            seeds = [SolitarySeed(s.location, "odd" if s.parity == "even" else "even") for s in seeds]
    return DeformProblem(P, seeds, label=f"seed-{d}", chart=chart)


@lru_cache(maxsize=None)
def _seed_cached(d: int) -> DeformProblem:
    return seed_problem(d)


def level_gap(P: Polynomial) -> float:
    """Smallest nonzero |critical value| of ``P``, certified by elimination (inf if none)."""
    from .singular.elimination import critical_values, real_critical_points

    sols = real_critical_points(P)
    vals = [abs(v) for v in critical_values(P, sols)]
    nonzero = [float(v) for v in vals if v > mpmath.mpf(10) ** -40]
    return min(nonzero) if nonzero else math.inf


@lru_cache(maxsize=None)
def _gap_cached(d: int) -> float:
    return level_gap(_seed_cached(d).P)


def working_level(gap: float, a_max: float = 1e-2) -> float:
    """The equalization level: the scheduled 1e-2 unless another critical value is closer."""
    return min(a_max, gap / 100)


def build_fd(d: int, branch: str = "A", steps: int = 8) -> DeformResult:
    """Degree-d polynomial with equalized extrema.

    Branch A puts minima at +1 and maxima at -1; branch B flips every
    interpolation sign and gives the mirror picture.
    """
    if branch not in ("A", "B"):
        raise ValueError("branch must be 'A' or 'B'")
    prob = _seed_cached(d)
    pts = [s.location for s in prob.seeds]
    kinds = [1 if s.parity == "even" else -1 for s in prob.seeds]
    signs = kinds if branch == "A" else [-k for k in kinds]
    Q = sign_interpolation(prob.P, pts, signs)
    gap = _gap_cached(d)
    a = working_level(gap)
    # the schedule keeps the ratio eps0 : a = 1e-3 : 1e-2 (coefficients normalized to scale 1)
    eps0 = 0.1 * a / max(Q.coeff_scale(), 1e-300) * prob.P.coeff_scale()
    res = equalize_critical_values(prob.P, Q, eps0, pts, signs, kinds, a, steps, branch, f"f{d}")
    res.chart = prob.chart
    res.gap = gap
    return res


@lru_cache(maxsize=None)
def build_fd_cached(d: int, branch: str = "A") -> DeformResult:
    return build_fd(d, branch)


# -- surfaces ------------------------------------------------------------------------

def _f_critical_seeds(fd: DeformResult) -> np.ndarray:
    return np.array([t.location for t in fd.critical_points])


def build_solitary_surface(d: int, fd: DeformResult | None = None, grid_n: int = 64
                           ) -> tuple[SurfaceSpec, SingularityCensus, DeformResult]:
    """The surface ``f_d(x, y) = T_d(z)`` and its singularity census."""
    fd = fd or build_fd_cached(d)
    surf = separable_surface(fd.f, tchebychev(d, "z"), f"f{d}-T{d}", d)
    census = _census_with_tracked(surf, fd, grid_n)
    return surf, census, fd


def _census_with_tracked(surf: SurfaceSpec, fd: DeformResult, grid_n: int,
                         g_points: list[CriticalPoint] | None = None) -> SingularityCensus:
    from .singular.census import pair_critical_values, _classify_separable, singular_at_infinity

    rep = critical_points_2d(surf.f, grid_n=grid_n, verify=False, extra_seeds=_f_critical_seeds(fd),
                             polish_dps=50)
    gpts = g_points if g_points is not None else critical_points_1d(surf.g)
    F = surf.polynomial()
    pts = [_classify_separable(F, (*pr.f_point.location, pr.g_point.location[0]), pr)
           for pr in pair_critical_values(rep.points, gpts)]
    pts.sort(key=lambda s: s.location)
    if len(pts) > (surf.degree - 1) ** 3:
        raise ArithmeticError("census exceeds (d-1)^3")
    cert = {"path": "separable-pairing", "f_critical": rep.found, "g_critical": len(gpts),
            "deform_residual": fd.residual_max, "alpha": fd.alpha, "beta": fd.beta}
    return SingularityCensus(surf.degree, pts, singular_at_infinity(F), cert)


def expected_solitary_count(alpha: int, beta: int, d: int) -> int:
    """Minima at +1 meet the maxima of T_d at +1; maxima at -1 meet its minima at -1."""
    return alpha * ((d - 1) // 2) + beta * (d // 2)


def build_a2km1_surface(d: int, k: int, fd: DeformResult | None = None, grid_n: int = 64
                        ) -> tuple[SurfaceSpec, SingularityCensus, DeformResult]:
    """The surface ``f_d(x, y) = T_d^{2k}(z)`` with degenerate extrema in ``z``."""
    fd = fd or build_fd_cached(d)
    deg = degenerate_tchebychev_certified(d, k, "z")
    if not deg.certified():
        raise DeformError(f"degenerate Tchebychev ({d},{k}) failed certification", deg.to_json())
    surf = separable_surface(fd.f, deg.poly, f"f{d}-T{d}^{2 * k}", d)
    if deg.poly.domain == QQ:
        gpts = critical_points_1d(deg.poly)
    else:
        gpts = [CriticalPoint((e.location,), e.value, (0, 0, 1), e.order, e.derivative_residual, e.kind)
                for e in deg.extrema]
        # the remaining critical points come from the float path
        extra = [p for p in critical_points_1d(deg.poly)
                 if all(abs(p.location[0] - e.location) > 1e-4 for e in deg.extrema)]
        gpts.extend(extra)
    census = _census_with_tracked(surf, fd, grid_n, g_points=gpts)
    census.certification["degenerate_tchebychev"] = deg.to_json()
    return surf, census, fd


def extrema_budget(fd: DeformResult) -> dict[str, Any]:
    """Real critical points of ``f_d`` counted by elimination, against the cap (d-1)^2."""
    from .singular.elimination import real_critical_points

    d = fd.f.degree()
    sols = real_critical_points(fd.f)
    return {"degree": d, "real_critical_points": len(sols), "cap": (d - 1) ** 2,
            "within_cap": len(sols) <= (d - 1) ** 2, "certified": all(s.certified for s in sols)}
