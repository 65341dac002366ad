"""Critical points of univariate and bivariate polynomials."""
from __future__ import annotations

from dataclasses import dataclass, field, asdict
import logging
import math

import mpmath
import numpy as np

from ..polycore import CompiledPoly, Polynomial, QQ
from ..polycore.univariate import real_roots_mp

log = logging.getLogger(__name__)


@dataclass
class CriticalPoint:
    location: tuple[float, ...]
    value: float
    hessian_signature: tuple[int, int, int]
    multiplicity: int = 1
    residual: float = 0.0
    kind: str = "morse"  # min | max | saddle | inflection | degenerate
    source: str = "newton"  # newton | elimination

    @property
    def is_min(self) -> bool:
        return self.kind == "min"

    @property
    def is_max(self) -> bool:
        return self.kind == "max"

    def to_json(self) -> dict:
        out = asdict(self)
        out["location"] = list(self.location)
        out["hessian_signature"] = list(self.hessian_signature)
        return out


@dataclass
class CriticalReport:
    points: list[CriticalPoint]
    box: tuple[float, float, float, float]
    oracle_count: int | None = None
    status: str = "heuristic"  # complete | incomplete | heuristic
    notes: list[str] = field(default_factory=list)

    @property
    def found(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        return {
            "found": self.found, "oracle_count": self.oracle_count, "status": self.status,
            "box": list(self.box), "notes": self.notes,
            "points": [p.to_json() for p in self.points],
        }


def signature(H: np.ndarray, rtol: float = 1e-6, scale: float | None = None) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of a symmetric matrix, zero meaning below ``rtol * scale``."""
    w = np.linalg.eigvalsh(np.asarray(H, dtype=float))
    if scale is None:
        scale = max(float(np.max(np.abs(w))), 1e-300)
    thr = rtol * scale
    return int(np.sum(w > thr)), int(np.sum(w < -thr)), int(np.sum(np.abs(w) <= thr))


# -- one variable ------------------------------------------------------------

def _derivs_mp(coeffs, x, upto):
    out = []
    c = list(coeffs)
    for _ in range(upto + 1):
        out.append(mpmath.polyval(list(reversed(c)), x) if c else mpmath.mpf(0))
        c = [i * v for i, v in enumerate(c)][1:]
    return out


def critical_points_1d(g: Polynomial, dps: int = 40) -> list[CriticalPoint]:
    """All real critical points of a univariate polynomial.

    Exact input goes through root isolation of ``g'`` so the list is complete
    and multiplicities are exact. Float input is handled by clustering the
    numerical roots of ``g'`` (multiplicity = cluster size).
    """
    var = next((v for v in g.vars if g.degree_in(v) > 0), g.vars[0] if g.vars else "z")
    if g.degree() <= 0:
        return []
    g = g.with_vars((var,))
    coeffs = g.as_univariate()
    dg = g.diff(var)
    if g.domain == QQ:
        roots = [(r, m) for r, m in real_roots_mp(dg, dps)]
    else:
        roots = _float_roots_clustered([float(c) for c in dg.as_univariate()])
    out = []
    with mpmath.workdps(dps):
        mc = [mpmath.mpf(c.numerator) / c.denominator if hasattr(c, "denominator") else mpmath.mpf(c)
              for c in coeffs]
        for r, m in roots:
            ders = _derivs_mp(mc, r, m + 1)
            nxt = ders[m + 1]
            if m % 2 == 1:
                kind = "min" if nxt > 0 else "max"
            else:
                kind = "inflection"
            g2 = float(ders[2]) if len(ders) > 2 else 0.0
            sig = (1, 0, 0) if g2 > 0 and m == 1 else (0, 1, 0) if g2 < 0 and m == 1 else (0, 0, 1)
            out.append(CriticalPoint((float(r),), float(ders[0]), sig, m, float(abs(ders[1])), kind))
    return out


def _float_roots_clustered(dcoeffs: list[float], rtol: float = 1e-3):
    while dcoeffs and dcoeffs[-1] == 0:
        dcoeffs.pop()
    if len(dcoeffs) < 2:
        return []
    r = np.roots(list(reversed(dcoeffs)))
    r = sorted(r, key=lambda z: (z.real, z.imag))
    used = [False] * len(r)
    out = []
    for i, z in enumerate(r):
        if used[i]:
            continue
        cl = [j for j in range(len(r)) if not used[j] and abs(r[j] - z) < rtol * (1 + abs(z))]
        for j in cl:
            used[j] = True
        c = np.mean([r[j] for j in cl])
        if abs(c.imag) < rtol * (1 + abs(c)):
            out.append((mpmath.mpf(float(c.real)), len(cl)))
    return out


# -- two variables -----------------------------------------------------------

def auto_box(f: Polynomial, margin: float = 1.5) -> tuple[float, float, float, float]:
    """A square box sized from the ratio of lower- to top-degree coefficients."""
    d = f.degree()
    top = f.homogeneous_part(d)
    lead = max(abs(float(c)) for c in top.terms.values())
    R = 1.0
    for e, c in f.terms.items():
        k = d - sum(e)
        if k > 0:
            R = max(R, (abs(float(c)) / lead) ** (1.0 / k))
    R *= margin
    return (-R, R, -R, R)


def _newton(cp: CompiledPoly, X: np.ndarray, iters: int, step_cap: float) -> np.ndarray:
    """Damped Newton on the gradient; steps are capped at ``max(step_cap, |X|/2)``."""
    X = X.copy()
    for _ in range(iters):
        G = cp.grad(X)
        H = cp.hess(X)
        det = H[:, 0, 0] * H[:, 1, 1] - H[:, 0, 1] * H[:, 1, 0]
        ok = np.abs(det) > 1e-300
        safe = np.where(ok, det, 1.0)
        dx = (H[:, 1, 1] * G[:, 0] - H[:, 0, 1] * G[:, 1]) / safe
        dy = (-H[:, 1, 0] * G[:, 0] + H[:, 0, 0] * G[:, 1]) / safe
        step = np.stack([dx, dy], axis=1)
        step[~ok] = 0.0
        norm = np.linalg.norm(step, axis=1)
        cap = np.maximum(step_cap, 0.5 * np.linalg.norm(X, axis=1))
        big = norm > cap
        step[big] *= (cap[big] / norm[big])[:, None]
        X -= step
        X[~np.isfinite(X).all(axis=1)] = np.nan
    return X


def _dedupe(X: np.ndarray, tol: float) -> list[np.ndarray]:
    order = np.lexsort((X[:, 1], X[:, 0]))
    reps = np.empty((len(X), X.shape[1]))
    rnorm = np.empty(len(X))
    n = 0
    for i in order:
        p = X[i]
        if n and np.any(np.linalg.norm(reps[:n] - p, axis=1) <= tol * (1 + rnorm[:n])):
            continue
        reps[n], rnorm[n] = p, np.linalg.norm(p)
        n += 1
    return list(reps[:n])


def _seeds(box, grid_n: int, scales=(1.0, 0.1, 0.01)) -> np.ndarray:
    x0, x1, y0, y1 = box
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    out = []
    for s in scales:
        hx, hy = (x1 - x0) * s / 2, (y1 - y0) * s / 2
        xs = np.linspace(cx - hx, cx + hx, grid_n)
        ys = np.linspace(cy - hy, cy + hy, grid_n)
        gx, gy = np.meshgrid(xs, ys)
        out.append(np.column_stack([gx.ravel(), gy.ravel()]))
    return np.vstack(out)


def _log_polar_seeds(r_min: float, r_max: float, n_r: int = 40, n_theta: int = 48) -> np.ndarray:
    """Seeds on geometric circles, for critical points spread over many scales."""
    radii = np.geomspace(r_min, r_max, n_r)
    th = np.linspace(0, 2 * np.pi, n_theta, endpoint=False) + 0.1234
    R, T = np.meshgrid(radii, th)
    return np.column_stack([(R * np.cos(T)).ravel(), (R * np.sin(T)).ravel()])


def _kind(sig: tuple[int, int, int]) -> str:
    return {(2, 0, 0): "min", (0, 2, 0): "max", (1, 1, 0): "saddle"}.get(sig, "degenerate")


def critical_points_2d(f: Polynomial, box=None, grid_n: int = 64, tol: float = 1e-9,
                       verify: bool = True, extra_seeds: np.ndarray | None = None,
                       polish_dps: int = 0) -> CriticalReport:
    """Real critical points of a bivariate polynomial by seeded Newton iteration.

    With ``verify`` the result is compared against the elimination oracle.
    Oracle points Newton missed are added (tagged ``source="elimination"``)
    and the status records whether that recovery was needed.
    """
    if f.nvars != 2:
        raise ValueError("critical_points_2d expects a bivariate polynomial")
    if f.degree() < 2:
        return CriticalReport([], box or (-1, 1, -1, 1), 0, "complete")
    box = tuple(box) if box is not None else auto_box(f)
    cp = CompiledPoly(f)
    seeds = _seeds(box, grid_n)
    half = max(abs(v) for v in box)
    seeds = np.vstack([seeds, _log_polar_seeds(1e-3 * half, 1e3 * half)])
    if extra_seeds is not None:
        seeds = np.vstack([seeds, np.asarray(extra_seeds, dtype=float).reshape(-1, 2)])
    width = max(box[1] - box[0], box[3] - box[2])
    X = _newton(cp, seeds, 80, width / 4)
    X = X[np.isfinite(X).all(axis=1)]
    G = cp.grad(X)
    scale = cp.grad_scale(X)
    res = np.max(np.abs(G), axis=1) / np.maximum(scale, 1e-300)
    keep = res < 1e-8
    X = X[keep]
    reps = _dedupe(X, 1e-6) if len(X) else []
    pts = []
    for p in reps:
        p = _newton(cp, p[None, :], 3, width)[0]
        value = None
        if polish_dps:
            p, value = _mp_polish(f, p, polish_dps)
        g = cp.grad(p)[0]
        H = cp.hess(p)[0]
        hscale = max(float(np.max(np.abs(H))), 1e-300)
        sig = signature(H, 1e-6, hscale)
        r = float(np.max(np.abs(g)) / max(cp.grad_scale(p)[0], 1e-300))
        value = float(cp.value(p)[0]) if value is None else value
        pts.append(CriticalPoint((float(p[0]), float(p[1])), value, sig,
                                 1 if sig[2] == 0 else 2, r, _kind(sig)))
    pts = _dedupe_points(pts)
    report = CriticalReport(pts, box)
    if verify:
        _verify_against_oracle(f, report)
    return report


def _verify_against_oracle(f: Polynomial, report: CriticalReport) -> None:
    from .elimination import critical_values, hessian_mp, real_critical_points

    try:
        oracle = real_critical_points(f)
    except (ArithmeticError, ValueError) as exc:
        report.notes.append(f"oracle unavailable: {exc}")
        return
    report.oracle_count = len(oracle)
    vals = critical_values(f, oracle)
    newton = report.points
    matched = set()
    recovered = []
    for s, v in zip(oracle, vals):
        loc = s.point()
        hit = next((i for i, p in enumerate(newton)
                    if math.dist(p.location, loc) <= 1e-6 * (1 + math.hypot(*loc))), None)
        if hit is not None:
            matched.add(hit)
            continue
        H = np.array([[float(h) for h in row] for row in hessian_mp(f, s)])
        sig = signature(H, 1e-6)
        recovered.append(CriticalPoint(loc, float(v), sig, 1 if sig[2] == 0 else 2, 0.0, _kind(sig),
                                       source="elimination"))
    spurious = len(newton) - len(matched)
    if recovered:
        report.notes.append(f"Newton missed {len(recovered)} of {len(oracle)}; recovered from elimination")
    if spurious:
        report.notes.append(f"{spurious} Newton points have no elimination counterpart")
    report.points = _dedupe_points(newton + recovered)
    if spurious:
        report.status = "incomplete"
    else:
        report.status = "complete" if not recovered else "complete-recovered"


def _dedupe_points(pts: list[CriticalPoint]) -> list[CriticalPoint]:
    pts = sorted(pts, key=lambda p: p.location)
    out: list[CriticalPoint] = []
    locs = np.empty((len(pts), 2))
    n = 0
    for p in pts:
        loc = np.asarray(p.location[:2], dtype=float)
        if n and np.any(np.linalg.norm(locs[:n] - loc, axis=1) <= 1e-7 * (1 + np.hypot(locs[:n, 0], locs[:n, 1]))):
            continue
        locs[n] = loc
        n += 1
        out.append(p)
    return out


def _mp_polish(f: Polynomial, p: np.ndarray, dps: int) -> tuple[np.ndarray, float]:
    """Newton in multiprecision; returns the point and its value computed at that precision."""
    gx, gy = f.gradient()
    H = f.hessian()
    with mpmath.workdps(dps):
        x = [mpmath.mpf(float(v)) for v in p]
        for _ in range(8):
            g = mpmath.matrix([_mpeval(gx, x), _mpeval(gy, x)])
            J = mpmath.matrix([[_mpeval(H[i][j], x) for j in range(2)] for i in range(2)])
            try:
                dx = mpmath.lu_solve(J, g)
            except ZeroDivisionError:
                break
            x = [x[0] - dx[0], x[1] - dx[1]]
        return np.array([float(x[0]), float(x[1])]), float(_mpeval(f, x))


def _mpeval(p: Polynomial, pt):
    total = mpmath.mpf(0)
    for e, c in p.terms.items():
        t = mpmath.mpf(c.numerator) / c.denominator if hasattr(c, "denominator") else mpmath.mpf(c)
        for v, k in zip(pt, e):
            if k:
                t *= v ** k
        total += t
    return total
