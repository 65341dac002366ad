"""Enumerating and counting real singular points of curves and surfaces."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
import logging
from typing import Any

import mpmath
import numpy as np

from ..constructions.surfaces import SurfaceSpec
from ..polycore import CompiledPoly, Polynomial, QQ
from .classify import A1_MINUS, A1_SOLITARY, OTHER, NotSingular, SingularPoint, classify
from .critical import CriticalPoint, CriticalReport, critical_points_1d, critical_points_2d
from .elimination import critical_values, real_critical_points

log = logging.getLogger(__name__)

MATCH_RTOL = 1e-7


class MatchAmbiguity(ArithmeticError):
    pass


class NonIsolatedSingularity(ArithmeticError):
    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass
class SingularityCensus:
    degree: int
    points: list[SingularPoint]
    at_infinity: list[dict] = field(default_factory=list)
    certification: dict[str, Any] = field(default_factory=dict)

    @property
    def counts(self) -> dict[str, int]:
        c = Counter(p.label for p in self.points)
        out = {A1_SOLITARY: 0, A1_MINUS: 0, OTHER: 0}
        out.update(c)
        return dict(sorted(out.items()))

    def count(self, label: str) -> int:
        return self.counts.get(label, 0)

    @property
    def solitary(self) -> int:
        return sum(p.solitary for p in self.points)

    @property
    def residual_max(self) -> float:
        return max((max(p.value_residual, p.grad_residual) for p in self.points), default=0.0)

    def to_json(self, with_points: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "degree": self.degree,
            "counts": self.counts,
            "at_infinity": {"count": len(self.at_infinity), "points": self.at_infinity},
            "residual_max": self.residual_max,
            "certification": self.certification,
        }
        if with_points:
            out["points"] = [p.to_json() for p in self.points]
        return out


# -- separable surfaces --------------------------------------------------------

@dataclass
class Pairing:
    f_point: CriticalPoint
    g_point: CriticalPoint


def pair_critical_values(fpts: list[CriticalPoint], gpts: list[CriticalPoint],
                         match_rtol: float = MATCH_RTOL) -> list[Pairing]:
    """Pairs with equal critical values; distinct g-values both near one f-value are an error."""
    out = []
    for fp in fpts:
        near = [gp for gp in gpts if abs(fp.value - gp.value) <= match_rtol * max(1.0, abs(fp.value))]
        if near:
            vals = [gp.value for gp in near]
            if max(vals) - min(vals) > match_rtol * max(1.0, abs(fp.value)) / 10:
                raise MatchAmbiguity(f"f critical value {fp.value!r} matches distinct g values {sorted(vals)}")
        out.extend(Pairing(fp, gp) for gp in near)
    return out


def separable_critical_data(surface: SurfaceSpec, grid_n: int = 64, box=None, verify: bool = False,
                            g_points: list[CriticalPoint] | None = None
                            ) -> tuple[CriticalReport, list[CriticalPoint]]:
    frep = critical_points_2d(surface.f, box=box, grid_n=grid_n, verify=verify,
                              polish_dps=_auto_polish_dps(surface.f))
    gpts = g_points if g_points is not None else critical_points_1d(surface.g)
    return frep, gpts


def _auto_polish_dps(f: Polynomial) -> int:
    # exact f with huge coefficients: float values lose the digits pairing needs
    if f.domain != QQ or not f.terms:
        return 0
    big = max(abs(float(c)) for c in f.terms.values())
    return 50 if big > 1e6 else 0


def singular_points(surface: SurfaceSpec, grid_n: int = 64, box=None, verify: bool = False,
                    match_rtol: float = MATCH_RTOL, g_points: list[CriticalPoint] | None = None
                    ) -> tuple[list[SingularPoint], dict[str, Any]]:
    """Real affine singular points of a surface, classified.

    Separable surfaces pair critical points of ``f`` and ``g`` with equal
    values; general surfaces are solved by seeded Newton on ``F = grad F = 0``.
    """
    if surface.kind == "general":
        return _general_singular_points(surface.F, grid_n=max(12, grid_n // 3), box=box)
    frep, gpts = separable_critical_data(surface, grid_n, box, verify, g_points)
    F = surface.polynomial()
    pts = []
    for pr in pair_critical_values(frep.points, gpts, match_rtol):
        loc = (*pr.f_point.location, pr.g_point.location[0])
        pts.append(_classify_separable(F, loc, pr))
    pts.sort(key=lambda s: s.location)
    info = {"path": "separable-pairing", "f_critical": frep.found, "g_critical": len(gpts),
            "f_status": frep.status, "f_oracle_count": frep.oracle_count}
    return pts, info


def _classify_separable(F: Polynomial, loc, pr: Pairing) -> SingularPoint:
    try:
        sp = classify(F, loc)
    except NotSingular as exc:
        # paired values agree to match tolerance but the point is not singular at float precision
        sp = SingularPoint(location=tuple(loc), real_type=OTHER, diagnostics={"reason": str(exc)})
    sp.diagnostics["f_kind"] = pr.f_point.kind
    sp.diagnostics["g_kind"] = pr.g_point.kind
    sp.diagnostics["g_multiplicity"] = pr.g_point.multiplicity
    return sp


def separable_oracle(surface: SurfaceSpec, dps: int = 60, match_digits: int = 25) -> dict[str, Any]:
    """Independent count for ``f(x, y) = g(z)`` from exact elimination.

    Critical points of ``f`` come from the resultant oracle, those of ``g``
    from exact root isolation, and values are compared at high precision.
    Solitary points are the pairs where the Hessian blocks of ``f`` and ``-g``
    are definite of one sign.
    """
    f, g = surface.f.exact(), surface.g.exact()
    sols = real_critical_points(f, dps)
    fvals = critical_values(f, sols, dps)
    Hf = f.hessian()
    count = 0
    solitary = 0
    with mpmath.workdps(dps):
        tol = mpmath.mpf(10) ** (-match_digits)
        groots = _g_roots_mp(g, dps)
        for s, fv in zip(sols, fvals):
            h = [[_mpeval(Hf[i][j], (s.x, s.y)) for j in range(2)] for i in range(2)]
            det = h[0][0] * h[1][1] - h[0][1] * h[1][0]
            for r, m, gv, g2 in groots:
                if abs(fv - gv) <= tol * max(1, abs(fv)):
                    count += 1
                    # F = f - g: the z-block is -g''
                    if det > 0 and m == 1 and (h[0][0] > 0) == (-g2 > 0):
                        solitary += 1
    return {"count": count, "solitary": solitary, "f_critical": len(sols),
            "certified": all(s.certified for s in sols)}


def _g_roots_mp(g: Polynomial, dps: int):
    from ..polycore.univariate import real_roots_mp

    var = g.vars[0]
    dg = g.diff(var)
    d2 = dg.diff(var)
    out = []
    with mpmath.workdps(dps):
        for r, m in real_roots_mp(dg, dps):
            out.append((r, m, _mpeval(g, (r,)), _mpeval(d2, (r,))))
    return out


def _mpeval(p: Polynomial, pt):
    total = mpmath.mpf(0)
    for e, c in p.terms.items():
        t = mpmath.mpf(c.numerator) / c.denominator if hasattr(c, "denominator") else mpmath.mpf(c)
        for v, k in zip(pt, e):
            if k:
                t *= v ** k
        total += t
    return total


# -- general surfaces ----------------------------------------------------------

def _general_singular_points(F: Polynomial, grid_n: int = 20, box=None, extra_seeds=None,
                             scales=(1.0, 0.3, 0.1, 0.03)) -> tuple[list[SingularPoint], dict[str, Any]]:
    """Critical points of F by damped Newton on grad F = 0, kept where F vanishes.

    Seeds are nested grids shrinking towards the centre of the box, so both
    spread-out and clustered singular points get a seed in their basin.
    """
    n = F.nvars
    cp = CompiledPoly(F)
    if box is None:
        R = _auto_radius(F)
        box = [(-R, R)] * n
    centre = np.array([(lo + hi) / 2 for lo, hi in box])
    half = np.array([(hi - lo) / 2 for lo, hi in box])
    grids = []
    for s in scales:
        axes = [np.linspace(c - s * h, c + s * h, grid_n) for c, h in zip(centre, half)]
        grids.append(np.stack([m.ravel() for m in np.meshgrid(*axes, indexing="ij")], axis=1))
    X = np.vstack(grids)
    if extra_seeds is not None:
        X = np.vstack([X, np.asarray(extra_seeds, dtype=float).reshape(-1, n)])
    for _ in range(80):
        G = cp.grad(X)
        dx = (np.linalg.pinv(cp.hess(X)) @ G[:, :, None])[:, :, 0]
        cap = 0.5 * (1 + np.linalg.norm(X, axis=1))
        step = np.linalg.norm(dx, axis=1)
        dx *= np.minimum(1.0, cap / np.maximum(step, 1e-300))[:, None]
        X = X - dx
        X[~np.isfinite(X).all(axis=1)] = np.nan
        X = X[np.isfinite(X).all(axis=1)]
    vres = np.abs(cp.value(X)) / np.maximum(cp.value_scale(X), 1e-300)
    gres = np.max(np.abs(cp.grad(X)), axis=1) / np.maximum(cp.grad_scale(X), 1e-300)
    X = X[(vres < 1e-9) & (gres < 1e-9)]
    reps: list[np.ndarray] = []
    for p in X[np.lexsort(X.T[::-1])] if len(X) else []:
        if not any(np.linalg.norm(p - q) <= 1e-6 * (1 + np.linalg.norm(q)) for q in reps):
            reps.append(p)
    pts = []
    for p in reps:
        try:
            pts.append(classify(F, p))
        except NotSingular:
            continue
    pts.sort(key=lambda s: s.location)
    return pts, {"path": "general-newton", "seeds": int(len(scales) * grid_n ** n)}


def _auto_radius(F: Polynomial) -> float:
    d = F.degree()
    top = F.homogeneous_part(d)
    lead = max(abs(float(c)) for c in top.terms.values())
    R = 1.0
    for e, c in F.terms.items():
        k = d - sum(e)
        if k > 0:
            R = max(R, (abs(float(c)) / lead) ** (1.0 / k))
    return 1.5 * R


# -- at infinity ---------------------------------------------------------------

def singular_at_infinity(F: Polynomial, grid_n: int = 48) -> list[dict]:
    """Real singular points of the projective closure on the plane at infinity.

    With ``F = F_d + F_{d-1} + ...`` these are the points ``[x:y:z:0]`` where
    ``grad F_d = 0`` and ``F_{d-1} = 0``.
    """
    if F.nvars != 3:
        raise ValueError("expected a polynomial in three variables")
    d = F.degree()
    top = F.homogeneous_part(d)
    sub = F.homogeneous_part(d - 1)
    x, y = Polynomial.gens("x", "y")
    out = []
    # chart z = 1
    h = top.subs({F.vars[0]: x, F.vars[1]: y, F.vars[2]: 1}, ("x", "y"))
    hs = sub.subs({F.vars[0]: x, F.vars[1]: y, F.vars[2]: 1}, ("x", "y"))
    if h.degree() >= 2:
        rep = critical_points_2d(h, grid_n=grid_n, verify=False)
        for cpt in rep.points:
            pt = cpt.location
            if abs(cpt.value) <= 1e-9 * max(h.abs_eval(pt), 1e-300) and \
                    abs(float(hs(pt))) <= 1e-9 * max(hs.abs_eval(pt), 1.0):
                out.append({"point": [pt[0], pt[1], 1.0, 0.0], "chart": "z=1"})
    # the line z = 0: points [x:1:0] and [1:0:0]
    t = Polynomial.gens("t")[0]
    grads = [top.diff(v) for v in F.vars]
    line = [q.subs({F.vars[0]: t, F.vars[1]: 1, F.vars[2]: 0}, ("t",)) for q in grads + [sub]]
    common = _common_real_roots([q.exact() for q in line])
    out.extend({"point": [float(r), 1.0, 0.0, 0.0], "chart": "z=0"} for r in common)
    base = (1, 0, 0)
    if all(q(base) == 0 for q in grads) and sub(base) == 0:
        out.append({"point": [1.0, 0.0, 0.0, 0.0], "chart": "z=0"})
    return out


def _common_real_roots(polys: list[Polynomial]) -> list[float]:
    from ..polycore.univariate import _univariate_ints, gcd, isolate_int

    nz = [p for p in polys if not p.is_zero()]
    if not nz:
        raise NonIsolatedSingularity("the whole line at infinity is singular")
    g = None
    for p in nz:
        if p.degree() == 0:
            return []
        ints = _univariate_ints(p)
        g = ints if g is None else gcd(g, ints)
    if g is None or len(g) < 2:
        return []
    return [float(iv.mid) for iv in isolate_int(g)]


# -- census entry points --------------------------------------------------------

def surface_census(surface: SurfaceSpec, grid_n: int = 64, box=None, verify: bool = False,
                   oracle: bool = False, at_infinity: bool = True,
                   g_points: list[CriticalPoint] | None = None) -> SingularityCensus:
    pts, info = singular_points(surface, grid_n=grid_n, box=box, verify=verify, g_points=g_points)
    cert: dict[str, Any] = dict(info)
    d = surface.degree
    if len(pts) > (d - 1) ** 3:
        raise ArithmeticError(f"{len(pts)} singular points exceed the bound (d-1)^3 = {(d - 1) ** 3}")
    if oracle and surface.kind == "separable":
        orc = separable_oracle(surface)
        cert["oracle"] = orc
        cert["oracle_agrees"] = orc["count"] == len(pts)
    inf = singular_at_infinity(surface.polynomial()) if at_infinity else []
    return SingularityCensus(d, pts, inf, cert)


@dataclass
class CurveCensus:
    degree: int
    points: list[SingularPoint]
    certification: dict[str, Any] = field(default_factory=dict)

    @property
    def solitary(self) -> int:
        return sum(p.solitary for p in self.points)

    @property
    def even(self) -> int:
        return sum(p.solitary and p.parity == "even" for p in self.points)

    @property
    def odd(self) -> int:
        return sum(p.solitary and p.parity == "odd" for p in self.points)

    @property
    def crossings(self) -> int:
        return sum(p.real_type == A1_MINUS for p in self.points)

    @property
    def other(self) -> int:
        return sum(p.real_type == OTHER for p in self.points)

    def es_report(self) -> str:
        d = self.degree
        return (f"even solitary points {self.even}; asymptotic reference 7/16 d^2 = "
                f"{7 * d * d / 16:.2f} (report only)")

    def to_json(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "counts": {"solitary": self.solitary, "even": self.even, "odd": self.odd,
                       "crossings": self.crossings, "other": self.other,
                       "by_type": dict(Counter(p.label for p in self.points))},
            "certification": self.certification,
            "es_report": self.es_report(),
            "points": [p.to_json() for p in self.points],
        }


def curve_singular_points(C: Polynomial, grid_n: int = 64, box=None, verify: bool = True,
                          extra_seeds=None) -> tuple[list[SingularPoint], dict[str, Any]]:
    """Singular points of the plane curve ``C = 0``: its critical points on the zero level."""
    try:
        rep = critical_points_2d(C, box=box, grid_n=grid_n, verify=verify, extra_seeds=extra_seeds)
    except ArithmeticError as exc:
        raise NonIsolatedSingularity(f"singular locus is not isolated: {exc}") from exc
    if any("curve of common zeros" in n for n in rep.notes):
        raise NonIsolatedSingularity("singular locus is not isolated")
    pts = []
    for c in rep.points:
        if abs(c.value) <= 1e-9 * max(C.abs_eval(c.location), 1e-300):
            sp = classify_robust(C, c)
            sp.diagnostics["source"] = c.source
            pts.append(sp)
    info: dict[str, Any] = {"critical_points": rep.found, "box": list(rep.box), "status": rep.status,
                            "oracle_count": rep.oracle_count, "notes": rep.notes}
    pts.sort(key=lambda s: s.location)
    return pts, info


def classify_robust(C: Polynomial, c: CriticalPoint) -> SingularPoint:
    """Classify a curve point; far-out points fall back to the critical point's own signature."""
    try:
        return classify(C, c.location)
    except NotSingular:
        sig = c.hessian_signature
        if sig[2]:
            return SingularPoint(location=c.location, real_type=OTHER, signature=sig,
                                 diagnostics={"reason": "degenerate and not certified in float"})
        definite = sig[0] == 2 or sig[1] == 2
        return SingularPoint(location=c.location, real_type=A1_SOLITARY if definite else A1_MINUS,
                             parity=("even" if sig[0] == 2 else "odd") if definite else None,
                             signature=sig, order=2, diagnostics={"classified_by": "elimination"})


def _abs_mp(p: Polynomial, pt):
    s = mpmath.mpf(0)
    for e, c in p.terms.items():
        t = abs(mpmath.mpf(c.numerator) / c.denominator if hasattr(c, "denominator") else mpmath.mpf(c))
        for v, k in zip(pt, e):
            if k:
                t *= abs(v) ** k
        s += t
    return s


def curve_solitary_census(C: Polynomial, grid_n: int = 64, box=None, verify: bool = True,
                          extra_seeds=None) -> CurveCensus:
    pts, info = curve_singular_points(C, grid_n, box, verify, extra_seeds)
    return CurveCensus(C.degree(), pts, info)
