"""Command-line front end: ``solitary construct | analyze | deform | pipeline | bounds``.

Every command writes canonical JSON (sorted keys, fixed separators, no NaN),
so identical inputs give byte-identical files. Exit codes: 0 ok, 1 usage
error, 2 certification failure, 3 analysis failure.
"""
from __future__ import annotations

import os

# FORGE_THREADS caps the BLAS pools; it has to be in place before numpy loads.
_THREADS = os.environ.get("FORGE_THREADS")
if _THREADS:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(_var, _THREADS)

import argparse
import ast
import csv
import hashlib
import json
import logging
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__
from .polycore import CompiledPoly, Polynomial, poly_from_json, poly_to_json

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CERT = 2
EXIT_ANALYSIS = 3

FORMAT_TAG = "solitary/v1"
CONSTRUCT_NAMES = ("tchebychev", "degenerate-tchebychev", "folding", "real-folding", "chmutov",
                   "pecker", "conic-pair", "a2km1-curve", "separable")

log = logging.getLogger("solitary")


class UsageError(ValueError):
    pass


class CertificationFailed(ArithmeticError):
    def __init__(self, msg: str, document: dict[str, Any] | None = None):
        super().__init__(msg)
        self.document = document


# -- canonical JSON -------------------------------------------------------------

def jsonable(obj: Any) -> Any:
    """Plain JSON types only; non-finite floats become strings."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    return str(obj)


def canonical_bytes(obj: Any) -> bytes:
    text = json.dumps(jsonable(obj), sort_keys=True, indent=2, separators=(",", ": "), allow_nan=False)
    return (text + "\n").encode("utf-8")


def sha256_file(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_json(path: Path | None, obj: Any) -> str:
    """Write (or print, when ``path`` is None) and return the sha256 digest."""
    data = canonical_bytes(obj)
    if path is None:
        sys.stdout.write(data.decode("utf-8"))
    else:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    return hashlib.sha256(data).hexdigest()


@dataclass
class RunManifest:
    command: str
    parameters: dict[str, Any]
    inputs: list[str] = field(default_factory=list)
    outputs: dict[str, str] = field(default_factory=dict)  # path -> sha256
    tool_version: str = __version__
    seed: int | None = None
    wall_time: float = 0.0
    certificate_digests: dict[str, str] = field(default_factory=dict)
    status: str = "ok"
    summary: dict[str, Any] = field(default_factory=dict)

    def record(self, path: Path, digest: str | None = None, certificate: bool = False) -> None:
        digest = digest or sha256_file(path)
        self.outputs[str(path)] = digest
        if certificate:
            self.certificate_digests[Path(path).name] = digest

    def verify(self) -> list[str]:
        """Outputs that are missing or whose digest no longer matches."""
        bad = []
        for p, digest in self.outputs.items():
            if not Path(p).exists() or sha256_file(Path(p)) != digest:
                bad.append(p)
        return bad

    def to_json(self) -> dict[str, Any]:
        return asdict(self)


# -- polynomial expressions ----------------------------------------------------------

_BINOPS: dict[type, Callable[[Any, Any], Any]] = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def parse_poly(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse ``"x^2 + y^2 - 1/3*z^2"`` into an exact polynomial over ``variables``."""
    gens = dict(zip(variables, Polynomial.gens(*variables)))

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
                and not isinstance(node.value, bool):
            v = node.value
            return Fraction(v) if isinstance(v, int) else Fraction(str(v))
        if isinstance(node, ast.Name):
            if node.id not in gens:
                raise UsageError(f"unknown variable {node.id!r} (expected one of {list(variables)})")
            return gens[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = ev(node.right)
                if not isinstance(e, Fraction) or e.denominator != 1 or e < 0:
                    raise UsageError("exponents must be non-negative integers")
                return ev(node.left) ** int(e)
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise UsageError(f"unsupported operator in {text!r}")
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Div) and not isinstance(right, Fraction):
                raise UsageError("only division by numbers is supported")
            return op(left, right)
        raise UsageError(f"cannot parse polynomial {text!r}")

    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"cannot parse polynomial {text!r}: {exc.msg}") from None
    out = ev(tree)
    if isinstance(out, Fraction):
        out = Polynomial.const(out, variables)
    return out.with_vars(tuple(variables))


def _load_poly_arg(value: str, variables: Sequence[str]) -> Polynomial:
    """A polynomial given as a JSON file path or an inline expression."""
    p = Path(value)
    if p.suffix == ".json" or p.is_file():
        if not p.is_file():
            raise UsageError(f"no such file: {value}")
        obj = json.loads(p.read_text())
        return poly_from_json(obj.get("polynomial", obj))
    return parse_poly(value, variables)


# -- construct --------------------------------------------------------------------

def _require(args, name: str, low: int) -> int:
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name} is required for {args.name}")
    if v < low:
        raise UsageError(f"--{name} must be >= {low}")
    return v


def _tchebychev_certificate(p: Polynomial, d: int, tol: float) -> dict[str, Any]:
    from .singular import critical_points_1d

    pts = critical_points_1d(p)
    mins = [c for c in pts if c.kind == "min"]
    maxs = [c for c in pts if c.kind == "max"]
    err = max((abs(abs(c.value) - 1) for c in pts), default=0.0)
    ok = (len(mins) == (d - 1 + 1) // 2 and len(maxs) == (d - 1) // 2 and err <= tol
          and all(c.value < 0 for c in mins) and all(c.value > 0 for c in maxs))
    if d == 0:
        ok = p == Polynomial.const(1, p.vars)
    return {"passed": ok, "minima_at_-1": len(mins), "maxima_at_+1": len(maxs), "value_error": err,
            "tolerance": tol}


def _folding_certificate(p: Polynomial, d: int, tol: float) -> dict[str, Any]:
    from .constructions import folding_offset
    from .constructions.folding import real_folding_of
    from .singular import critical_points_2d

    # critical values are taken on the torus section u = x + iy, v = x - iy
    rep = critical_points_2d(real_folding_of(p), box=(-3.5, 3.5, -3.5, 3.5), grid_n=48, verify=False)
    vals = sorted(c.value for c in rep.points)
    err = max((min(abs(v - t) for t in (0.0, -1.0, 8.0)) for v in vals), default=0.0)
    return {"passed": err <= tol and len(vals) == (d - 1) ** 2, "offset": folding_offset(d),
            "critical_points": len(vals), "value_error": err, "tolerance": tol}


def _real_folding_certificate(p: Polynomial, d: int) -> dict[str, Any]:
    from .singular import curve_solitary_census

    census = curve_solitary_census(p, verify=True)
    real = all(isinstance(c, (int, Fraction)) for c in p.terms.values())
    expected = d * (d - 1) // 2
    return {"passed": real and census.crossings == expected and census.solitary == 0,
            "exact_real_coefficients": real, "crossings": census.crossings, "expected": expected,
            "solitary": census.solitary}


def _pecker_certificate(p: Polynomial, d: int, tol: float) -> dict[str, Any]:
    from .constructions import pecker_double_points

    pts = pecker_double_points(d)
    worst = max(abs(float(p.numeric().eval(q.image))) / max(p.abs_eval(q.image), 1e-300) for q in pts)
    expected = (d - 1) * (d - 2) // 2
    return {"passed": len(pts) == expected and worst <= tol, "double_points": len(pts),
            "expected": expected, "relative_residual": worst, "tolerance": tol,
            "points": [list(q.image) for q in pts]}


def _curve_census_certificate(p: Polynomial, expected: int) -> dict[str, Any]:
    from .singular import curve_solitary_census

    census = curve_solitary_census(p, verify=True)
    return {"passed": census.solitary >= expected, "solitary": census.solitary, "expected_at_least": expected,
            "even": census.even, "odd": census.odd, "by_type": census.to_json()["counts"]["by_type"]}


def build_construct(args) -> dict[str, Any]:
    """Construct the named object and its certificate as one JSON document."""
    from . import constructions as C

    name, tol = args.name, args.tol
    params: dict[str, Any] = {}
    obj: dict[str, Any] = {}
    if name == "tchebychev":
        d = params["d"] = _require(args, "d", 0)
        p = C.tchebychev(d, "z")
        cert = _tchebychev_certificate(p, d, tol if tol is not None else 1e-12)
    elif name == "degenerate-tchebychev":
        d, k = params["d"], params["k"] = _require(args, "d", 1), _require(args, "k", 1)
        deg = C.degenerate_tchebychev_certified(d, k, "z")
        p = deg.poly
        cert = {"passed": deg.certified(tol if tol is not None else 1e-9), **deg.to_json()}
        cert.pop("polynomial", None)
    elif name == "folding":
        d = params["d"] = _require(args, "d", 1)
        p = C.folding(d)
        cert = _folding_certificate(p, d, tol if tol is not None else 1e-6)
    elif name == "real-folding":
        d = params["d"] = _require(args, "d", 1)
        p = C.real_folding(d)
        cert = _real_folding_certificate(p, d)
    elif name == "chmutov":
        d = params["d"] = _require(args, "d", 1)
        params["real"] = bool(args.real)
        surf = C.chmutov(d, real=args.real)
        obj = {"object": "surface", "surface": surf.to_json()}
        cert = {"passed": surf.kind == "separable" and surf.degree == d, "kind": surf.kind,
                "degree": surf.degree, "offset": C.folding_offset(d)}
        return {"format": FORMAT_TAG, "name": name, "params": params, **obj, "certificate": cert}
    elif name == "pecker":
        d = params["d"] = _require(args, "d", 3)
        p = C.pecker_curve(d)
        cert = _pecker_certificate(p, d, tol if tol is not None else 1e-8)
    elif name == "conic-pair":
        p = C.conic_pair_quartic()
        cert = _curve_census_certificate(p, 4)
    elif name == "a2km1-curve":
        d, k = params["d"], params["k"] = _require(args, "d", 2), _require(args, "k", 1)
        p = C.a2km1_curve(d, k)
        cert = _curve_census_certificate(p, C.expected_a2km1_curve_count(d, k))
    elif name == "separable":
        if not args.f or not args.g:
            raise UsageError("separable needs --f and --g (expression or JSON file)")
        f = _load_poly_arg(args.f, ("x", "y"))
        g = _load_poly_arg(args.g, ("z",))
        surf = C.separable_surface(f, g, "separable")
        obj = {"object": "surface", "surface": surf.to_json()}
        cert = {"passed": True, "kind": surf.kind, "degree": surf.degree}
        return {"format": FORMAT_TAG, "name": name, "params": params, **obj, "certificate": cert}
    else:  # argparse restricts the choices
        raise UsageError(f"unknown construction {name!r}")
    obj = {"object": "polynomial", "polynomial": poly_to_json(p), "degree": p.degree()}
    return {"format": FORMAT_TAG, "name": name, "params": params, **obj, "certificate": cert}


def cmd_construct(args) -> int:
    doc = build_construct(args)
    write_json(args.out, doc)
    if not doc["certificate"]["passed"]:
        log.error("construct %s: certification failed", args.name)
        return EXIT_CERT
    return EXIT_OK


# -- analyze ------------------------------------------------------------------------

def load_object(path: Path):
    """Read a curve (bivariate polynomial) or a surface from JSON."""
    from .constructions import SurfaceSpec

    try:
        obj = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg})") from None
    if "surface" in obj:
        return SurfaceSpec.from_json(obj["surface"])
    if "kind" in obj:
        return SurfaceSpec.from_json(obj)
    return _object_from_poly(poly_from_json(obj.get("polynomial", obj)))


def _object_from_poly(p: Polynomial):
    from .constructions import SurfaceSpec

    live = [v for v in p.vars if p.degree_in(v) > 0]
    if len(p.vars) == 2 or len(live) <= 2 and set(live) <= {"x", "y"}:
        return p.with_vars(("x", "y"))
    if len(p.vars) == 3:
        return SurfaceSpec("general", p.degree(), F=p.with_vars(("x", "y", "z")))
    raise UsageError(f"expected a polynomial in 2 or 3 variables, got {p.vars}")


def analyze_object(target, grid_n: int, oracle: bool = False) -> dict[str, Any]:
    from .constructions import SurfaceSpec
    from .singular import curve_solitary_census, surface_census

    if isinstance(target, SurfaceSpec):
        census = surface_census(target, grid_n=grid_n, oracle=oracle)
        doc = {"object": "surface", "label": target.label, "census": census.to_json()}
    else:
        census = curve_solitary_census(target, grid_n=grid_n, verify=True)
        doc = {"object": "curve", "census": census.to_json()}
    doc["uncertified"] = sum(p.label == "other" for p in census.points)
    doc["format"] = FORMAT_TAG
    return doc


def _plot_rows(target, grid_n: int, census: dict[str, Any]):
    from .constructions import SurfaceSpec

    pts = [p["location"] for p in census.get("points", [])]
    if isinstance(target, SurfaceSpec):
        F = CompiledPoly(target.polynomial())
        xy = np.array([p[:2] for p in pts]) if pts else np.zeros((0, 2))
        zs = sorted({round(p[2], 9) for p in pts}) or [0.0]
    else:
        F = CompiledPoly(target)
        xy = np.array(pts) if pts else np.zeros((0, 2))
        zs = [None]
    r = 1.25 * max(1.0, float(np.abs(xy).max()) if xy.size else 1.0)
    axis = np.linspace(-r, r, grid_n)
    X, Y = np.meshgrid(axis, axis, indexing="ij")
    for z in zs:
        cols = [X.ravel(), Y.ravel()] + ([] if z is None else [np.full(X.size, z)])
        vals = F.value(np.column_stack(cols))
        for x, y, v in zip(X.ravel(), Y.ravel(), vals):
            yield ([] if z is None else [repr(float(z))]) + [repr(float(x)), repr(float(y)), repr(float(v)),
                                                          int(np.sign(v))]


def emit_plot_data(path: Path, target, grid_n: int, census: dict[str, Any]) -> None:
    """Sign samples on a square grid; surfaces get one slice per singular z-level."""
    from .constructions import SurfaceSpec

    header = (["z"] if isinstance(target, SurfaceSpec) else []) + ["x", "y", "value", "sign"]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(_plot_rows(target, grid_n, census))


def _analysis_errors():
    from .singular import MatchAmbiguity, NonIsolatedSingularity, NotSingular

    return (MatchAmbiguity, NonIsolatedSingularity, NotSingular, ArithmeticError, np.linalg.LinAlgError)


def cmd_analyze(args) -> int:
    if args.expr:
        target = _object_from_poly(parse_poly(args.expr, ("x", "y", "z") if "z" in args.expr else ("x", "y")))
    elif args.input:
        target = load_object(Path(args.input))
    else:
        raise UsageError("analyze needs an input file or --expr")
    try:
        doc = analyze_object(target, args.grid, oracle=args.oracle)
    except _analysis_errors() as exc:
        log.error("analyze: %s", exc)
        write_json(args.out, {"format": FORMAT_TAG, "error": str(exc), "type": type(exc).__name__})
        return EXIT_ANALYSIS
    write_json(args.out, doc)
    if args.emit_plot_data:
        emit_plot_data(Path(args.emit_plot_data), target, min(args.grid, 400), doc["census"])
    if doc["uncertified"]:
        log.error("analyze: %d singular point(s) could not be certified", doc["uncertified"])
        return EXIT_ANALYSIS
    return EXIT_OK


# -- deform / pipeline -----------------------------------------------------------------

def deform_certificate(fd) -> dict[str, Any]:
    from .deform import RESIDUAL_TOL

    doc = fd.to_json()
    doc.pop("polynomial")
    doc["residual_tolerance"] = RESIDUAL_TOL
    doc["passed"] = fd.residual_max < RESIDUAL_TOL and fd.extrema == len(fd.critical_points)
    return doc


def cmd_deform(args) -> int:
    from .deform import DeformError, build_fd

    d = _require(args, "d", 2)
    try:
        fd = build_fd(d, args.branch)
    except (DeformError, ArithmeticError, np.linalg.LinAlgError) as exc:
        log.error("deform d=%d: %s", d, exc)
        if args.certificate:
            diag = getattr(exc, "diagnostics", None)
            write_json(Path(args.certificate), {"format": FORMAT_TAG, "passed": False, "error": str(exc),
                                                "diagnostics": diag})
        return EXIT_CERT
    write_json(args.out, {"format": FORMAT_TAG, "object": "polynomial", "name": f"f{d}",
                          "params": {"d": d, "branch": args.branch}, "polynomial": poly_to_json(fd.f),
                          "degree": fd.f.degree()})
    cert = deform_certificate(fd)
    if args.certificate:
        write_json(Path(args.certificate), cert)
    return EXIT_OK if cert["passed"] else EXIT_CERT


def run_pipeline(d: int, out_dir: Path, grid_n: int = 64, branch: str = "A") -> tuple[int, RunManifest]:
    """build f_d, the surface f_d = T_d, its census; every artifact goes into ``out_dir``."""
    from .deform import DeformError, build_fd_cached, build_solitary_surface, expected_solitary_count

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    man = RunManifest("pipeline", {"d": d, "grid": grid_n, "branch": branch})
    t0 = time.perf_counter()
    code = EXIT_OK
    try:
        fd = build_fd_cached(d, branch)
        cert = deform_certificate(fd)
        man.record(out_dir / "deform_certificate.json", write_json(out_dir / "deform_certificate.json", cert),
                   certificate=True)
        if not cert["passed"]:
            raise DeformError("deformation residual above tolerance", cert)
        surf, census, _ = build_solitary_surface(d, fd, grid_n)
        man.record(out_dir / "surface.json", write_json(out_dir / "surface.json",
                                                        {"format": FORMAT_TAG, "object": "surface",
                                                         "surface": surf.to_json()}))
        cdoc = {"format": FORMAT_TAG, "object": "surface", "label": surf.label, "census": census.to_json()}
        man.record(out_dir / "census.json", write_json(out_dir / "census.json", cdoc), certificate=True)
        man.summary = {"solitary": census.count("A1_solitary"), "counts": census.counts,
                       "expected_from_extrema": expected_solitary_count(fd.alpha, fd.beta, d),
                       "alpha": fd.alpha, "beta": fd.beta, "residual_max": fd.residual_max,
                       "level": fd.level, "at_infinity": len(census.at_infinity)}
        if census.count("other"):
            man.status = "analysis-failure"
            code = EXIT_ANALYSIS
    except DeformError as exc:
        man.status, man.summary = "certification-failure", {"error": str(exc)}
        code = EXIT_CERT
    except _analysis_errors() as exc:
        man.status, man.summary = "analysis-failure", {"error": str(exc)}
        code = EXIT_ANALYSIS
    man.wall_time = round(time.perf_counter() - t0, 3)
    write_json(out_dir / "manifest.json", man)
    return code, man


def cmd_pipeline(args) -> int:
    d = _require(args, "d", 2)
    out = Path(args.out or args.out_dir or f"pipeline_d{d}")
    code, man = run_pipeline(d, out, args.grid, args.branch)
    print(json.dumps({"status": man.status, "summary": jsonable(man.summary),
                      "manifest": str(out / "manifest.json")}, sort_keys=True))
    return code


# -- bounds -----------------------------------------------------------------------------

def _kv_options(tokens: Sequence[str]) -> dict[str, int]:
    out = {}
    for tok in tokens:
        key, sep, val = tok.partition("=")
        if not sep or key not in ("k", "trials", "seed"):
            raise UsageError(f"expected k=.., trials=.. or seed=.., got {tok!r}")
        try:
            out[key] = int(val)
        except ValueError:
            raise UsageError(f"{key} must be an integer, got {val!r}") from None
    return out


def cmd_bounds(args) -> int:
    from .bounds import audit_quadrangle, table1, table1_csv

    if args.table1 == (args.audit_quadrangle is not None):
        raise UsageError("bounds needs exactly one of --table1 or --audit-quadrangle")
    if args.table1:
        if args.format == "csv":
            text = table1_csv()
            if args.out:
                Path(args.out).write_text(text)
            else:
                sys.stdout.write(text)
        else:
            write_json(args.out, {"format": FORMAT_TAG, "table1": [r.to_json() for r in table1()]})
        return EXIT_OK
    opts = _kv_options(args.audit_quadrangle)
    k = opts.get("k", args.k)
    if k is None:
        raise UsageError("the audit needs k (k=2 or --k 2)")
    trials = opts.get("trials", args.trials)
    seed = opts.get("seed", args.seed if args.seed is not None else 42)
    audit = audit_quadrangle(k, trials, seed)
    write_json(args.out, {"format": FORMAT_TAG, "audit": audit.to_json()})
    return EXIT_OK if audit.ok else EXIT_CERT


# -- parser -------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="solitary", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a named polynomial family with its certificate")
    c.add_argument("name", choices=CONSTRUCT_NAMES)
    c.add_argument("--d", "--degree", dest="d", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--real", action="store_true", help="chmutov: real folding variant")
    c.add_argument("--f", help="separable: f(x, y) as an expression or JSON file")
    c.add_argument("--g", help="separable: g(z) as an expression or JSON file")
    c.add_argument("--tol", type=float)
    c.add_argument("--out", type=Path)
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", help="census of real singular points of a curve or surface")
    a.add_argument("input", nargs="?", help="polynomial or surface JSON")
    a.add_argument("--expr", help="inline polynomial in x, y (curve) or x, y, z (surface)")
    a.add_argument("--grid", type=int, default=64)
    a.add_argument("--oracle", action="store_true", help="cross-check separable surfaces by elimination")
    a.add_argument("--emit-plot-data", metavar="CSV")
    a.add_argument("--out", type=Path)
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("deform", help="equalize the extrema of a degree-d seed curve")
    d.add_argument("--d", "--degree", dest="d", type=int)
    d.add_argument("--branch", choices=("A", "B"), default="A")
    d.add_argument("--out", type=Path)
    d.add_argument("--certificate", type=Path)
    d.set_defaults(func=cmd_deform)

    p = sub.add_parser("pipeline", help="deform, build the surface f_d = T_d and take its census")
    p.add_argument("d_pos", nargs="?", type=int, metavar="d")
    p.add_argument("out_dir", nargs="?")
    p.add_argument("--d", "--degree", dest="d", type=int)
    p.add_argument("--branch", choices=("A", "B"), default="A")
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pipeline)

    b = sub.add_parser("bounds", help="Table 1 and the quadrangle audit")
    b.add_argument("--table1", action="store_true")
    b.add_argument("--format", choices=("csv", "json"), default="csv")
    b.add_argument("--audit-quadrangle", nargs="*", metavar="KEY=VALUE")
    b.add_argument("--k", type=int)
    b.add_argument("--trials", type=int, default=500)
    b.add_argument("--seed", type=int)
    b.add_argument("--out", type=Path)
    b.set_defaults(func=cmd_bounds)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "pipeline" and args.d is None:
        args.d = args.d_pos
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"solitary {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertificationFailed as exc:
        log.error("%s", exc)
        return EXIT_CERT


if __name__ == "__main__":
    raise SystemExit(main())
