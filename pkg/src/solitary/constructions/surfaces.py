"""Surface specifications: separable ``f(x, y) - g(z) = 0`` or a general ``F(x, y, z)``."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..polycore import Polynomial, poly_from_json, poly_to_json
from .chebyshev import tchebychev
from .folding import folding, real_folding

XY = ("x", "y")
XYZ = ("x", "y", "z")


@dataclass(frozen=True)
class SurfaceSpec:
    kind: str  # "separable" | "general"
    degree: int
    f: Polynomial | None = None
    g: Polynomial | None = None
    F: Polynomial | None = None
    label: str = ""

    def __post_init__(self):
        if self.kind == "separable":
            if self.f is None or self.g is None:
                raise ValueError("separable surfaces need f(x, y) and g(z)")
            if self.f.degree() > self.degree or self.g.degree() > self.degree:
                raise ValueError("component degree exceeds the surface degree")
        elif self.kind == "general":
            if self.F is None:
                raise ValueError("general surfaces need F(x, y, z)")
        else:
            raise ValueError(f"unknown surface kind {self.kind!r}")

    def polynomial(self) -> Polynomial:
        """The defining trivariate polynomial."""
        if self.kind == "general":
            return self.F
        return self.f.with_vars(XYZ) - self.g.with_vars(XYZ)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind, "degree": self.degree}
        if self.label:
            out["label"] = self.label
        if self.kind == "separable":
            out["f"] = poly_to_json(self.f)
            out["g"] = poly_to_json(self.g)
        else:
            out["F"] = poly_to_json(self.F)
        return out

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "SurfaceSpec":
        kind = obj.get("kind")
        if kind == "separable":
            f = poly_from_json(obj["f"])
            g = poly_from_json(obj["g"])
            return separable_surface(f, g, obj.get("label", ""), obj.get("degree"))
        if kind == "general":
            F = poly_from_json(obj["F"])
            return SurfaceSpec("general", int(obj.get("degree", F.degree())), F=F, label=obj.get("label", ""))
        raise ValueError(f"unknown surface kind {kind!r}")


def separable_surface(f: Polynomial, g: Polynomial, label: str = "", degree: int | None = None) -> SurfaceSpec:
    """The surface ``f(x, y) = g(z)``."""
    if not set(v for v in f.vars if f.degree_in(v) > 0) <= set(XY):
        raise ValueError(f"f must be a polynomial in x, y (got variables {f.vars})")
    gv = [v for v in g.vars if g.degree_in(v) > 0]
    if len(gv) > 1:
        raise ValueError(f"g must be univariate (got variables {g.vars})")
    if gv and gv[0] != "z":
        g = g.rename({gv[0]: "z"})
    f = f.with_vars(XY)
    g = g.with_vars(("z",))
    deg = max(f.degree(), g.degree()) if degree is None else int(degree)
    return SurfaceSpec("separable", deg, f=f, g=g, label=label)


def chmutov(d: int, real: bool = True) -> SurfaceSpec:
    """``F(x, y) + (T_d(z) + 1) / 2 = 0`` with the (real) folding polynomial."""
    if d < 1:
        raise ValueError("d must be positive")
    f = real_folding(d) if real else folding(d)
    g = -(tchebychev(d, "z") + 1) / 2
    return separable_surface(f, g, f"chmutov-{'real-' if real else ''}{d}", d)
