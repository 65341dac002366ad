"""Exact and floating multivariate polynomial algebra."""
from .polynomial import Polynomial, QQ, RR, monomials
from .univariate import IsolatingInterval, isolate_real_roots, real_root_count, real_roots_mp
from .resultant import resultant
from .numeric import CompiledPoly
from .io import poly_from_json, poly_to_json


def eval(p: Polynomial, pt):  # noqa: A001 - mirrors the operation name
    return p.eval(pt)


def gradient(p: Polynomial):
    return p.gradient()


def hessian(p: Polynomial):
    return p.hessian()


__all__ = [
    "Polynomial", "QQ", "RR", "monomials", "IsolatingInterval", "isolate_real_roots",
    "real_root_count", "real_roots_mp", "resultant", "CompiledPoly", "poly_from_json",
    "poly_to_json", "eval", "gradient", "hessian",
]
