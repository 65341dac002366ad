"""Polynomial JSON interchange.

``{"vars": ["x", "y"], "terms": [{"e": [2, 0], "c": "1"}, {"e": [0, 2], "c": "1/3"}]}``

Exact coefficients are written as ``"num/den"`` (or an integer string); float
coefficients as their shortest round-tripping decimal and tagged with
``"domain": "RR"``.
"""
from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from typing import Any

from .polynomial import Polynomial, QQ, RR


def _coeff_str(c) -> str:
    if isinstance(c, float):
        return repr(c)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _parse_coeff(s, domain: str):
    if isinstance(s, (int, float)) and not isinstance(s, bool):
        return float(s) if domain == RR else Fraction(s)
    s = str(s).strip()
    if domain == RR:
        if "/" in s:
            return float(Fraction(s))
        return float(s)
    if "/" in s:
        return Fraction(s)
    return Fraction(Decimal(s))


def poly_to_json(p: Polynomial) -> dict[str, Any]:
    terms = [{"e": list(e), "c": _coeff_str(c)} for e, c in sorted(p.terms.items(), reverse=True)]
    out: dict[str, Any] = {"vars": list(p.vars), "terms": terms}
    if p.domain == RR:
        out["domain"] = RR
    return out


def poly_from_json(obj: dict[str, Any]) -> Polynomial:
    try:
        variables = obj["vars"]
        raw = obj["terms"]
    except (KeyError, TypeError):
        raise ValueError("polynomial JSON needs 'vars' and 'terms'") from None
    domain = obj.get("domain", QQ)
    terms = {}
    for t in raw:
        e = tuple(int(k) for k in t["e"])
        terms[e] = terms.get(e, 0) + _parse_coeff(t["c"], domain)
    return Polynomial(variables, terms, domain)
