"""Real type of an isolated singular point of a curve or surface.

Full-rank Hessians are ordinary double points; a definite one gives a
solitary point. For corank one with a definite restriction to the complement
the splitting lemma reduces the germ to a single variable,
``phi(t) = G(t, u(t))`` where ``u(t)`` solves ``dG/du = 0``; the order of
the first nonvanishing coefficient of ``phi`` is the ``2k`` of an
``A_{2k-1}`` point.
"""
from __future__ import annotations

from dataclasses import dataclass, field, asdict
import math

import numpy as np

from ..polycore import CompiledPoly, Polynomial, RR

A1_MINUS = "A1_minus"
A1_SOLITARY = "A1_solitary"
A2KM1_SOLITARY = "A2km1_solitary"
OTHER = "other"


class NotSingular(ValueError):
    pass


@dataclass
class SingularPoint:
    location: tuple[float, ...]
    real_type: str
    k: int | None = None
    parity: str | None = None  # curves only: even | odd
    signature: tuple[int, int, int] = (0, 0, 0)
    order: int | None = None  # vanishing order along the kernel direction
    value_residual: float = 0.0
    grad_residual: float = 0.0
    diagnostics: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        if self.real_type == A2KM1_SOLITARY:
            return f"A{2 * self.k - 1}_solitary"
        return self.real_type

    @property
    def solitary(self) -> bool:
        return self.real_type in (A1_SOLITARY, A2KM1_SOLITARY)

    def to_json(self) -> dict:
        out = asdict(self)
        out["location"] = list(self.location)
        out["signature"] = list(self.signature)
        out["label"] = self.label
        return out


# -- truncated power series in one variable t ---------------------------------

def _smul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = len(a)
    return np.convolve(a, b)[:n]


def _series_eval(G: Polynomial, u: list[np.ndarray], N: int) -> np.ndarray:
    """G(t, u_1(t), ...) truncated at order N; variable 0 of G is t."""
    cache: dict[tuple[int, int], np.ndarray] = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            if k == 0:
                s = np.zeros(N + 1)
                s[0] = 1.0
            elif i == 0:
                s = np.zeros(N + 1)
                if k <= N:
                    s[k] = 1.0
            else:
                s = _smul(power(i, k - 1), u[i - 1])
            cache[key] = s
        return cache[key]

    out = np.zeros(N + 1)
    for e, c in G.terms.items():
        if e[0] > N:
            continue
        term = np.full(N + 1, 0.0)
        term[0] = 1.0
        for i, k in enumerate(e):
            if k:
                term = _smul(term, power(i, k))
        out += float(c) * term
    return out


def _reduced_series(F: Polynomial, p: np.ndarray, v: np.ndarray, W: np.ndarray, N: int) -> np.ndarray:
    """Coefficients of phi(t) = F(p + t v + W u(t)) with u(t) the critical branch."""
    names = ("t",) + tuple(f"u{i}" for i in range(W.shape[1]))
    gens = Polynomial.gens(*names, domain=RR)
    sub = {}
    for j, var in enumerate(F.vars):
        expr = gens[0] * float(v[j]) + float(p[j])
        for i in range(W.shape[1]):
            expr = expr + gens[i + 1] * float(W[j, i])
        sub[var] = expr
    G = F.numeric().subs(sub, names)
    dG = [G.diff(n) for n in names[1:]]
    m = W.shape[1]
    Huu = np.array([[float(dG[a].diff(names[b + 1]).constant_term()) for b in range(m)] for a in range(m)])
    Hinv = np.linalg.inv(Huu)
    u = [np.zeros(N + 1) for _ in range(m)]
    for _ in range(N + 1):
        r = np.array([_series_eval(g, u, N) for g in dG])  # (m, N+1)
        delta = Hinv @ r
        u = [u[i] - delta[i] for i in range(m)]
        for s in u:
            s[0] = 0.0
    return _series_eval(G, u, N)


def classify(F: Polynomial, p, rank_rtol: float = 1e-6, max_order: int = 12,
             order_rtol: float = 1e-6, residual_tol: float = 1e-6) -> SingularPoint:
    """Classify the real singular point ``p`` of the zero set of ``F``.

    Works for curves (two variables) and surfaces (three variables); in two
    variables solitary points also get a parity: even when ``F`` is positive
    on a punctured neighbourhood.
    """
    n = F.nvars
    p = np.asarray(p, dtype=float).reshape(n)
    cp = CompiledPoly(F)
    val = float(cp.value(p)[0])
    vres = abs(val) / max(float(cp.value_scale(p)[0]), 1e-300)
    g = cp.grad(p)[0]
    gres = float(np.max(np.abs(g)) / max(float(cp.grad_scale(p)[0]), 1e-300))
    if vres > residual_tol or gres > residual_tol:
        raise NotSingular(f"point {tuple(p)} is not singular (value residual {vres:.2e}, "
                          f"gradient residual {gres:.2e})")
    H = cp.hess(p)[0]
    scale = max(float(np.max(np.abs(np.linalg.eigvalsh(H)))), 1e-300)
    # Jacobi equilibration keeps the inertia (congruence) and balances blocks of very different size;
    # a diagonal entry at rounding level is scaled by its rounding scale so it stays negligible
    hd = np.abs(np.diag(H))
    ad = cp.hess_diag_scale(p)[0]
    ref = np.where(hd > 1e-8 * ad, hd, ad)
    ref = np.where(ref > 0, ref, scale)
    S = 1 / np.sqrt(ref)
    w, U = np.linalg.eigh(S[:, None] * H * S[None, :])
    V = S[:, None] * U
    V = V / np.linalg.norm(V, axis=0)
    zero = np.abs(w) <= rank_rtol * max(float(np.max(np.abs(w))), 1e-300)
    sig = (int(np.sum(w > 0) - np.sum((w > 0) & zero)), int(np.sum(w < 0) - np.sum((w < 0) & zero)),
           int(np.sum(zero)))
    loc = tuple(float(x) for x in p)
    base = dict(location=loc, signature=sig, value_residual=vres, grad_residual=gres)
    diag = {"eigenvalues": [float(x) for x in np.linalg.eigvalsh(H)],
            "equilibrated_eigenvalues": [float(x) for x in w]}
    if sig[2] == 0:
        definite = sig[0] == n or sig[1] == n
        if definite:
            parity = ("even" if sig[0] == n else "odd") if n == 2 else None
            return SingularPoint(real_type=A1_SOLITARY, parity=parity, order=2, diagnostics=diag, **base)
        return SingularPoint(real_type=A1_MINUS, order=2, diagnostics=diag, **base)
    if sig[2] > 1:
        diag["reason"] = f"corank {sig[2]}"
        return SingularPoint(real_type=OTHER, diagnostics=diag, **base)
    nonzero = w[~zero]
    kernel = V[:, zero][:, 0]
    W = V[:, ~zero]
    phi = _reduced_series(F, p, kernel, W, max_order)
    diag["reduced_series"] = [float(c) for c in phi]
    same_sign = bool(np.all(nonzero > 0) or np.all(nonzero < 0))
    # noise along the kernel is governed by the rounding scale of the second derivative there
    thr = order_rtol * max(1.0, float(kernel ** 2 @ ad))
    order = next((j for j in range(2, max_order + 1) if abs(phi[j]) > thr), None)
    if order is None:
        diag["reason"] = f"no nonvanishing coefficient up to order {max_order}"
        return SingularPoint(real_type=OTHER, diagnostics=diag, **base)
    if same_sign and order % 2 == 0 and math.copysign(1, phi[order]) == math.copysign(1, nonzero[0]):
        k = order // 2
        parity = ("even" if phi[order] > 0 else "odd") if n == 2 else None
        return SingularPoint(real_type=A2KM1_SOLITARY, k=k, parity=parity, order=order, diagnostics=diag,
                             **base)
    diag["reason"] = "kernel order odd or of the opposite sign" if same_sign else "indefinite restriction"
    return SingularPoint(real_type=OTHER, order=order, diagnostics=diag, **base)
