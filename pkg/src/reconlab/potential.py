"""The q-potential of a reconstruction system and its optimality certificates.

``P_q(V) = Σ_{i,j} |V_i V_j*|^2`` is the partial trace of ``G^2``; it is an
``l x l`` positive matrix whose spectrum submajorizes ``(d/l) e_l`` whenever
``tr S >= d``. Equality-type outcomes certify that the system is a protocol
(or a u.w.p. rank-l protocol under the per-block hypothesis).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .spectra import (FROBENIUS, OPERATOR, TRACE, GaugeNorm, eigvals_desc, eta,
                      norm_eval, partial_trace, submajorizes, trace_abs)
from .systems import ReconSystem, classify, grammian

EQ_TOL = 1e-7
TOL = 1e-9


@dataclass(frozen=True)
class ConvexFunction:
    """Increasing convex ``f`` on ``[0, inf)`` with ``f(0) = 0``."""

    name: str
    fn: Callable
    strictly_convex: bool = True

    def __call__(self, x):
        return self.fn(x)


DEFAULT_FUNCTIONS = (
    ConvexFunction("x^2", lambda x: x ** 2),
    ConvexFunction("x^3", lambda x: x ** 3),
    ConvexFunction("x*log(1+x)", lambda x: x * np.log1p(x)),
)
DEFAULT_NORMS = (TRACE, FROBENIUS, OPERATOR)


def check_convexity(f: ConvexFunction, upper: float = 10.0, n: int = 201) -> bool:
    """Sampled sanity check (monotone, convex, ``f(0) = 0``); warns on failure."""
    x = np.linspace(0.0, upper, n)
    y = np.asarray(f(x), dtype=float)
    ok = (abs(y[0]) <= 1e-12 and np.all(np.diff(y) >= -1e-12)
          and np.all(np.diff(y, 2) >= -1e-9 * max(1.0, float(np.abs(y).max()))))
    if not ok:
        warnings.warn(f"function {f.name!r} does not look increasing and convex with f(0)=0",
                      stacklevel=2)
    return bool(ok)


def q_potential(V: ReconSystem) -> np.ndarray:
    """``P_q(V) = Σ_j V_j S V_j*`` (equivalently ``Σ_{i,j} (V_i V_j*)* (V_i V_j*)``)."""
    S = V._S
    P = np.einsum("jab,bc,jdc->ad", V.blocks, S, V.blocks.conj())
    return (P + P.conj().T) / 2


def q_potential_partial_trace(V: ReconSystem) -> np.ndarray:
    """``P_q(V)`` as the partial trace of the squared Grammian."""
    G = grammian(V)
    return partial_trace(G @ G, V.m, V.l)


@dataclass
class PotentialReport:
    P_q: np.ndarray
    trace: float
    submajorization_holds: bool
    majorization_holds: bool
    norm_values: dict = field(default_factory=dict)
    convex_values: dict = field(default_factory=dict)
    hypothesis_flags: dict = field(default_factory=dict)
    equality_flags: dict = field(default_factory=dict)
    bounds_hold: bool = True
    certifies: bool = False
    certificate: str = "protocol"
    classification_agrees: Optional[bool] = None

    @property
    def hypothesis_holds(self) -> bool:
        return all(bool(v) for v in self.hypothesis_flags.values())

    def to_dict(self) -> dict:
        P = self.P_q
        return {
            "P_q": [[[float(z.real), float(z.imag)] for z in row] for row in P],
            "trace": self.trace,
            "submajorization_holds": self.submajorization_holds,
            "majorization_holds": self.majorization_holds,
            "norm_values": {k: {"bound": b, "value": v} for k, (b, v) in self.norm_values.items()},
            "convex_values": {k: {"bound": b, "value": v} for k, (b, v) in self.convex_values.items()},
            "hypothesis_flags": {k: bool(v) for k, v in self.hypothesis_flags.items()},
            "equality_flags": {k: bool(v) for k, v in self.equality_flags.items()},
            "bounds_hold": self.bounds_hold,
            "certificate": self.certificate,
            "certifies": self.certifies,
            "classification_agrees": self.classification_agrees,
        }


def _evaluate(V: ReconSystem, norms, fs, tol, eq_tol) -> PotentialReport:
    d, l = V.d, V.l
    P = q_potential(V)
    lam = eigvals_desc(P)
    tr = float(lam.sum())
    target = np.full(l, d / l)
    sub = submajorizes(lam, target, tol)
    maj = sub and abs(tr - d) <= eq_tol * max(1.0, d)
    rep = PotentialReport(P, tr, sub, maj)
    ok = sub
    for psi in norms:
        bound, value = d * eta(psi, l), norm_eval(psi, P)
        rep.norm_values[psi.name] = (bound, value)
        ok &= value >= bound - tol * max(1.0, bound)
        rep.equality_flags[psi.name] = abs(value - bound) <= eq_tol * max(1.0, bound)
    lam_pos = np.clip(lam, 0.0, None)
    for f in fs:
        bound = float(l * f(d / l))
        value = float(np.sum(f(lam_pos)))
        rep.convex_values[f.name] = (bound, value)
        ok &= value >= bound - tol * max(1.0, abs(bound))
        if f.strictly_convex:
            rep.equality_flags[f.name] = abs(value - bound) <= eq_tol * max(1.0, abs(bound))
    rep.equality_flags["majorization"] = maj
    rep.bounds_hold = bool(ok)
    return rep


def check_general_optimality(V: ReconSystem, norms: Sequence[GaugeNorm] = DEFAULT_NORMS,
                             fs: Sequence[ConvexFunction] = DEFAULT_FUNCTIONS,
                             tol: float = TOL, eq_tol: float = EQ_TOL) -> PotentialReport:
    """Lower bounds for ``P_q(V)`` when ``tr(V*V) >= d``.

    Reports ``(d/l) e_l ≺_w λ(P_q)``, ``d η_ψ(l) <= ||P_q||`` for each norm and
    ``l f(d/l) <= tr f(P_q)`` for each function. Under the hypothesis, any
    equality (or majorization) certifies that V is a protocol.
    """
    rep = _evaluate(V, norms, fs, tol, eq_tol)
    trS = float(np.trace(V._S).real)
    rep.hypothesis_flags["trace_S_at_least_d"] = trS >= V.d - tol * max(1.0, V.d)
    rep.certificate = "protocol"
    rep.certifies = rep.hypothesis_holds and any(rep.equality_flags.values())
    if rep.hypothesis_holds:
        rep.classification_agrees = (not rep.certifies) or classify(V).is_protocol
    return rep


def check_uwp_optimality(V: ReconSystem, norms: Sequence[GaugeNorm] = DEFAULT_NORMS,
                         fs: Sequence[ConvexFunction] = DEFAULT_FUNCTIONS,
                         tol: float = TOL, eq_tol: float = EQ_TOL) -> PotentialReport:
    """Same bounds under the per-block hypothesis ``tr|V_i| >= sqrt(d l / m)``.

    There, equality anywhere holds iff V is a u.w.p. rank-l protocol; the
    report cross-checks that against :func:`classify`.
    """
    rep = _evaluate(V, norms, fs, tol, eq_tol)
    need = math.sqrt(V.d * V.l / V.m)
    for i, b in enumerate(V.blocks):
        rep.hypothesis_flags[f"block_{i}"] = trace_abs(b) >= need - tol * max(1.0, need)
    rep.certificate = "uwp_rank_l_protocol"
    rep.certifies = rep.hypothesis_holds and any(rep.equality_flags.values())
    if rep.hypothesis_holds:
        rep.classification_agrees = rep.certifies == classify(V).is_uwp_rank_l_protocol
    return rep
