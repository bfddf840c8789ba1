"""Packet erasures: error operators, worst-case errors and the optimality bounds.

When the packets indexed by ``K`` are lost, blind reconstruction with a
protocol returns ``V* E_K V x``; the error operator is
``V*V - V* E_K V = Σ_{i in K} V_i* V_i``. The worst case over all p-subsets,
measured by a compatible unitarily invariant norm, is ``e_p``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .exceptions import ReconError, ShapeError
from .spectra import OPERATOR, GaugeNorm, eta, gauge_eval, norm_eval, singvals, trace_abs
from .systems import (CLASSIFY_TOL, ErasurePattern, ReconSystem, SystemShape, classify,
                      cross_block, grammian)

ShapeLike = Union[SystemShape, ReconSystem, Sequence[int]]


def _mld(shape: ShapeLike) -> tuple[int, int, int]:
    if isinstance(shape, ReconSystem):
        return shape.shape.triple
    if isinstance(shape, SystemShape):
        return shape.triple
    m, l, d = shape
    return int(m), int(l), int(d)


def _pattern(K, m: int) -> ErasurePattern:
    if not isinstance(K, ErasurePattern):
        K = ErasurePattern(tuple(K))
    return K.validate(m)


def error_matrix(V: ReconSystem, K) -> np.ndarray:
    """``V* D_K V = Σ_{i in K} V_i* V_i`` (``d x d``, positive semidefinite)."""
    K = _pattern(K, V.m)
    idx = list(K.K)
    B = V.blocks[idx]
    return np.einsum("iba,ibc->ac", B.conj(), B) if idx else np.zeros((V.d, V.d), complex)


def compressed_grammian(V: ReconSystem, K) -> np.ndarray:
    """``D_K G D_K`` restricted to the erased blocks (``|K| l x |K| l``)."""
    K = _pattern(K, V.m)
    rows = np.concatenate([np.arange(i * V.l, (i + 1) * V.l) for i in K.K]) if K.K else []
    G = grammian(V)
    return G[np.ix_(rows, rows)]


def pattern_error(V: ReconSystem, K, psi: GaugeNorm = OPERATOR, check_tol: float = 1e-9) -> float:
    """``||V* D_K V||``, computed in ``M_d`` and cross-checked on the compressed Grammian."""
    K = _pattern(K, V.m)
    if not K.K:
        return 0.0
    a = norm_eval(psi, error_matrix(V, K))
    b = norm_eval(psi, compressed_grammian(V, K))
    if abs(a - b) > check_tol * max(1.0, a):
        raise ReconError(f"compatible-norm identity failed for K={K}: {a!r} vs {b!r}")
    return a


@dataclass
class ErasureReport:
    p: int
    norm: str
    worst_error: float
    argmax_pattern: ErasurePattern
    bound: Optional[float] = None
    meets_bound: Optional[bool] = None
    table: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {"p": self.p, "norm": self.norm, "worst_error": self.worst_error,
               "argmax_pattern": list(self.argmax_pattern.K), "bound": self.bound,
               "meets_bound": self.meets_bound}
        if self.table:
            out["table"] = [{"pattern": list(K.K), "error": e} for K, e in self.table]
        return out


def worst_case_error(V: ReconSystem, p: int, psi: GaugeNorm = OPERATOR, table: bool = False,
                     tol: float = 1e-9, stop_at: Optional[float] = None) -> ErasureReport:
    """Exact ``e_p(V)`` by enumerating every p-subset of packets.

    The attaining pattern reported is the lexicographically smallest one
    within relative ``1e-12`` of the maximum. If `stop_at` is given the
    scan stops at the first pattern reaching it. For ``p = 1`` and ``p = 2``
    the report carries the corresponding lower bound.
    """
    m = V.m
    if not 0 <= p <= m:
        raise ShapeError(f"p must lie in [0, {m}], got {p}")
    rows = []
    for K in itertools.combinations(range(m), p):
        pat = ErasurePattern(K)
        e = pattern_error(V, pat, psi)
        rows.append((pat, e))
        if stop_at is not None and e >= stop_at:
            break
    best = max(e for _, e in rows)
    best_K = next(K for K, e in rows if e >= best * (1 - 1e-12))
    bound = None
    if p == 0:
        bound = 0.0
    elif p == 1:
        bound = e1_lower_bound(V, psi)
    elif p == 2 and m >= 2:
        bound = e2_lower_bound(V, psi)
    meets = None if bound is None else bool(best >= bound - tol * max(1.0, bound))
    return ErasureReport(p, psi.name, float(best), best_K, bound, meets, rows if table else [])


def e1_lower_bound(shape: ShapeLike, psi: GaugeNorm = OPERATOR) -> float:
    """``d η_ψ(l) / m``."""
    m, l, d = _mld(shape)
    return d * eta(psi, l) / m


def c_mld(shape: ShapeLike) -> float:
    """``sqrt(d / ((m-1) m l) * (1 - d/(ml)))``."""
    m, l, d = _mld(shape)
    if m < 2:
        raise ValueError("c_{m,l,d} needs m >= 2")
    if d > m * l:
        raise ValueError(f"need d <= m*l, got {(m, l, d)}")
    r = d / (m * l)
    return math.sqrt(max(0.0, d / ((m - 1) * m * l) * (1 - r)))


def e2_lower_bound(shape: ShapeLike, psi: GaugeNorm = OPERATOR) -> float:
    """``ψ((d/ml + c) e_l, (d/ml - c) e_l)``."""
    m, l, d = _mld(shape)
    c, r = c_mld((m, l, d)), d / (m * l)
    return gauge_eval(psi, np.concatenate([np.full(l, r + c), np.full(l, r - c)]))


def two_erasure_value(V: ReconSystem, i: int, j: int, psi: GaugeNorm = OPERATOR) -> float:
    """``ψ(d/(ml) e_l + s(V_i V_j*), d/(ml) e_l - s(V_i V_j*))``.

    Equals ``||V*(D_i + D_j)V||`` for u.w.p. rank-l protocols.
    """
    r = V.d / (V.m * V.l)
    s = singvals(cross_block(V, i, j))
    return gauge_eval(psi, np.concatenate([r + s, r - s]))


def max_cross_trace(V: ReconSystem) -> float:
    """``max_{i != j} tr|V_i V_j*|``."""
    return max(trace_abs(cross_block(V, i, j))
               for i in range(V.m) for j in range(V.m) if i != j)


def in_class_C(V: ReconSystem, tol: float = CLASSIFY_TOL) -> bool:
    """u.w.p. rank-l protocol with ``max_{i != j} tr|V_i V_j*| >= l c_{m,l,d}``."""
    if V.m < 2 or not classify(V, tol).is_uwp_rank_l_protocol:
        return False
    return max_cross_trace(V) >= V.l * c_mld(V) - tol


def is_two_uniform(V: ReconSystem, tol: float = CLASSIFY_TOL) -> bool:
    """Every singular value of every ``V_i V_j*`` (``i != j``) equals ``c_{m,l,d}``."""
    if V.m < 2:
        return False
    c = c_mld(V)
    for i in range(V.m):
        for j in range(i + 1, V.m):
            if np.any(np.abs(singvals(cross_block(V, i, j)) - c) > tol):
                return False
    return True


@dataclass
class LemmaReport:
    i: int
    hypothesis: bool
    sum_sq: float
    sum_tr: float
    max_sq: float
    max_tr: float
    targets: dict
    holds: dict

    def to_dict(self) -> dict:
        return {"i": self.i, "hypothesis": self.hypothesis, "sum_sq": self.sum_sq,
                "sum_tr": self.sum_tr, "max_sq": self.max_sq, "max_tr": self.max_tr,
                "targets": self.targets, "holds": self.holds}


def lemma_identities(V: ReconSystem, i: int, tol: float = 1e-9) -> LemmaReport:
    """Cross-block energy identities of a u.w.p. rank-l protocol at block `i`.

    ``sum_sq = Σ_{j≠i} tr|V_j V_i*|^2`` should equal ``(d/m)(1 - d/(ml))``;
    ``sum_tr``, ``max_sq`` and ``max_tr`` are checked against their lower
    bounds. For other systems the numbers are informational.
    """
    m, l, d = V.shape.triple
    if not 0 <= i < m:
        raise ShapeError(f"block index {i} out of range")
    hyp = m >= 2 and classify(V).is_uwp_rank_l_protocol
    others = [j for j in range(m) if j != i]
    cross = [cross_block(V, i, j) for j in others]
    sq = [float(np.linalg.norm(C) ** 2) for C in cross]
    tr = [trace_abs(C) for C in cross]
    r = d / (m * l)
    c = c_mld(V) if m >= 2 else 0.0
    targets = {
        "sum_sq": d / m * (1 - r),
        "sum_tr": math.sqrt(max(0.0, r * (1 - r))) * l,
        "max_sq": c * c * l,
        "max_tr": max(c * l / math.sqrt(m - 1), c * math.sqrt(l)) if m >= 2 else 0.0,
    }
    vals = {"sum_sq": sum(sq), "sum_tr": sum(tr),
            "max_sq": max(sq, default=0.0), "max_tr": max(tr, default=0.0)}
    holds = {"sum_sq": abs(vals["sum_sq"] - targets["sum_sq"]) <= tol}
    for k in ("sum_tr", "max_sq", "max_tr"):
        holds[k] = vals[k] >= targets[k] - tol
    return LemmaReport(i, hyp, vals["sum_sq"], vals["sum_tr"], vals["max_sq"],
                       vals["max_tr"], targets, holds)


@dataclass
class WelchReport:
    lhs: float
    c2psi: float
    holds: bool
    equality: bool
    two_uniform: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def welch_constant(shape: ShapeLike, psi: GaugeNorm = OPERATOR) -> float:
    """``d η_ψ(l) / (m (m-1)) * (1 - d/(ml))``."""
    m, l, d = _mld(shape)
    return d * eta(psi, l) / (m * (m - 1)) * (1 - d / (m * l))


def welch_check(V: ReconSystem, psi: GaugeNorm = OPERATOR, tol: float = 1e-9,
                eq_tol: float = 1e-7) -> WelchReport:
    """Compare ``max_{i≠j} || |V_i V_j*|^2 ||`` with the Welch-type constant."""
    lhs = max(gauge_eval(psi, singvals(cross_block(V, i, j)) ** 2)
              for i in range(V.m) for j in range(V.m) if i != j)
    c2 = welch_constant(V, psi)
    return WelchReport(float(lhs), c2, bool(lhs >= c2 - tol), bool(abs(lhs - c2) <= eq_tol),
                       is_two_uniform(V))
