"""Existence of protocols with prescribed block spectra.

Klyachko's compatibility inequalities decide whether hermitian matrices
with given spectra can satisfy ``A_0 = A_1 + ... + A_m``. Taking
``A_0 = I_d`` and ``A_i = V_i* V_i`` turns this into an existence test for
(m, l, d)-protocols, and into the q-fundamental inequalities when every
``V_i* V_i`` is a weighted projection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .exceptions import NotProjectionError, ShapeError
from .lr import enumerate_lr_tuples
from .spectra import check_hermitian, sort_desc
from .systems import ReconSystem, from_analysis

INEQ_TOL = 1e-9


@dataclass(frozen=True)
class Violation:
    r: int
    tuples: tuple  # (J_0, J_1, ..., J_m), 1-based
    lhs: float
    rhs: float

    def __str__(self) -> str:
        fmt = lambda J: "(" + ",".join(map(str, J)) + ")"
        rest = ",".join(fmt(J) for J in self.tuples[1:])
        return f"({self.r}; {fmt(self.tuples[0])} | {rest}): {self.lhs:.12g} > {self.rhs:.12g}"


@dataclass
class FeasibilityVerdict:
    feasible: bool
    violated: list = field(default_factory=list)
    trace_ok: bool = True
    n_checked: int = 0
    trace_lhs: float = 0.0
    trace_rhs: float = 0.0

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "trace_ok": self.trace_ok,
            "trace": [self.trace_lhs, self.trace_rhs],
            "n_checked": self.n_checked,
            "violated": [{"r": v.r, "tuples": [list(J) for J in v.tuples],
                          "lhs": v.lhs, "rhs": v.rhs} for v in self.violated],
        }

    def lines(self) -> list[str]:
        return [str(v) for v in self.violated]


def _check_spectra(lam0, spectra) -> tuple[np.ndarray, np.ndarray]:
    l0 = sort_desc(lam0)
    d = l0.size
    rows = []
    for s in spectra:
        v = sort_desc(s)
        if v.size != d:
            raise ShapeError(f"spectrum of length {v.size}, expected {d}")
        rows.append(v)
    if not rows:
        raise ValueError("need at least one summand spectrum")
    return l0, np.array(rows)


def klyachko_feasible(lam0, spectra: Sequence, tol: float = INEQ_TOL,
                      stop_at_first: bool = False) -> FeasibilityVerdict:
    """Check ``λ_0`` against ``λ_1, ..., λ_m`` for a hermitian sum ``A_0 = Σ A_i``.

    Evaluates every inequality ``Σ_{J_0} λ_0 <= Σ_i Σ_{J_i} λ_i`` over the
    LR-positive tuples of each order r, with additive slack
    ``tol * (1 + |rhs|)``, plus the trace condition. Spectra are sorted
    into non-increasing order first.
    """
    l0, lams = _check_spectra(lam0, spectra)
    d, m = l0.size, lams.shape[0]
    tr_lhs, tr_rhs = float(l0.sum()), float(lams.sum())
    trace_ok = abs(tr_lhs - tr_rhs) <= tol * (1 + abs(tr_rhs))
    violated = []
    n = 0
    for r in range(1, d + 1):
        tuples = enumerate_lr_tuples(r, d, m)
        if not tuples:
            continue
        T = np.array(tuples, dtype=int) - 1  # (N, m+1, r)
        lhs = l0[T[:, 0, :]].sum(axis=1)
        rhs = np.zeros(len(tuples))
        for i in range(m):
            rhs += lams[i][T[:, i + 1, :]].sum(axis=1)
        n += len(tuples)
        bad = np.nonzero(lhs > rhs + tol * (1 + np.abs(rhs)))[0]
        for k in bad:
            violated.append(Violation(r, tuples[k], float(lhs[k]), float(rhs[k])))
        if stop_at_first and (violated or not trace_ok):
            break
    return FeasibilityVerdict(not violated and trace_ok, violated, trace_ok, n, tr_lhs, tr_rhs)


def _pad(v, d: int) -> np.ndarray:
    v = sort_desc(v)
    if v.size > d:
        raise ShapeError(f"spectrum of length {v.size} exceeds d={d}")
    return np.concatenate([v, np.zeros(d - v.size)])


def protocol_feasible(spectra: Sequence, d: int, tol: float = INEQ_TOL) -> FeasibilityVerdict:
    """Does an (m, l, d)-protocol with ``λ(V_i V_i*) = spectra[i]`` exist?

    Equivalent to ``I_d = Σ A_i`` with ``λ(A_i) = (spectra[i], 0_{d-l})``.
    """
    spectra = [np.asarray(s, dtype=float).ravel() for s in spectra]
    if any(np.any(s < -tol) for s in spectra):
        raise ValueError("block spectra must be non-negative")
    lens = {s.size for s in spectra}
    if len(lens) != 1:
        raise ShapeError(f"all block spectra must have the same length l, got {sorted(lens)}")
    return klyachko_feasible(np.ones(d), [_pad(s, d) for s in spectra], tol)


def q_fundamental_check(weights, ranks, d: int, l: Optional[int] = None,
                        tol: float = INEQ_TOL) -> FeasibilityVerdict:
    """Existence of a projective protocol with ``V_i* V_i = w_i P_i``, ``rank P_i = t_i``.

    Checks ``r <= Σ_i w_i |J_i ∩ {1..t_i}|`` over all LR-positive tuples,
    plus ``d = Σ w_i t_i``.
    """
    w = np.asarray(weights, dtype=float).ravel()
    t = [int(x) for x in ranks]
    if len(t) != w.size:
        raise ShapeError(f"{w.size} weights but {len(t)} ranks")
    if np.any(w < 0):
        raise ValueError("weights must be non-negative")
    l = max(t) if l is None else l
    if any(not 1 <= ti <= l for ti in t):
        raise ValueError(f"ranks must lie in [1, {l}]")
    spectra = [np.concatenate([np.full(ti, wi), np.zeros(l - ti)]) for wi, ti in zip(w, t)]
    return protocol_feasible(spectra, d, tol)


def uwp_existence(m: int, l: int, d: int, tol: float = INEQ_TOL) -> FeasibilityVerdict:
    """Existence of a u.w.p. rank-l (m, l, d)-protocol (weights ``d/(ml)``)."""
    return q_fundamental_check([d / (m * l)] * m, [l] * m, d, l, tol)


@dataclass
class OracleResult:
    found: bool
    witness: list = field(default_factory=list)
    attempts: int = 0
    residual: float = float("inf")


def _random_unitaries(rng, shape, d):
    Z = rng.standard_normal(shape + (d, d)) + 1j * rng.standard_normal(shape + (d, d))
    Q, R = np.linalg.qr(Z)
    ph = np.diagonal(R, axis1=-2, axis2=-1)
    return Q * (ph / np.abs(ph))[..., None, :]


def numeric_oracle(spectra: Sequence, d: int, attempts: int = 10_000, seed: int = 0,
                   iters: int = 200, tol: float = 1e-7, batch: int = 500) -> OracleResult:
    """Search for ``A_i >= 0`` with ``λ(A_i) = (spectra[i], 0)`` and ``Σ A_i = I_d``.

    Alternates between the nearest matrices with the prescribed spectra
    (eigenvector retention) and the affine set ``Σ A_i = I`` (uniform
    correction). Attempts run in batches; an attempt is abandoned once its
    residual improves by less than 0.1% over 10 iterations. A positive
    answer carries a witness with exact spectra and
    ``||Σ A_i - I||_F <= tol``; a negative answer proves nothing.
    """
    lams = np.array([_pad(s, d) for s in spectra])
    m = lams.shape[0]
    if abs(lams.sum() - d) > 1e-9 * max(1.0, d):
        raise ValueError(f"trace condition fails: sum of spectra {lams.sum():.12g} != d={d}")
    asc = lams[:, ::-1]
    eye = np.eye(d)
    rng = np.random.default_rng(seed)
    best = float("inf")
    done = 0
    while done < attempts:
        B = min(batch, attempts - done)
        U = _random_unitaries(rng, (B, m), d)
        A = (U * asc[None, :, None, :]) @ U.conj().swapaxes(-1, -2)
        idx = np.arange(B)
        hist = []
        for it in range(iters + 1):
            R = eye - A.sum(axis=1)
            res = np.linalg.norm(R, axis=(-2, -1))
            best = min(best, float(res.min()))
            hit = np.nonzero(res <= tol)[0]
            if hit.size:
                k = hit[0]
                return OracleResult(True, [A[k, i].copy() for i in range(m)],
                                    done + int(idx[k]) + 1, float(res[k]))
            if it == iters:
                break
            hist.append(res)
            if len(hist) > 10:
                keep = res < 0.999 * hist[-11]
                if not keep.all():
                    A, R, idx = A[keep], R[keep], idx[keep]
                    hist = [h[keep] for h in hist]
                    if idx.size == 0:
                        break
            X = A + R[:, None] / m
            X = (X + X.conj().swapaxes(-1, -2)) / 2
            _, Q = np.linalg.eigh(X)
            A = (Q * asc[None, :, None, :]) @ Q.conj().swapaxes(-1, -2)
        done += B
    return OracleResult(False, [], attempts, best)


def grammian_projection_factor(P, m: int, l: int, tol: float = 1e-8,
                               field: str = "complex") -> ReconSystem:
    """Factor an orthogonal projection ``P = VV*`` into an (m, l, d)-protocol.

    `V` collects eigenvectors of `P` for eigenvalues above 0.5; its rows are
    split into m blocks of l, so ``grammian(V) == P`` and ``V*V = I_d``.
    """
    M = check_hermitian(P, atol=tol)
    if M.shape[0] != m * l:
        raise ShapeError(f"projection has order {M.shape[0]}, expected {m * l}")
    if np.linalg.norm(M @ M - M) > tol * max(1.0, np.linalg.norm(M)):
        raise NotProjectionError("P is not idempotent")
    tr = float(np.trace(M).real)
    d = int(round(tr))
    if abs(tr - d) > tol * max(1.0, tr) or d < 1:
        raise NotProjectionError(f"trace {tr:.12g} is not a positive integer")
    H = (M + M.conj().T) / 2
    if field == "real":
        H = H.real
    w, Q = np.linalg.eigh(H)
    V = Q[:, w > 0.5]
    if V.shape[1] != d:
        raise NotProjectionError("eigenvalue count does not match the trace")
    return from_analysis(V, m, l, field=field)
