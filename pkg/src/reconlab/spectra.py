"""Spectral primitives: ordering, (sub)majorization, spectra and gauge norms.

Vectors are plain 1-d numpy arrays, matrices 2-d numpy arrays (real or
complex). Nothing here mutates its inputs.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import NotHermitianError, ShapeError

DEFAULT_TOL = 1e-9
HERMITIAN_ATOL = 1e-12


def _as_vec(x) -> np.ndarray:
    v = np.asarray(x, dtype=float).ravel()
    if v.size == 0:
        raise ShapeError("vector must have at least one entry")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def sort_desc(x) -> np.ndarray:
    """Return the entries of `x` in non-increasing order (ties keep input order)."""
    v = _as_vec(x)
    return v[np.argsort(-v, kind="stable")]


def _scale(x: np.ndarray, y: np.ndarray) -> float:
    return max(1.0, float(np.abs(x).sum()), float(np.abs(y).sum()))


def _pad_pair(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = max(x.size, y.size)
    return np.pad(x, (0, n - x.size)), np.pad(y, (0, n - y.size))


def submajorizes(y, x, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``x ≺_w y``: every partial sum of sorted `x` is at most that of `y`.

    The comparison is additive with slack ``tol * max(1, tr|x|, tr|y|)``.
    The shorter vector is padded with zeros.
    """
    xv, yv = _pad_pair(_as_vec(x), _as_vec(y))
    slack = tol * _scale(xv, yv)
    return bool(np.all(np.cumsum(sort_desc(xv)) <= np.cumsum(sort_desc(yv)) + slack))


def majorizes(y, x, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``x ≺ y``: submajorization plus equal traces."""
    xv, yv = _pad_pair(_as_vec(x), _as_vec(y))
    if not submajorizes(yv, xv, tol):
        return False
    return abs(xv.sum() - yv.sum()) <= tol * _scale(xv, yv)


def check_hermitian(A, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Return `A` as an array, raising NotHermitianError if ``A != A*``.

    The absolute tolerance is scaled by ``max(1, max|A_ij|)``.
    """
    M = np.asarray(A)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {M.shape}")
    scale = max(1.0, float(np.abs(M).max(initial=0.0)))
    if not np.allclose(M, M.conj().T, rtol=0.0, atol=atol * scale):
        raise NotHermitianError("matrix is not hermitian")
    return M


def eigvals_desc(A, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Eigenvalues of a hermitian matrix in non-increasing order."""
    M = check_hermitian(A, atol)
    H = (M + M.conj().T) / 2
    return np.linalg.eigvalsh(H)[::-1].copy()


def singvals(A, n: Optional[int] = None) -> np.ndarray:
    """Singular values of `A`, non-increasing, zero-padded to length `n` if given."""
    M = np.atleast_2d(np.asarray(A))
    if M.size == 0:
        s = np.zeros(0)
    else:
        s = np.linalg.svd(M, compute_uv=False)
    if n is not None:
        if n < s.size:
            raise ShapeError(f"cannot pad {s.size} singular values to length {n}")
        s = np.concatenate([s, np.zeros(n - s.size)])
    return s


def trace_abs(A) -> float:
    """``tr|A|``, the sum of singular values."""
    return float(singvals(A).sum())


def trace_fn(A, f) -> float:
    """``tr f(A)`` for hermitian `A`, via its eigenvalues."""
    return float(np.sum(f(eigvals_desc(A))))


@dataclass(frozen=True)
class GaugeNorm:
    """Symmetric gauge function from the p-norm or Ky Fan families.

    ``kind`` is ``"p"`` (uses ``p``, possibly ``math.inf``) or ``"kyfan"``
    (uses ``k``). Every member is compatible: padding with zeros leaves
    the value unchanged.
    """

    kind: str
    p: float = 2.0
    k: int = 1

    def __post_init__(self):
        if self.kind == "p":
            if not self.p >= 1:
                raise ValueError(f"p must be >= 1, got {self.p}")
        elif self.kind == "kyfan":
            if int(self.k) != self.k or self.k < 1:
                raise ValueError(f"Ky Fan index must be a positive integer, got {self.k}")
        else:
            raise ValueError(f"unknown gauge kind {self.kind!r}")

    @classmethod
    def p_norm(cls, p: float) -> "GaugeNorm":
        return cls("p", p=float(p))

    @classmethod
    def ky_fan(cls, k: int) -> "GaugeNorm":
        return cls("kyfan", k=int(k))

    @classmethod
    def parse(cls, spec: str) -> "GaugeNorm":
        """Parse ``op``, ``trace``, ``fro``, ``p=3``, ``p3``, ``inf`` or ``kyfan2``."""
        s = spec.strip().lower()
        aliases = {"op": math.inf, "operator": math.inf, "spectral": math.inf,
                   "inf": math.inf, "trace": 1.0, "nuclear": 1.0, "fro": 2.0,
                   "frobenius": 2.0, "hs": 2.0}
        if s in aliases:
            return cls.p_norm(aliases[s])
        mt = re.fullmatch(r"p=?(inf|\d+(\.\d+)?)", s)
        if mt:
            return cls.p_norm(math.inf if mt.group(1) == "inf" else float(mt.group(1)))
        mt = re.fullmatch(r"ky-?fan=?(\d+)", s)
        if mt:
            return cls.ky_fan(int(mt.group(1)))
        raise ValueError(f"cannot parse norm specification {spec!r}")

    @property
    def name(self) -> str:
        if self.kind == "kyfan":
            return f"kyfan{self.k}"
        if math.isinf(self.p):
            return "op"
        return f"p{self.p:g}"

    @property
    def strict(self) -> bool:
        # Ky Fan norms coincide with the trace norm in orders <= k, so the
        # compatible family is not strict.
        return self.kind == "p" and self.p > 1

    def is_strongly_strict(self, order: int) -> bool:
        """Whether the norm is known to be `order`-strongly strict.

        Finite p > 1: every order. Operator norm: order 2 (and trivially 1).
        """
        if not self.strict:
            return False
        if math.isinf(self.p):
            return order <= 2
        return True

    def __call__(self, x) -> float:
        return gauge_eval(self, x)

    def __str__(self) -> str:
        return self.name


OPERATOR = GaugeNorm.p_norm(math.inf)
TRACE = GaugeNorm.p_norm(1)
FROBENIUS = GaugeNorm.p_norm(2)


def gauge_eval(psi: GaugeNorm, x) -> float:
    """Evaluate the symmetric gauge function `psi` at the vector `x`.

    Sums are correctly rounded, so padding `x` with zeros never changes
    the value.
    """
    a = np.abs(_as_vec(x))
    if psi.kind == "kyfan":
        return math.fsum(np.sort(a)[::-1][: psi.k])
    if math.isinf(psi.p):
        return float(a.max())
    if psi.p == 1:
        return math.fsum(a)
    top = a.max()
    if top == 0:
        return 0.0
    # scaled to avoid overflow for large p
    return float(top * math.fsum((a / top) ** psi.p) ** (1.0 / psi.p))


def norm_eval(psi: GaugeNorm, A) -> float:
    """Unitarily invariant norm ``psi(s(A))``."""
    return gauge_eval(psi, singvals(A))


def eta(psi: GaugeNorm, l: int) -> float:
    """``psi(e_l) / l``, the per-dimension norm of the identity of order `l`."""
    if l < 1:
        raise ValueError("l must be >= 1")
    return gauge_eval(psi, np.ones(l)) / l


def partial_trace(G, m: int, l: int) -> np.ndarray:
    """Sum of the `m` diagonal ``l x l`` blocks of an ``ml x ml`` matrix."""
    M = np.asarray(G)
    if M.shape != (m * l, m * l):
        raise ShapeError(f"expected order {m * l}, got shape {M.shape}")
    return M.reshape(m, l, m, l)[np.arange(m), :, np.arange(m), :].sum(axis=0)
