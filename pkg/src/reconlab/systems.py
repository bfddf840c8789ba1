"""Reconstruction systems: blocks, analysis/synthesis, Grammian, dual, persistence.

An (m, l, d)-reconstruction system is a family of m matrices ``V_i`` of
shape ``l x d`` whose system operator ``S = sum V_i* V_i`` is invertible.
A protocol has ``S = I_d``.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .exceptions import InvalidSystemError, ShapeError
from .spectra import eigvals_desc, singvals

INVERTIBILITY_RTOL = 1e-10
CLASSIFY_TOL = 1e-8


@dataclass(frozen=True)
class SystemShape:
    m: int
    l: int
    d: int
    field: str = "complex"

    def __post_init__(self):
        for name in ("m", "l", "d"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ShapeError(f"{name} must be a positive integer, got {v}")
        if self.field not in ("real", "complex"):
            raise ShapeError(f"field must be 'real' or 'complex', got {self.field!r}")
        if not self.l <= self.d <= self.m * self.l:
            raise ShapeError(f"need l <= d <= m*l, got (m, l, d) = {self.triple}")

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.m, self.l, self.d)

    def is_standard(self) -> bool:
        """The erasure setting assumes ``l < d < m*l``."""
        return self.l < self.d < self.m * self.l

    def warn_if_nonstandard(self) -> None:
        if not self.is_standard():
            warnings.warn(f"(m, l, d) = {self.triple} violates l < d < m*l; "
                          "erasure optimality results may be trivial", stacklevel=2)


class ReconSystem:
    """Immutable (m, l, d)-reconstruction system.

    Parameters
    ----------
    blocks : sequence of array_like
        The m matrices ``V_i``, each of shape ``(l, d)``.
    field : {"complex", "real"}, optional
        Real systems are stored with zero imaginary parts.
    """

    def __init__(self, blocks: Iterable, field: str = "complex"):
        arrs = [np.asarray(b) for b in blocks]
        if not arrs:
            raise ShapeError("a reconstruction system needs at least one block")
        if any(a.ndim != 2 for a in arrs):
            raise ShapeError("every block must be a 2-d matrix")
        l, d = arrs[0].shape
        if any(a.shape != (l, d) for a in arrs):
            raise ShapeError("all blocks must share the same (l, d) shape")
        stack = np.array(arrs, dtype=complex)
        if field == "real" and np.any(stack.imag != 0):
            raise ShapeError("real system has blocks with nonzero imaginary parts")
        if not np.all(np.isfinite(stack)):
            raise InvalidSystemError("blocks contain non-finite entries")
        self.shape = SystemShape(len(arrs), l, d, field)
        stack.setflags(write=False)
        self._blocks = stack
        S = np.einsum("iba,ibc->ac", stack.conj(), stack)
        S.setflags(write=False)
        lam = eigvals_desc((S + S.conj().T) / 2)
        if not lam[-1] > INVERTIBILITY_RTOL * max(lam[0], 0.0) or lam[0] <= 0:
            raise InvalidSystemError(
                f"system operator is singular (eigenvalues in [{lam[-1]:.3g}, {lam[0]:.3g}])")
        self._S = S

    @property
    def m(self) -> int:
        return self.shape.m

    @property
    def l(self) -> int:
        return self.shape.l

    @property
    def d(self) -> int:
        return self.shape.d

    @property
    def blocks(self) -> np.ndarray:
        """Read-only array of shape ``(m, l, d)``."""
        return self._blocks

    def __getitem__(self, i: int) -> np.ndarray:
        return self._blocks[i]

    def __len__(self) -> int:
        return self.m

    def __repr__(self) -> str:
        return f"ReconSystem(m={self.m}, l={self.l}, d={self.d}, field={self.shape.field!r})"

    def scaled(self, c: float) -> "ReconSystem":
        return ReconSystem(c * self._blocks, field=self.shape.field)


def analysis(V: ReconSystem) -> np.ndarray:
    """The ``ml x d`` analysis operator (vertical stack of the blocks)."""
    return V.blocks.reshape(V.m * V.l, V.d)


def synthesis(V: ReconSystem, packets) -> np.ndarray:
    """``V* (y_1 ⊕ ... ⊕ y_m) = sum V_i* y_i``."""
    y = np.asarray(packets).reshape(V.m, V.l)
    return np.einsum("iba,ib->a", V.blocks.conj(), y)


def system_operator(V: ReconSystem) -> np.ndarray:
    """``S = V*V = sum V_i* V_i`` (``d x d``)."""
    return V._S.copy()


def grammian(V: ReconSystem) -> np.ndarray:
    """``G = VV*`` (``ml x ml``); block ``(i, j)`` is ``V_i V_j*``."""
    A = analysis(V)
    return A @ A.conj().T


def cross_block(V: ReconSystem, i: int, j: int) -> np.ndarray:
    """``V_i V_j*`` (``l x l``)."""
    return V[i] @ V[j].conj().T


def dual(V: ReconSystem) -> ReconSystem:
    """Dual system with blocks ``W_i = V_i S^{-1}``, so that ``sum W_i* V_i = I``."""
    Sinv = np.linalg.inv(V._S)
    return ReconSystem(V.blocks @ Sinv, field=V.shape.field)


@dataclass(frozen=True)
class ErasurePattern:
    """Sorted set of erased packet indices (0-based)."""

    K: tuple[int, ...] = ()

    def __post_init__(self):
        K = tuple(sorted(set(int(k) for k in self.K)))
        if any(k < 0 for k in K):
            raise ShapeError("erasure indices must be non-negative")
        object.__setattr__(self, "K", K)

    def validate(self, m: int) -> "ErasurePattern":
        if self.K and self.K[-1] >= m:
            raise ShapeError(f"erasure index {self.K[-1]} out of range for m={m}")
        return self

    def __len__(self) -> int:
        return len(self.K)

    def __iter__(self):
        return iter(self.K)

    def __str__(self) -> str:
        return "{" + ",".join(str(k) for k in self.K) + "}"


def reconstruct(V: ReconSystem, packets, mode: str = "exact",
                erased: Optional[ErasurePattern] = None) -> np.ndarray:
    """Rebuild a signal from received packets.

    ``mode="exact"`` applies the canonical dual, ``S^{-1} sum_{i not in K} V_i* y_i``;
    with nothing erased this returns the original signal.
    ``mode="blind"`` skips the inverse: ``sum_{i not in K} V_i* y_i``, which for a
    protocol is ``V* E_K V x``.
    """
    y = np.array(packets, dtype=complex)
    if y.shape != (V.m, V.l):
        raise ShapeError(f"expected packets of shape ({V.m}, {V.l}), got {y.shape}")
    if erased is not None:
        erased.validate(V.m)
        y[list(erased.K)] = 0
    x = synthesis(V, y)
    if mode == "blind":
        return x
    if mode == "exact":
        return np.linalg.solve(V._S, x)
    raise ValueError(f"unknown reconstruction mode {mode!r}")


def encode(V: ReconSystem, x) -> np.ndarray:
    """Packets ``V_i x`` as an ``(m, l)`` array."""
    return V.blocks @ np.asarray(x)


@dataclass
class Classification:
    is_protocol: bool
    is_projective: bool
    is_uwp: bool
    is_rank_l: bool
    weights: list = field(default_factory=list)
    ranks: list = field(default_factory=list)

    @property
    def is_uwp_rank_l_protocol(self) -> bool:
        return self.is_protocol and self.is_uwp and self.is_rank_l

    def to_dict(self) -> dict:
        return {"is_protocol": self.is_protocol, "is_projective": self.is_projective,
                "is_uwp": self.is_uwp, "is_rank_l": self.is_rank_l,
                "is_uwp_rank_l_protocol": self.is_uwp_rank_l_protocol,
                "weights": [float(w) for w in self.weights],
                "ranks": [int(r) for r in self.ranks]}


def classify(V: ReconSystem, tol: float = CLASSIFY_TOL) -> Classification:
    """Structural flags of a system.

    Singular values are normalized by the largest one over all blocks before
    comparing against `tol`. A block is projective when its nonzero singular
    values coincide; its weight is the square of that common value.
    """
    S = V._S
    is_protocol = bool(np.linalg.norm(S - np.eye(V.d)) <= tol * np.sqrt(V.d))
    svals = [singvals(b) for b in V.blocks]
    top = max(float(s[0]) for s in svals)
    weights, ranks = [], []
    projective = True
    for s in svals:
        sn = s / top
        nz = sn[sn > tol]
        ranks.append(int(nz.size))
        if nz.size == 0 or nz[0] - nz[-1] > tol:
            projective = False
            weights.append(float("nan"))
        else:
            weights.append(float(np.mean(s[: nz.size]) ** 2))
    w = np.array(weights)
    is_uwp = projective and bool(np.ptp(w) <= tol * max(1.0, float(w.max())))
    is_rank_l = all(r == V.l for r in ranks)
    return Classification(is_protocol, projective, is_uwp, is_rank_l, weights, ranks)


def system_to_dict(V: ReconSystem) -> dict:
    blocks = [[[[float(z.real), float(z.imag)] for z in row] for row in b] for b in V.blocks]
    return {"m": V.m, "l": V.l, "d": V.d, "field": V.shape.field, "blocks": blocks}


def system_from_dict(obj: dict) -> ReconSystem:
    try:
        m, l, d = int(obj["m"]), int(obj["l"]), int(obj["d"])
        fld = obj.get("field", "complex")
        raw = obj["blocks"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeError(f"malformed system document: {exc}") from exc
    try:
        arr = np.array(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ShapeError(f"malformed block data: {exc}") from exc
    if arr.shape != (m, l, d, 2):
        raise ShapeError(f"blocks have shape {arr.shape[:-1] if arr.ndim else ()}, "
                         f"header says ({m}, {l}, {d})")
    return ReconSystem(arr[..., 0] + 1j * arr[..., 1], field=fld)


def save(V: ReconSystem, path) -> None:
    """Write `V` as JSON; floats use Python's shortest round-trip repr."""
    with open(path, "w") as fh:
        json.dump(system_to_dict(V), fh)


def load(path) -> ReconSystem:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ShapeError(f"{path}: not valid JSON ({exc})") from exc
    return system_from_dict(obj)


def from_analysis(A, m: int, l: int, field: str = "complex") -> ReconSystem:
    """Split an ``ml x d`` analysis matrix into m blocks of l rows."""
    M = np.asarray(A)
    if M.ndim != 2 or M.shape[0] != m * l:
        raise ShapeError(f"expected {m * l} rows, got shape {M.shape}")
    return ReconSystem(M.reshape(m, l, M.shape[1]), field=field)


def block_spectra(V: ReconSystem) -> list[np.ndarray]:
    """``λ(V_i V_i*)`` for every block, each of length l."""
    return [eigvals_desc(b @ b.conj().T) for b in V.blocks]


def as_system(obj) -> ReconSystem:
    if isinstance(obj, ReconSystem):
        return obj
    return load(obj)
