"""Protocol builders: the roots-of-unity construction and seeded random systems."""

from __future__ import annotations

import numpy as np

from .exceptions import InvalidSystemError, ShapeError
from .feasibility import grammian_projection_factor
from .spectra import eigvals_desc
from .systems import ReconSystem, SystemShape, from_analysis


def dft_matrix(m: int) -> np.ndarray:
    """Unitary with rows ``(1, ξ^j, ξ^{2j}, ..., ξ^{(m-1)j}) / sqrt(m)``, ``j = 1..m``.

    ``ξ = exp(2πi/m)``.
    """
    j = np.arange(1, m + 1)[:, None]
    s = np.arange(m)[None, :]
    return np.exp(2j * np.pi * ((j * s) % m) / m) / np.sqrt(m)


def harmonic_projection(m: int, l: int, exponents) -> np.ndarray:
    """``P = U* A U`` with ``U = Ũ ⊗ I_l`` and ``A`` the indicator of the rows
    whose exponent ``j mod m`` lies in `exponents`.

    Every diagonal ``l x l`` block of `P` is ``(k/m) I_l`` with ``k = |exponents|``.
    """
    rows = sorted({(int(j) - 1) % m for j in exponents})
    if not rows:
        raise ShapeError("need at least one exponent")
    U = np.kron(dft_matrix(m), np.eye(l))
    a = np.zeros(m * l)
    for r in rows:
        a[r * l:(r + 1) * l] = 1.0
    P = (U.conj().T * a) @ U
    return (P + P.conj().T) / 2


def dft_projection(m: int, l: int, k: int) -> np.ndarray:
    """``P = U* A U`` with ``U = Ũ ⊗ I_l`` and ``A = I_{kl} ⊕ 0``.

    Every diagonal ``l x l`` block of `P` is ``(k/m) I_l``.
    """
    if not 1 <= k <= m:
        raise ShapeError(f"need 1 <= k <= m, got k={k}, m={m}")
    return harmonic_projection(m, l, range(1, k + 1))


def dft_uwp(m: int, l: int, k: int) -> ReconSystem:
    """u.w.p. rank-l (m, l, k*l)-protocol from the roots-of-unity projection."""
    if l < 1:
        raise ShapeError("l must be >= 1")
    return grammian_projection_factor(dft_projection(m, l, k), m, l)


def harmonic_uwp(m: int, l: int, exponents) -> ReconSystem:
    """u.w.p. rank-l protocol from an arbitrary set of DFT rows.

    With ``l = 1`` and `exponents` a cyclic difference set this is an
    equiangular tight frame, e.g. ``harmonic_uwp(7, 1, {1, 2, 4})``.
    """
    if l < 1:
        raise ShapeError("l must be >= 1")
    return grammian_projection_factor(harmonic_projection(m, l, exponents), m, l)


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _gaussian(rng, shape, field):
    if field == "real":
        return rng.standard_normal(shape)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_unitary(n: int, seed=None, field: str = "complex") -> np.ndarray:
    """Haar-distributed unitary (or orthogonal) matrix of order `n`."""
    Q, R = np.linalg.qr(_gaussian(_rng(seed), (n, n), field))
    ph = np.diag(R)
    return Q * (ph / np.abs(ph))


def random_protocol(m: int, l: int, d: int, seed=None, field: str = "complex") -> ReconSystem:
    """Orthonormalize a seeded ``ml x d`` Gaussian matrix into an (m, l, d)-protocol."""
    if d > m * l:
        raise ShapeError(f"need d <= m*l, got {(m, l, d)}")
    SystemShape(m, l, d, field)
    Q, _ = np.linalg.qr(_gaussian(_rng(seed), (m * l, d), field))
    return from_analysis(Q, m, l, field=field)


def random_system(m: int, l: int, d: int, seed=None, field: str = "complex",
                  normalize_trace: bool = False, max_tries: int = 100) -> ReconSystem:
    """Seeded Gaussian (m, l, d)-reconstruction system.

    Resamples until ``λ_min(S) / λ_max(S) > 1e-6``. With ``normalize_trace``
    the blocks are rescaled so that ``tr S = d``.
    """
    SystemShape(m, l, d, field)
    rng = _rng(seed)
    for _ in range(max_tries):
        B = _gaussian(rng, (m, l, d), field)
        S = np.einsum("iba,ibc->ac", B.conj(), B)
        lam = eigvals_desc((S + S.conj().T) / 2)
        if lam[-1] > 1e-6 * lam[0]:
            if normalize_trace:
                B = B * np.sqrt(d / float(np.trace(S).real))
            return ReconSystem(B, field=field)
    raise InvalidSystemError(f"no well-conditioned system after {max_tries} draws")


def unitary_conjugate(V: ReconSystem, seed=None, blockwise: bool = True) -> ReconSystem:
    """``V_i -> Q_i V_i U`` for a random unitary `U` on the signal space and,
    if `blockwise`, random unitaries ``Q_i`` on each packet space.

    Protocols, projectivity, weights and ranks are all preserved.
    """
    rng = _rng(seed)
    U = random_unitary(V.d, rng)
    blocks = V.blocks @ U
    if blockwise:
        blocks = np.array([random_unitary(V.l, rng) @ b for b in blocks])
    return ReconSystem(blocks)


def orthonormal_basis_system(d: int) -> ReconSystem:
    """The standard basis of ``F^d`` as a (d, 1, d)-protocol."""
    return ReconSystem(np.eye(d)[:, None, :], field="real")
