"""Partitions, index tuples and Littlewood-Richardson coefficients.

Partitions are tuples of positive integers in non-increasing order; trailing
zeros are stripped by :func:`partition`. Index tuples are strictly
increasing 1-based tuples ``(j_1 < ... < j_r)`` drawn from ``{1, ..., d}``.

LR coefficients are computed by building LR tableaux of skew shape
``λ/μ`` one label at a time: the cells labelled ``k`` form a horizontal
strip, and the reverse reading word is a lattice word iff for every row
``r`` the number of ``k+1`` labels in rows ``<= r`` does not exceed the
number of ``k`` labels in rows ``< r``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .exceptions import GuardError

Partition = tuple  # tuple[int, ...]

MAX_D = 6
MAX_CELLS = 24


def partition(parts: Iterable[int]) -> Partition:
    """Validate and normalize a partition (drop trailing zeros)."""
    p = [int(x) for x in parts]
    if any(x < 0 for x in p):
        raise ValueError(f"partition parts must be non-negative: {p}")
    if any(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"partition parts must be non-increasing: {p}")
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def weight(p: Sequence[int]) -> int:
    return int(sum(p))


def contains(outer: Sequence[int], inner: Sequence[int]) -> bool:
    """True iff the Young diagram of `inner` fits inside that of `outer`."""
    if len(inner) > len(outer):
        return False
    return all(a >= b for a, b in zip(outer, inner))


def index_tuples(r: int, d: int) -> list[tuple[int, ...]]:
    """All of ``S_r^d`` in lexicographic order."""
    return list(itertools.combinations(range(1, d + 1), r))


def check_index_tuple(J: Sequence[int], d: Optional[int] = None) -> tuple[int, ...]:
    J = tuple(int(j) for j in J)
    if not J or J[0] < 1 or any(a >= b for a, b in zip(J, J[1:])):
        raise ValueError(f"index tuple must be strictly increasing and >= 1: {J}")
    if d is not None and J[-1] > d:
        raise ValueError(f"index tuple {J} exceeds d={d}")
    return J


def partition_of(J: Sequence[int]) -> Partition:
    """``λ(J) = (j_r - r, ..., j_1 - 1)``."""
    J = check_index_tuple(J)
    r = len(J)
    return partition(J[r - 1 - i] - (r - i) for i in range(r))


def tuple_of(lam: Sequence[int], r: int) -> tuple[int, ...]:
    """Inverse of :func:`partition_of` for tuples of length `r`."""
    lam = list(lam) + [0] * (r - len(lam))
    if len(lam) > r:
        raise ValueError(f"partition {tuple(lam)} has more than {r} parts")
    return tuple(lam[r - i] + i for i in range(1, r + 1))


def _strips(shape: tuple, size: int, prev_counts: Optional[tuple],
            max_rows: Optional[int], max_cols: Optional[int]) -> Iterator[tuple]:
    """Horizontal strips of `size` cells added to `shape` under the lattice rule.

    Yields ``(new_shape, counts)`` where ``counts[i]`` is the number of cells
    added in row ``i``. ``prev_counts`` are the per-row counts of the
    previous label (None for label 1).
    """
    nrows = len(shape) + 1
    if max_rows is not None:
        nrows = min(nrows, max_rows)
    base = list(shape) + [0] * (nrows - len(shape))
    added = [0] * nrows

    def rec(i: int, left: int, cum: int, cum_prev: int):
        if left == 0:
            new = partition(b + a for b, a in zip(base, added))
            yield new, tuple(added)
            return
        if i >= nrows:
            return
        cap = base[i - 1] - base[i] if i > 0 else (
            left if max_cols is None else max_cols - base[0])
        cap = min(cap, left)
        if prev_counts is not None:
            # labels k in rows <= i may not outnumber labels k-1 in rows < i
            cap = min(cap, cum_prev - cum)
        for a in range(max(cap, -1), -1, -1):
            added[i] = a
            nxt_prev = cum_prev + (prev_counts[i] if prev_counts is not None and i < len(prev_counts) else 0)
            yield from rec(i + 1, left - a, cum + a, nxt_prev)
        added[i] = 0

    yield from rec(0, size, 0, 0)


@lru_cache(maxsize=None)
def lr_expand(mu: Partition, nu: Partition, max_rows: Optional[int] = None,
              max_cols: Optional[int] = None) -> dict:
    """Expansion ``s_mu * s_nu = sum_λ c^λ_{mu,nu} s_λ`` as a dict ``λ -> c``.

    With `max_rows`/`max_cols` only shapes inside that box are kept.
    """
    mu, nu = partition(mu), partition(nu)
    if max_rows is not None and len(mu) > max_rows:
        return {}
    if max_cols is not None and mu and mu[0] > max_cols:
        return {}
    out: dict = {}

    def rec(shape, k, prev_counts):
        if k == len(nu):
            out[shape] = out.get(shape, 0) + 1
            return
        for new, counts in _strips(shape, nu[k], prev_counts, max_rows, max_cols):
            rec(new, k + 1, counts)

    rec(mu, 0, None)
    return out


def lr_product(factors: Sequence[Sequence[int]], max_rows: Optional[int] = None,
               max_cols: Optional[int] = None) -> dict:
    """Expansion of ``s_{μ_1} ... s_{μ_m}`` (iterated left to right)."""
    current = {(): 1}
    for f in factors:
        f = partition(f)
        nxt: dict = {}
        for shape, c in current.items():
            for lam, c2 in lr_expand(shape, f, max_rows, max_cols).items():
                nxt[lam] = nxt.get(lam, 0) + c * c2
        current = nxt
    return current


def lr_coefficient(target: Sequence[int], factors: Sequence[Sequence[int]]) -> int:
    """Multi-factor LR coefficient ``c^{target}_{factors[0], ..., factors[-1]}``."""
    target = partition(target)
    factors = [partition(f) for f in factors]
    if weight(target) != sum(weight(f) for f in factors):
        return 0
    if any(not contains(target, f) for f in factors):
        return 0
    rows = len(target)
    cols = target[0] if target else 0
    current = {(): 1}
    for f in factors:
        nxt: dict = {}
        for shape, c in current.items():
            for lam, c2 in lr_expand(shape, f, rows, cols).items():
                if contains(target, lam):
                    nxt[lam] = nxt.get(lam, 0) + c * c2
        current = nxt
    return current.get(target, 0)


@lru_cache(maxsize=None)
def _support(shapes: frozenset, mu: Partition, rows: int, cols: int) -> frozenset:
    out = set()
    for s in shapes:
        out.update(lr_expand(s, mu, rows, cols))
    return frozenset(out)


def check_guard(r: int, d: int) -> None:
    if not 1 <= r <= d:
        raise ValueError(f"need 1 <= r <= d, got r={r}, d={d}")
    if d > MAX_D:
        raise GuardError(f"d={d} exceeds the desk-scale guard d <= {MAX_D}")
    if r * (d - r) > MAX_CELLS:
        raise GuardError(f"box {r}x{d - r} exceeds {MAX_CELLS} cells")


@lru_cache(maxsize=None)
def enumerate_lr_tuples(r: int, d: int, m: int) -> tuple:
    """All ``(J_0, ..., J_m)`` in ``(S_r^d)^{m+1}`` with positive LR coefficient.

    Returned sorted lexicographically. Partitions ``λ(J)`` live in the
    ``r x (d - r)`` box, so every intermediate shape is truncated to it.
    """
    check_guard(r, d)
    if m < 1:
        raise ValueError("m must be >= 1")
    cols = d - r
    tuples = index_tuples(r, d)
    parts = {J: partition_of(J) for J in tuples}
    result = []

    def rec(prefix, shapes):
        if len(prefix) == m:
            for J0 in tuples:
                if parts[J0] in shapes:
                    result.append((J0,) + tuple(prefix))
            return
        for J in tuples:
            nxt = _support(shapes, parts[J], r, cols)
            if nxt:
                rec(prefix + [J], nxt)

    rec([], frozenset([()]))
    result.sort()
    return tuple(result)
