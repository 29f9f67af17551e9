"""Empirical automaticity tooling: k-kernel fingerprints, squares, distinct subsequences.

Everything here works on finite prefixes, so results are evidence only.  In
particular equal kernel fingerprints say nothing; distinct ones do certify
distinct subsequences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .words import MorphicStream, Word

Source = Union[MorphicStream, Word, bytes, bytearray, np.ndarray, Callable[[int], object]]


def as_prefix(src: Source, n: int) -> np.ndarray:
    """First ``n`` terms of ``src`` as a numpy array."""
    if isinstance(src, MorphicStream):
        data = src.prefix_bytes(n)
    elif isinstance(src, Word):
        data = src.letters
    elif isinstance(src, (bytes, bytearray)):
        data = bytes(src)
    elif isinstance(src, np.ndarray):
        data = src
    elif callable(src):
        data = src(n)
    else:
        raise TypeError(f"cannot read a sequence from {type(src).__name__}")
    if isinstance(data, (bytes, bytearray)):
        arr = np.frombuffer(bytes(data), dtype=np.uint8)
    else:
        arr = np.asarray(data)
    if len(arr) < n:
        raise ValueError(f"sequence source supplied {len(arr)} terms, {n} needed")
    return arr[:n]


@dataclass
class KernelReport:
    base: int
    depth: int
    fingerprint_length: int
    counts: list[int] = field(default_factory=list)  # cumulative, one per depth 0..depth
    closed: bool = False
    closed_at: int | None = None
    fingerprints: set = field(default_factory=set, repr=False)

    @property
    def size(self) -> int:
        return len(self.fingerprints)


def explore_kernel(src: Source, k: int, max_depth: int, L: int) -> KernelReport:
    """Collect fingerprints of ``(a_{l + k^j n})_{n<L}`` for all ``j <= max_depth``."""
    if k < 2:
        raise ValueError("base must be at least 2")
    if L < 1:
        raise ValueError("fingerprint length must be positive")
    if max_depth < 0:
        raise ValueError("depth must be nonnegative")
    arr = as_prefix(src, k ** max_depth * L)
    rep = KernelReport(k, max_depth, L)
    for j in range(max_depth + 1):
        kj = k ** j
        # row l of the transposed view is the subsequence with offset l
        rows = arr[:kj * L].reshape(L, kj).T
        new = 0
        for row in rows:
            fp = row.tobytes()
            if fp not in rep.fingerprints:
                rep.fingerprints.add(fp)
                new += 1
        rep.counts.append(len(rep.fingerprints))
        if j >= 1 and new == 0 and rep.closed_at is None:
            rep.closed_at = j
        rep.closed = (j >= 1 and new == 0)
    return rep


def first_square(w: Source, max_len: int = 512, n: int | None = None):
    """Leftmost, then shortest, factor CC with ``|C| <= max_len``; None if absent."""
    arr = as_prefix(w, n) if n is not None else as_prefix(w, _length_of(w))
    size = len(arr)
    best = None
    for ell in range(1, min(max_len, size // 2) + 1):
        eq = (arr[:size - ell] == arr[ell:]).astype(np.int32)
        # windows eq[i:i+ell] that are all True, with i + 2*ell <= size
        csum = np.concatenate(([0], np.cumsum(eq)))
        starts = size - 2 * ell + 1
        hits = np.flatnonzero(csum[ell:ell + starts] - csum[:starts] == ell)
        if hits.size:
            i = int(hits[0])
            if best is None or i < best[0]:
                best = (i, ell)
    return best


def _length_of(w: Source) -> int:
    if isinstance(w, (Word, bytes, bytearray, np.ndarray)):
        return len(w)
    raise TypeError("give an explicit length for streams and callables")


def is_squarefree(w: Source, max_len: int = 512, n: int | None = None) -> bool:
    return first_square(w, max_len, n) is None


def square_lengths(w: Source, max_len: int = 512, n: int | None = None) -> set[int]:
    """All ``|C|`` such that some square CC with ``|C| <= max_len`` occurs."""
    arr = as_prefix(w, n) if n is not None else as_prefix(w, _length_of(w))
    size = len(arr)
    out = set()
    for ell in range(1, min(max_len, size // 2) + 1):
        eq = (arr[:size - ell] == arr[ell:]).astype(np.int32)
        csum = np.concatenate(([0], np.cumsum(eq)))
        starts = size - 2 * ell + 1
        if np.any(csum[ell:ell + starts] - csum[:starts] == ell):
            out.add(ell)
    return out


def distinct_arith_witness(src: Source, m: int, l1: int, l2: int, budget: int) -> int | None:
    """Least ``n <= budget`` with ``s(l1 + n m) != s(l2 + n m)``, or None."""
    if not 0 <= l1 < l2 < m:
        raise ValueError("need 0 <= l1 < l2 < m")
    arr = as_prefix(src, l2 + budget * m + 1)
    diff = np.flatnonzero(arr[l1::m][:budget + 1] != arr[l2::m][:budget + 1])
    return int(diff[0]) if diff.size else None


def all_pairs_witnessed(src: Source, max_m: int, budget: int) -> dict:
    """Witness for every ``(m, l1, l2)`` with ``m <= max_m``; None marks exhaustion."""
    arr = as_prefix(src, max_m * (budget + 1) + max_m)
    out = {}
    for m in range(2, max_m + 1):
        for l1 in range(m):
            for l2 in range(l1 + 1, m):
                out[(m, l1, l2)] = distinct_arith_witness(arr, m, l1, l2, budget)
    return out
