"""Gap sequences of arbitrary factors of the Thue-Morse word.

A factor w (|w| >= 2) is located inside the blocks ``a^{xy}_k = τ^k(x) τ^k(y)``
for the least k where this is possible.  Those blocks sit at positions
``2^k j`` with ``t_j t_{j+1} = xy``, so the gaps of w are read off the gaps
of 01/10 (or 11/00) in t, both of which are governed by Bbar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import catalog
from .errors import AlphabetMismatch, NotAFactor, TmGapsError, UnsupportedLength
from .words import MorphicStream, Word, find_all, occurrences

MEMBERS = ("00", "01", "10", "11")
RETRY_HORIZON = 1 << 22


@dataclass(frozen=True)
class GapClass:
    factor: str
    k: int
    members: tuple[str, ...]
    sigma0: int
    sigma1: int | None = None

    def header(self) -> str:
        s = f"k={self.k} members={','.join(self.members)} s0={self.sigma0}"
        if self.sigma1 is not None:
            s += f" s1={self.sigma1}"
        return s


@dataclass(frozen=True)
class GapTable:
    """Two gaps emitted per letter of Bbar, keyed by the letter name."""

    rows: dict

    def __getitem__(self, letter: str) -> tuple[int, int]:
        return self.rows[letter]

    def distinct(self) -> set[int]:
        return {g for pair in self.rows.values() for g in pair}


def _as_bits(w) -> str:
    if isinstance(w, Word):
        if w.alphabet != catalog.BIN:
            raise AlphabetMismatch("factors of t are words over {0,1}")
        return str(w)
    if any(ch not in "01" for ch in w):
        raise AlphabetMismatch(f"{w!r} is not a word over {{0,1}}")
    return w


def block(xy: str, k: int) -> str:
    tk = catalog.thue_morse().prefix(1 << k)
    img = {"0": str(tk), "1": str(tk).translate(str.maketrans("01", "10"))}
    return img[xy[0]] + img[xy[1]]


def factor_horizon(length: int) -> int:
    return (1 << math.ceil(math.log2(4 * length))) * 16


def is_factor(w: str, tm: MorphicStream | None = None) -> bool:
    """Scan for ``w`` in t within the fixed budget, retrying once at 2^22."""
    tm = tm or catalog.thue_morse(budget=RETRY_HORIZON)
    pat = catalog.BIN.parse(w)
    for horizon in (factor_horizon(len(w)), RETRY_HORIZON):
        if tm.prefix_bytes(horizon).find(pat) >= 0:
            return True
    return False


def classify(w) -> GapClass:
    bits = _as_bits(w)
    if len(bits) < 2:
        raise UnsupportedLength("factors of length 1 have no morphic gap description here; "
                                "use a direct scan")
    if not is_factor(bits):
        raise NotAFactor(f"{bits} does not occur in t within the scan budget")
    k = 0
    while True:
        found = {}
        for xy in MEMBERS:
            hits = find_all(block(xy, k).encode(), bits.encode())
            if len(hits) > 1:
                raise TmGapsError(f"{bits} occurs more than once in a^{xy}_{k}")
            if hits:
                found[xy] = hits[0]
        if found:
            break
        k += 1
    members = tuple(sorted(found))
    if set(members) == {"01", "10"}:
        return GapClass(bits, k, ("01", "10"), found["01"], found["10"])
    if set(members) == {"00", "11"}:
        return GapClass(bits, k, ("11", "00"), found["11"], found["00"])
    if len(members) == 1:
        return GapClass(bits, k, members, found[members[0]])
    raise TmGapsError(f"unexpected member set {members} for {bits}")


def gap_table(gc: GapClass) -> GapTable:
    if gc.sigma1 is None:
        raise ValueError("gap tables exist only for two-member classes")
    s = gc.sigma1 - gc.sigma0
    u = 1 << gc.k
    if gc.members == ("01", "10"):
        d = {"a": (2, 1), "ā": (1, 2), "b": (2, 2), "c": (1, 1)}
    else:
        d = {"a": (4, 2), "ā": (2, 4), "b": (4, 4), "c": (2, 2)}
    return GapTable({x: (s + u * d1, -s + u * d2) for x, (d1, d2) in d.items()})


def gap_stream(w, n: int) -> list[int]:
    """First ``n`` gaps of ``w`` in t, generated from Bbar."""
    gc = classify(w)
    if n <= 0:
        return []
    scale = 1 << gc.k
    if gc.sigma1 is None:
        xy = gc.members[0]
        if xy in ("00", "11"):
            scale *= 2
        if xy in ("01", "11"):
            base = catalog.gap_values(catalog.gaps_B().prefix_bytes(n))
        else:
            base = catalog.gap_values(catalog.Bcheck_prefix(n))
        return [scale * g for g in base]
    table = gap_table(gc)
    names = catalog.ABAR.symbols
    out = []
    for x in catalog.bbar().raw_prefix(-(-n // 2)):
        out.extend(table[names[x]])
    return out[:n]


def block_positions(xy: str, k: int, horizon: int, verify: bool = True) -> list[int]:
    """Start positions of ``a^{xy}_k`` that end by ``horizon``."""
    if xy not in MEMBERS:
        raise ValueError(f"member must be one of {MEMBERS}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    span = 2 << k
    tm = catalog.thue_morse()
    if horizon < span:
        return []
    n_pairs = (horizon - span) // (1 << k) + 2
    pairs = occurrences(tm, Word.parse(catalog.BIN, xy), n_pairs)
    out = [j << k for j in pairs if (j << k) + span <= horizon]
    if verify and horizon <= 1 << 16:
        direct = occurrences(tm, Word.parse(catalog.BIN, block(xy, k)), horizon)
        if direct != out:
            raise AssertionError(f"block positions for {xy}, k={k} disagree with scan")
    return out
