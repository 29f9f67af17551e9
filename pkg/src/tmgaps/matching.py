"""Decorated letters, connector matchings, rotations and degrees over A⁺.

Letters of K carry a connector pointing left or right (except ``a``).  A
non-crossing matching pairs right-pointing with left-pointing connectors so
that links are nested or disjoint; on A⁺ it exists and is unique, and
rotating along its links turns A into (abc)^ω.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import catalog
from .errors import AlphabetMismatch, InvalidMatching
from .words import MorphicStream, Word

K = catalog.K
A_, BH_L, BH_R, B_L, B_R, C_L, C_R = range(7)
RIGHT = frozenset({BH_R, B_R, C_R})
LEFT = frozenset({BH_L, B_L, C_L})
ALLOWED_PAIRS = frozenset({(B_R, C_L), (BH_R, C_L), (C_R, B_L), (C_R, BH_L)})

# ASCII names in K order: ^ marks the hat
ASCII_NAMES = ("a", "b^<", "b^>", "bh<", "bh>", "c<", "c>")
ASCII = catalog.Alphabet(ASCII_NAMES)

_IS_RIGHT = np.zeros(256, dtype=bool)
_IS_RIGHT[list(RIGHT)] = True
_IS_LEFT = np.zeros(256, dtype=bool)
_IS_LEFT[list(LEFT)] = True


@dataclass(frozen=True)
class DecoratedSymbol:
    base_type: str  # one of a, b, b̂, c
    connector: str  # none, left, right

    def __post_init__(self):
        if (self.base_type == "a") != (self.connector == "none"):
            raise ValueError("only the letter a carries no connector")
        if self.base_type not in ("a", "b", "b̂", "c") or self.connector not in ("none", "left", "right"):
            raise ValueError(f"not a letter of K: {self}")

    @property
    def index(self) -> int:
        if self.base_type == "a":
            return A_
        arrow = "←" if self.connector == "left" else "→"
        return K.index(self.base_type + arrow)

    @classmethod
    def from_index(cls, i: int) -> "DecoratedSymbol":
        name = K.symbols[i]
        if name == "a":
            return cls("a", "none")
        return cls(name[:-1], "left" if name[-1] == "←" else "right")

    def __str__(self) -> str:
        return K.symbols[self.index]


@dataclass(frozen=True)
class Matching:
    """Links (i, j), i < j, sorted by span and then by left end."""

    links: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(sorted(
            (tuple(map(int, p)) for p in self.links), key=lambda p: (p[1] - p[0], p[0]))))

    def __len__(self) -> int:
        return len(self.links)

    def __iter__(self):
        return iter(self.links)

    def as_set(self) -> set[tuple[int, int]]:
        return set(self.links)


def _letters(w) -> bytes:
    if isinstance(w, Word):
        if w.alphabet != K:
            raise AlphabetMismatch("expected a word over K")
        return w.letters
    return bytes(w)


def phi_plus(budget: int | None = None) -> MorphicStream:
    return catalog.aplus(budget)


def closed_prefix(k: int) -> Word:
    """(φ⁺)^k(a), of length 4^k."""
    return phi_plus(budget=max(4 ** k, 1 << 22)).prefix(4 ** k)


def gamma(w) -> Word:
    return Word(catalog.ABC, catalog.GAMMA.apply_bytes(_letters(w)))


def find_matching(w) -> Matching:
    """Link free matching connectors, shortest spans first.

    Within one span length the candidate pairs are disjoint (an index is
    either a right or a left connector, never both), so each round is done
    at once.  Rounds that cannot produce a pair are skipped: the next
    useful span is the least distance from a free right connector to the
    nearest free left connector after it.
    """
    arr = np.frombuffer(_letters(w), dtype=np.uint8)
    free_r = np.flatnonzero(_IS_RIGHT[arr])
    free_l = np.flatnonzero(_IS_LEFT[arr])
    is_free_l = np.zeros(len(arr) + 1, dtype=bool)
    is_free_l[free_l] = True
    left_parts, right_parts = [], []
    while free_r.size and free_l.size:
        nxt = np.searchsorted(free_l, free_r)
        has = nxt < free_l.size
        if not has.any():
            break
        dist = np.where(has, free_l[np.minimum(nxt, free_l.size - 1)] - free_r, len(arr) + 1)
        n = dist.min()
        pick = dist == n
        i = free_r[pick]
        left_parts.append(i)
        right_parts.append(i + n)
        is_free_l[i + n] = False
        free_r = free_r[~pick]
        free_l = np.flatnonzero(is_free_l[:len(arr)])
    if not left_parts:
        return Matching(())
    lo = np.concatenate(left_parts)
    hi = np.concatenate(right_parts)
    return Matching(tuple(zip(lo.tolist(), hi.tolist())))


def find_matching_naive(w) -> Matching:
    """Literal transcription of the span-by-span loop, for small words."""
    letters = _letters(w)
    selected = set()
    links = []
    for n in range(1, len(letters)):
        for i in range(len(letters) - n):
            if letters[i] in RIGHT and letters[i + n] in LEFT:
                if i not in selected and i + n not in selected:
                    links.append((i, i + n))
                    selected.update((i, i + n))
    return Matching(tuple(links))


def stack_matching(w) -> Matching:
    """Parenthesis matching: right connectors open, left connectors close."""
    stack = []
    links = []
    for j, x in enumerate(_letters(w)):
        if x in RIGHT:
            stack.append(j)
        elif x in LEFT and stack:
            links.append((stack.pop(), j))
    return Matching(tuple(links))


@dataclass(frozen=True)
class Violation:
    clause: str  # order | pair | disjoint | uncovered | crossing
    indices: tuple


def validate_matching(w, m: Matching) -> Violation | None:
    """None when ``m`` is a non-crossing matching for ``w``, else the first failed clause."""
    letters = _letters(w)
    n = len(letters)
    for i, j in m:
        if not (0 <= i < j < n):
            return Violation("order", (i, j))
    for i, j in m:
        if (letters[i], letters[j]) not in ALLOWED_PAIRS:
            return Violation("pair", (i, j))
    partner = [-1] * n
    for i, j in m:
        for x in (i, j):
            if partner[x] != -1:
                return Violation("disjoint", (x,))
        partner[i] = j
        partner[j] = i
    for x in range(n):
        if partner[x] == -1 and letters[x] != A_:
            return Violation("uncovered", (x,))
    stack = []
    for x in range(n):
        p = partner[x]
        if p > x:
            stack.append(x)
        elif 0 <= p < x:
            top = stack.pop()
            if top != p:
                return Violation("crossing", ((top, partner[top]), (p, x)))
    return None


def check_matching(w, m: Matching) -> None:
    v = validate_matching(w, m)
    if v is not None:
        raise InvalidMatching(v.clause, v.indices)


def rotate_along_links(w, m: Matching, tie_order: str = "left") -> Word:
    """Apply one rotation per link, shortest links first.

    ``tie_order`` chooses how links of equal span are enumerated
    ("left": ascending left end, "right": descending).
    """
    check_matching(w, m)
    cur = bytearray(_letters(w))
    if tie_order == "left":
        links = m.links
    elif tie_order == "right":
        links = tuple(sorted(m.links, key=lambda p: (p[1] - p[0], -p[0])))
    else:
        raise ValueError("tie_order is 'left' or 'right'")
    for i, j in links:
        if cur[i] == C_R:
            cur[i:j + 1] = cur[j:j + 1] + cur[i:j]
        else:
            cur[i:j] = cur[i + 1:j] + cur[i:i + 1]
    return Word(K, bytes(cur))


def rotation_shortcut(w) -> Word:
    """γ, drop every b, then put a b in front of every c."""
    g = gamma(w).letters
    a, b, c = 0, 1, 2
    out = bytearray()
    for x in g:
        if x == c:
            out += bytes((b, c))
        elif x == a:
            out.append(a)
    return Word(catalog.ABC, bytes(out))


def is_abc_periodic_prefix(w: Word) -> bool:
    return all(x == i % 3 for i, x in enumerate(w.letters))


@lru_cache(maxsize=8)
def _degree_profile(k: int) -> tuple[np.ndarray, bytes]:
    w = closed_prefix(k)
    letters = w.letters
    diff = np.zeros(len(letters) + 1, dtype=np.int64)
    m = find_matching(w)
    for i, j in m:
        if letters[i] == C_R:
            diff[i + 1] += 1
            diff[j] -= 1
        elif letters[j] == C_L:
            diff[i + 1] -= 1
            diff[j] += 1
    return np.cumsum(diff[:-1]), letters


def _order_for(j: int) -> int:
    k = 1
    while 4 ** k <= 4 * (j + 1):
        k += 1
    return k


@dataclass(frozen=True)
class Degree:
    plus: int
    minus: int

    @property
    def value(self) -> int:
        return self.plus - self.minus


def degree(j: int) -> Degree:
    """Signed count of A⁺ links strictly covering index ``j``."""
    if j < 0:
        raise ValueError("index must be nonnegative")
    w = closed_prefix(_order_for(j))
    letters = w.letters
    m = find_matching(w)
    plus = sum(1 for i, l in m if i < j < l and letters[i] == C_R)
    minus = sum(1 for i, l in m if i < j < l and letters[l] == C_L)
    return Degree(plus, minus)


def degrees(n: int) -> list[int]:
    """deg(0), ..., deg(n-1) from one matching of a closed prefix."""
    if n <= 0:
        return []
    prof, _ = _degree_profile(_order_for(n - 1))
    return prof[:n].tolist()


def aplus_letters(n: int) -> bytes:
    return phi_plus().raw_prefix(n)


def render_ascii(w) -> str:
    return " ".join(ASCII_NAMES[x] for x in _letters(w))


def link_direction(letters: bytes, i: int, j: int) -> str:
    return "R" if letters[i] == C_R else "L"
