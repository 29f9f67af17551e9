"""Finite and infinite words: alphabets, morphisms, fixed-point streams, scans.

Letters are stored as symbol indices in ``bytes`` objects, which keeps
morphism application (``bytes.join``) and factor search (``bytes.find``)
in C.  Alphabets therefore hold at most 256 symbols.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import AlphabetMismatch, BudgetExceeded, NotProlongable

BUDGET_ENV = "TMGAPS_STREAM_BUDGET"
DEFAULT_BUDGET = 1 << 22


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(self.symbols) > 256:
            raise ValueError("at most 256 symbols are supported")
        if any(not s for s in self.symbols):
            raise ValueError("symbol names must be nonempty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"duplicate symbol names in {self.symbols}")

    @property
    def size(self) -> int:
        return len(self.symbols)

    def index(self, name: str) -> int:
        try:
            return self.symbols.index(name)
        except ValueError:
            raise AlphabetMismatch(f"{name!r} is not a symbol of {self.symbols}") from None

    def parse(self, text: str) -> bytes:
        """Split ``text`` into symbols, longest name first."""
        by_len = sorted(range(self.size), key=lambda i: -len(self.symbols[i]))
        out = bytearray()
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            for i in by_len:
                name = self.symbols[i]
                if text.startswith(name, pos):
                    out.append(i)
                    pos += len(name)
                    break
            else:
                raise AlphabetMismatch(f"cannot read {text[pos:pos + 8]!r} over {self.symbols}")
        return bytes(out)

    def render(self, letters: Iterable[int], sep: str = "") -> str:
        return sep.join(self.symbols[x] for x in letters)


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    letters: bytes = b""

    def __post_init__(self):
        if not isinstance(self.letters, bytes):
            object.__setattr__(self, "letters", bytes(self.letters))
        if self.letters and max(self.letters) >= self.alphabet.size:
            raise AlphabetMismatch("letter index out of range for alphabet")

    @classmethod
    def parse(cls, alphabet: Alphabet, text: str) -> "Word":
        return cls(alphabet, alphabet.parse(text))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.letters[item])
        return self.letters[item]

    def __add__(self, other: "Word") -> "Word":
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.letters + other.letters)

    def __str__(self) -> str:
        return self.alphabet.render(self.letters)

    def names(self) -> list[str]:
        return [self.alphabet.symbols[x] for x in self.letters]

    def startswith(self, other: "Word") -> bool:
        return self.alphabet == other.alphabet and self.letters.startswith(other.letters)


@dataclass(frozen=True)
class Morphism:
    source: Alphabet
    target: Alphabet
    images: tuple[bytes, ...]

    def __post_init__(self):
        if len(self.images) != self.source.size:
            raise ValueError("need exactly one image per source symbol")
        for img in self.images:
            if not img:
                raise ValueError("images must be nonempty")
            if max(img) >= self.target.size:
                raise AlphabetMismatch("image letter outside target alphabet")

    @classmethod
    def from_strings(cls, source: Alphabet, target: Alphabet,
                     rules: Mapping[str, str]) -> "Morphism":
        images = []
        for name in source.symbols:
            images.append(target.parse(rules[name]))
        return cls(source, target, tuple(images))

    @property
    def is_coding(self) -> bool:
        return all(len(img) == 1 for img in self.images)

    @property
    def is_endomorphism(self) -> bool:
        return self.source == self.target

    def image(self, symbol: str) -> Word:
        return Word(self.target, self.images[self.source.index(symbol)])

    def apply_bytes(self, letters: bytes) -> bytes:
        if self.is_coding:
            return letters.translate(self._table())
        return b"".join(map(self.images.__getitem__, letters))

    def _table(self) -> bytes:
        table = bytearray(range(256))
        for i, img in enumerate(self.images):
            table[i] = img[0]
        return bytes(table)

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def power(self, k: int) -> "Morphism":
        if not self.is_endomorphism:
            raise AlphabetMismatch("only endomorphisms can be iterated")
        images = []
        for x in range(self.source.size):
            cur = bytes([x])
            for _ in range(k):
                cur = self.apply_bytes(cur)
            images.append(cur)
        return Morphism(self.source, self.target, tuple(images))

    def then(self, other: "Morphism") -> "Morphism":
        """Composition: first ``self``, then ``other``."""
        if other.source != self.target:
            raise AlphabetMismatch("composition alphabets do not line up")
        return Morphism(self.source, other.target,
                        tuple(other.apply_bytes(img) for img in self.images))


def apply(m: Morphism, w: Word) -> Word:
    if w.alphabet != m.source:
        raise AlphabetMismatch(
            f"word over {w.alphabet.symbols} given to morphism on {m.source.symbols}")
    return Word(m.target, m.apply_bytes(w.letters))


class MorphicStream:
    """Lazily grown prefix of the fixed point of ``morphism`` starting at ``seed``.

    The buffer only ever grows by whole images of letters already in it, so
    ``buffer[:pos] == morphism(buffer[:expanded])`` holds after every step.
    """

    def __init__(self, morphism: Morphism, seed: str | int, coding: Morphism | None = None,
                 budget: int | None = None, name: str = ""):
        if not morphism.is_endomorphism:
            raise NotProlongable("a fixed-point stream needs an endomorphism")
        seed_ix = seed if isinstance(seed, int) else morphism.source.index(seed)
        img = morphism.images[seed_ix]
        if len(img) < 2 or img[0] != seed_ix:
            raise NotProlongable(
                f"morphism is not prolongable on {morphism.source.symbols[seed_ix]!r}")
        if coding is not None:
            if coding.source != morphism.target or not coding.is_coding:
                raise AlphabetMismatch("coding must be a letter-to-letter map on the stream alphabet")
        self.morphism = morphism
        self.seed = seed_ix
        self.coding = coding
        self.budget = default_budget() if budget is None else budget
        self.name = name
        self._buf = bytearray([seed_ix])
        self._expanded = 0
        self._pos = 0
        self._lock = threading.Lock()
        self._lengths: list[list[int]] | None = None

    @property
    def alphabet(self) -> Alphabet:
        return self.coding.target if self.coding else self.morphism.source

    @property
    def raw_alphabet(self) -> Alphabet:
        return self.morphism.source

    def __len__(self) -> int:
        return len(self._buf)

    def _grow(self, n: int) -> None:
        if n > self.budget:
            raise BudgetExceeded(n, self.budget, self.name or "stream")
        if len(self._buf) >= n:
            return
        with self._lock:
            images = self.morphism.images
            while len(self._buf) < n:
                # expand just enough letters that the buffer reaches n
                chunk_end = min(len(self._buf), self._expanded + max(1, (n - len(self._buf))))
                chunk = bytes(self._buf[self._expanded:chunk_end])
                img = b"".join(map(images.__getitem__, chunk))
                overlap = len(self._buf) - self._pos
                if img[:overlap] != self._buf[self._pos:]:
                    raise AssertionError("fixed-point invariant broken")
                self._buf += img[overlap:]
                self._pos += len(img)
                self._expanded = chunk_end

    def raw_prefix(self, n: int) -> bytes:
        """First ``n`` letters of the uncoded fixed point."""
        if n < 0:
            raise ValueError("prefix length must be nonnegative")
        self._grow(n)
        return bytes(self._buf[:n])

    def prefix_bytes(self, n: int) -> bytes:
        raw = self.raw_prefix(n)
        return self.coding.apply_bytes(raw) if self.coding else raw

    def prefix(self, n: int) -> Word:
        return Word(self.alphabet, self.prefix_bytes(n))

    def check_extension_invariant(self, n: int) -> bool:
        """``morphism(prefix(n))`` starts with ``prefix(n)``."""
        raw = self.raw_prefix(n)
        return self.morphism.apply_bytes(raw).startswith(raw)

    # -- random access by descent through the substitution tree -------------

    def _level_lengths(self, upto: int) -> list[list[int]]:
        if self._lengths is None:
            self._lengths = [[1] * self.morphism.source.size]
        lengths = self._lengths
        images = self.morphism.images
        while lengths[-1][self.seed] <= upto:
            prev = lengths[-1]
            lengths.append([sum(prev[y] for y in img) for img in images])
        return lengths

    def raw_letter_at(self, i: int) -> int:
        """Letter ``i`` of the uncoded fixed point, without growing the buffer.

        Works for indices far beyond the budget: the position is located by
        walking down the tree of ``m^K(seed)`` using image lengths.
        """
        if i < len(self._buf):
            return self._buf[i]
        lengths = self._level_lengths(i)
        level = len(lengths) - 1
        x = self.seed
        images = self.morphism.images
        while level > 0:
            level -= 1
            row = lengths[level]
            for y in images[x]:
                if i < row[y]:
                    x = y
                    break
                i -= row[y]
        return x

    def raw_factor_at(self, i: int, length: int) -> bytes:
        if i + length <= len(self._buf):
            return bytes(self._buf[i:i + length])
        return bytes(self.raw_letter_at(j) for j in range(i, i + length))


def occurrences(s: MorphicStream, w: Word, horizon: int) -> list[int]:
    """Start indices ``i`` with ``i + |w| <= horizon`` where ``w`` occurs in ``s``."""
    if len(w) < 1:
        raise ValueError("factor must be nonempty")
    if horizon < len(w):
        raise ValueError("horizon shorter than the factor")
    if w.alphabet != s.alphabet:
        raise AlphabetMismatch("factor and stream use different alphabets")
    return find_all(s.prefix_bytes(horizon), w.letters)


def find_all(text: bytes, pattern: bytes) -> list[int]:
    out = []
    i = text.find(pattern)
    while i >= 0:
        out.append(i)
        i = text.find(pattern, i + 1)
    return out


def gaps_by_scan(s: MorphicStream, w: Word, count: int, budget: int | None = None) -> list[int]:
    """First ``count`` differences between consecutive occurrences of ``w``.

    The horizon doubles until enough occurrences are seen; running past the
    budget raises :class:`BudgetExceeded` rather than truncating.
    """
    if len(w) < 1:
        raise ValueError("factor must be nonempty")
    if count < 0:
        raise ValueError("count must be nonnegative")
    budget = s.budget if budget is None else budget
    horizon = max(64, 4 * len(w))
    while True:
        horizon = min(horizon, budget)
        occ = occurrences(s, w, horizon)
        if len(occ) >= count + 1:
            return [b - a for a, b in zip(occ, occ[1:count + 1])]
        if horizon >= budget:
            raise BudgetExceeded(horizon * 2, budget, f"scan for {w}")
        horizon *= 2


def differences(seq: Sequence[int]) -> list[int]:
    return [b - a for a, b in zip(seq, seq[1:])]
