"""Concrete alphabets, substitutions and sequences around the Thue-Morse word.

Alphabets use fixed symbol orders; several modules index arrays by them.

=========  ==========================================================
name       sequence
=========  ==========================================================
t          Thue-Morse word, fixed point of 0->01, 1->10
A          ternary word, fixed point of a->abc, b->ac, c->b
Bbar       fixed point of a->aā, ā->bc, b->aāc, c->b
B          gaps between occurrences of 01 in t, over {2,3,4}
Bcheck     gaps between occurrences of 10 in t
Abar       fixed point of a->ab, b->ca, b̂->ac, c->cb̂ (2-uniform cover of A)
Aplus      decorated cover of A over the seven-letter alphabet K
=========  ==========================================================
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AlphabetMismatch, ParseError
from .words import Alphabet, Morphism, MorphicStream, Word

BIN = Alphabet(("0", "1"))
ABC = Alphabet(("a", "b", "c"))
ABAR = Alphabet(("a", "ā", "b", "c"))
BERSTEL = Alphabet(("a", "b", "b̂", "c"))
GAPS = Alphabet(("2", "3", "4"))
# order is load-bearing: transducer matrices are indexed by it
K = Alphabet(("a", "b̂←", "b̂→", "b←", "b→", "c←", "c→"))

TAU = Morphism.from_strings(BIN, BIN, {"0": "01", "1": "10"})

PHI = Morphism.from_strings(ABC, ABC, {"a": "abc", "b": "ac", "c": "b"})
F = Morphism.from_strings(ABC, BIN, {"a": "011010", "b": "0110", "c": "01"})
R = Morphism.from_strings(ABC, GAPS, {"a": "33", "b": "4", "c": "2"})

PSI = Morphism.from_strings(ABAR, ABAR, {"a": "aā", "ā": "bc", "b": "aāc", "c": "b"})
P = Morphism.from_strings(ABAR, GAPS, {"a": "3", "ā": "3", "b": "4", "c": "2"})
PCHECK = Morphism.from_strings(ABAR, GAPS, {"a": "24", "ā": "33", "b": "233", "c": "4"})
FCHECK = Morphism.from_strings(
    ABAR, BIN, {"a": "011010", "ā": "011001", "b": "01101001", "c": "0110"})
Q = Morphism.from_strings(ABC, ABAR, {"a": "aā", "b": "b", "c": "c"})

PHIBAR = Morphism.from_strings(BERSTEL, BERSTEL, {"a": "ab", "b": "ca", "b̂": "ac", "c": "cb̂"})
PI = Morphism.from_strings(BERSTEL, ABC, {"a": "a", "b": "b", "b̂": "b", "c": "c"})

PHIPLUS = Morphism.from_strings(K, K, {
    "a": "a b→ c← a",
    "b̂←": "a b← c→ b̂←",
    "b̂→": "a b→ c← b̂→",
    "b←": "c→ b̂← a b←",
    "b→": "c→ b̂← a b→",
    "c←": "c← b̂→ a c←",
    "c→": "c→ b̂← a c→",
})
GAMMA = Morphism.from_strings(K, ABC, {
    "a": "a", "b̂←": "b", "b̂→": "b", "b←": "b", "b→": "b", "c←": "c", "c→": "c"})

BASE_WORDS = (BERSTEL.parse("abc"), BERSTEL.parse("ac"), BERSTEL.parse("b̂"))


def gap_values(w: Word | bytes) -> list[int]:
    """Integer values of a word over the gap alphabet {2,3,4}."""
    letters = w.letters if isinstance(w, Word) else w
    return [x + 2 for x in letters]


def gap_word(values) -> Word:
    try:
        return Word(GAPS, bytes(v - 2 for v in values))
    except ValueError:
        raise AlphabetMismatch("gap values must lie in {2,3,4}") from None


def thue_morse(budget: int | None = None) -> MorphicStream:
    return MorphicStream(TAU, "0", budget=budget, name="t")


def ternary_A(budget: int | None = None) -> MorphicStream:
    return MorphicStream(PHI, "a", budget=budget, name="A")


def bbar(budget: int | None = None) -> MorphicStream:
    return MorphicStream(PSI, "a", budget=budget, name="Bbar")


def berstel_Abar(budget: int | None = None) -> MorphicStream:
    return MorphicStream(PHIBAR, "a", budget=budget, name="Abar")


def aplus(budget: int | None = None) -> MorphicStream:
    return MorphicStream(PHIPLUS, "a", budget=budget, name="Aplus")


def gaps_B(budget: int | None = None) -> MorphicStream:
    """B read as the coding p of Bbar."""
    return MorphicStream(PSI, "a", coding=P, budget=budget, name="B")


def image_prefix(m: Morphism, src: MorphicStream, n: int) -> Word:
    """First ``n`` letters of ``m`` applied to the infinite word ``src``."""
    if src.alphabet != m.source:
        raise AlphabetMismatch("morphism does not act on the stream alphabet")
    if n <= 0:
        return Word(m.target)
    shortest = min(len(img) for img in m.images)
    take = -(-n // shortest)
    return Word(m.target, m.apply_bytes(src.prefix_bytes(take))[:n])


def reconstruct_tm_via(f_like: Morphism, src: MorphicStream, n: int) -> Word:
    """Concatenate ``f_like`` images of the letters of ``src`` and cut at ``n``."""
    if f_like.target != BIN:
        raise AlphabetMismatch("expected a morphism into {0,1}")
    return image_prefix(f_like, src, n)


def B_prefix(n: int) -> Word:
    return image_prefix(R, ternary_A(), n)


def Bcheck_prefix(n: int) -> Word:
    return image_prefix(PCHECK, bbar(), n)


def inverse_r(gaps: Word, target: str = "abc") -> Word:
    """Undo r: 33->a, 4->b, 2->c.  With ``target="abar"`` use 33->aā instead."""
    if gaps.alphabet != GAPS:
        raise AlphabetMismatch("inverse_r reads words over {2,3,4}")
    if target == "abc":
        alph, three, four, two = ABC, b"\x00", b"\x01", b"\x02"
    elif target == "abar":
        alph, three, four, two = ABAR, b"\x00\x01", b"\x02", b"\x03"
    else:
        raise ValueError(f"unknown target {target!r}")
    out = bytearray()
    letters = gaps.letters
    i = 0
    while i < len(letters):
        x = letters[i]
        if x == 1:
            if i + 1 >= len(letters) or letters[i + 1] != 1:
                raise ParseError("isolated 3", i)
            out += three
            i += 2
        else:
            out += four if x == 2 else two
            i += 1
    return Word(alph, bytes(out))


@dataclass
class BlockParse:
    """Greedy split of an Abar prefix into a, b(e,e'), b(e,e'), ..., remainder."""

    blocks: list[tuple[int, int]] = field(default_factory=list)
    remainder: bytes = b""
    valid: bool = True
    error_index: int | None = None

    def rebuild(self) -> bytes:
        out = bytearray(BERSTEL.parse("a"))
        for e, e2 in self.blocks:
            out += b_block(e, e2)
        return bytes(out) + self.remainder


def b_block(e: int, e2: int) -> bytes:
    """b(e,e') = bc (ac)^e b̂a (ca)^e'."""
    return BERSTEL.parse("bc" + "ac" * e + "b̂a" + "ca" * e2)


_A, _B, _BH, _C = range(4)


def bblock_decompose(abar_prefix: Word) -> BlockParse:
    if abar_prefix.alphabet != BERSTEL:
        raise AlphabetMismatch("expected a word over {a,b,b̂,c}")
    w = abar_prefix.letters
    n = len(w)
    res = BlockParse()
    if n == 0:
        return res
    if w[0] != _A:
        return BlockParse(valid=False, error_index=0, remainder=w)

    def fail(i):
        res.valid = False
        res.error_index = i
        return res

    pos = 1
    while pos < n:
        start = pos
        # expected skeleton, matched letter by letter; None marks "ran out"
        i = start
        if w[i] != _B:
            return fail(i)
        i += 1
        if i >= n:
            break
        if w[i] != _C:
            return fail(i)
        i += 1
        if i >= n:
            break
        if w[i] == _A:
            e = 1
            if i + 1 >= n:
                break
            if w[i + 1] != _C:
                return fail(i + 1)
            i += 2
            if i >= n:
                break
        elif w[i] == _BH:
            e = 0
        else:
            return fail(i)
        if w[i] != _BH:
            return fail(i)
        i += 1
        if i >= n:
            break
        if w[i] != _A:
            return fail(i)
        i += 1
        if i >= n:
            break
        if w[i] == _B:
            e2 = 0
        elif w[i] == _C:
            if i + 1 >= n:
                break
            if w[i + 1] != _A:
                return fail(i + 1)
            e2 = 1
            i += 2
        else:
            return fail(i)
        res.blocks.append((e, e2))
        pos = i
    else:
        return res
    res.remainder = w[pos:]
    return res


def parse_base_words(w: bytes) -> tuple[list[int], bytes]:
    """Greedy split into abc, ac, b̂; returns word indices and the unparsed tail."""
    out = []
    i = 0
    while i < len(w):
        for idx, bw in enumerate(BASE_WORDS):
            if w.startswith(bw, i):
                out.append(idx)
                i += len(bw)
                break
        else:
            break
    return out, w[i:]


@dataclass
class NamedSystem:
    name: str
    stream: MorphicStream
    maps: dict[str, Morphism] = field(default_factory=dict)


def systems() -> dict[str, NamedSystem]:
    return {
        "t": NamedSystem("t", thue_morse(), {"τ": TAU}),
        "A": NamedSystem("A", ternary_A(), {"φ": PHI, "f": F, "r": R, "q": Q}),
        "Bbar": NamedSystem("Bbar", bbar(), {"ψ": PSI, "p": P, "p̌": PCHECK, "f̌": FCHECK}),
        "Abar": NamedSystem("Abar", berstel_Abar(), {"φ̄": PHIBAR, "π": PI}),
        "Aplus": NamedSystem("Aplus", aplus(), {"φ⁺": PHIPLUS, "γ": GAMMA}),
    }
