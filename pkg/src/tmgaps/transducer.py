"""Weighted base-k transducers and the discrepancy of 01-blocks in Thue-Morse.

Edge weights are :class:`Third` values.  ``hexagon_T1`` sums to the degree
of a position of A⁺ (its weights are whole numbers); ``build_T2`` sums to
the discrepancy ``D_N = #{n < N : t_n t_{n+1} = 01} - N/3``.  Its edge
weights are the degree weights divided by three, plus correction terms
that telescope along any path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, total_ordering

import numpy as np

from . import catalog
from .errors import TransducerError
from .matching import ASCII_NAMES

K_SIZE = 7
# A⁺ letters in K order; indices into ASCII_NAMES
A_, BH_L, BH_R, B_L, B_R, C_L, C_R = range(K_SIZE)


@total_ordering
@dataclass(frozen=True)
class Third:
    """Exact value ``num3 / 3``."""

    num3: int

    @classmethod
    def of(cls, value) -> "Third":
        if isinstance(value, Third):
            return value
        frac = Fraction(value)
        if (3 * frac).denominator != 1:
            raise ValueError(f"{value} is not a multiple of 1/3")
        return cls(int(3 * frac))

    def __add__(self, other):
        return Third(self.num3 + Third.of(other).num3)

    __radd__ = __add__

    def __sub__(self, other):
        return Third(self.num3 - Third.of(other).num3)

    def __rsub__(self, other):
        return Third(Third.of(other).num3 - self.num3)

    def __neg__(self):
        return Third(-self.num3)

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return Third(self.num3 * k)

    __rmul__ = __mul__

    def __abs__(self):
        return Third(abs(self.num3))

    def __eq__(self, other):
        if isinstance(other, Third):
            return self.num3 == other.num3
        try:
            return Fraction(self.num3, 3) == Fraction(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return Fraction(self.num3, 3) < Fraction(Third.of(other).num3, 3)

    def __hash__(self):
        return hash(Fraction(self.num3, 3))

    def as_fraction(self) -> Fraction:
        return Fraction(self.num3, 3)

    def __float__(self):
        return self.num3 / 3

    def __str__(self) -> str:
        if self.num3 % 3 == 0:
            return str(self.num3 // 3)
        return f"{self.num3}/3"

    def __repr__(self) -> str:
        return f"Third({self})"


ZERO = Third(0)


def digits(n: int, base: int) -> list[int]:
    """Base-``base`` digits of ``n``, most significant first; [] for 0."""
    if n < 0:
        raise ValueError("only nonnegative integers have digit expansions here")
    out = []
    while n:
        n, d = divmod(n, base)
        out.append(d)
    return out[::-1]


@dataclass(frozen=True)
class WeightedTransducer:
    """Deterministic transducer reading base-``base`` digits, most significant first.

    ``delta[s][d]`` is the next state and ``weight[s][d]`` the 3x-scaled edge
    weight.  Inputs are left-padded with zeros to a multiple of
    ``pad_multiple`` digits (1 means no padding).
    """

    base: int
    states: tuple[str, ...]
    start: int
    delta: tuple[tuple[int, ...], ...]
    weight: tuple[tuple[int, ...], ...]
    pad_multiple: int = 1
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.base < 2:
            raise TransducerError("base must be at least 2")
        n = len(self.states)
        if len(set(self.states)) != n:
            raise TransducerError("duplicate state names")
        if any(not s or any(ch.isspace() for ch in s) for s in self.states):
            raise TransducerError("state names must be nonempty and free of whitespace")
        if not 0 <= self.start < n:
            raise TransducerError("start state out of range")
        if len(self.delta) != n or len(self.weight) != n:
            raise TransducerError("transition table must cover every state")
        for s in range(n):
            if len(self.delta[s]) != self.base or len(self.weight[s]) != self.base:
                raise TransducerError(f"state {self.states[s]} lacks some digit")
            if any(not 0 <= x < n for x in self.delta[s]):
                raise TransducerError(f"state {self.states[s]} points outside the state set")
        if self.pad_multiple < 1:
            raise TransducerError("pad multiple must be positive")
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.states)})

    def state_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise TransducerError(f"unknown state {name!r}") from None

    def padded_digits(self, n: int) -> list[int]:
        ds = digits(n, self.base)
        extra = -len(ds) % self.pad_multiple
        return [0] * extra + ds

    def walk(self, n: int) -> tuple[int, Third]:
        """Final state and weight sum along the digit path of ``n``."""
        s = self.start
        total = 0
        for d in self.padded_digits(n):
            total += self.weight[s][d]
            s = self.delta[s][d]
        return s, Third(total)

    def run(self, n: int) -> Third:
        return self.walk(n)[1]

    def zero_loop_ok(self) -> bool:
        """Reading ``pad_multiple`` zeros from the start returns to it at weight 0."""
        s, total = self.start, 0
        for _ in range(self.pad_multiple):
            total += self.weight[s][0]
            s = self.delta[s][0]
        return s == self.start and total == 0

    def run_all(self, upto: int) -> tuple[np.ndarray, np.ndarray]:
        """Final states and 3x weight sums for every n < upto, vectorised.

        Uses path(n) = path(n // base) followed by digit n % base, which needs
        the zero loop at the start and no padding.
        """
        if self.pad_multiple != 1 or not self.zero_loop_ok():
            raise TransducerError("run_all needs an unpadded transducer with a zero loop at start")
        delta = np.asarray(self.delta, dtype=np.int64)
        weight = np.asarray(self.weight, dtype=np.int64)
        state = np.empty(max(upto, 1), dtype=np.int64)
        value = np.empty(max(upto, 1), dtype=np.int64)
        state[0], value[0] = self.start, 0
        lo = 1
        while lo < upto:
            hi = min(lo * self.base, upto)
            n = np.arange(lo, hi)
            q, d = np.divmod(n, self.base)
            state[lo:hi] = delta[state[q], d]
            value[lo:hi] = value[q] + weight[state[q], d]
            lo = hi
        return state[:upto], value[:upto]

    def max_abs_weight(self) -> Third:
        return Third(max(abs(w) for row in self.weight for w in row))

    def reachable(self) -> set[int]:
        seen = {self.start}
        todo = [self.start]
        while todo:
            s = todo.pop()
            for t in self.delta[s]:
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return seen

    # -- text format --------------------------------------------------------

    def dumps(self) -> str:
        lines = [f"base {self.base}", f"start {self.states[self.start]}"]
        if self.pad_multiple != 1:
            lines.append(f"pad {self.pad_multiple}")
        for s, name in enumerate(self.states):
            for d in range(self.base):
                lines.append(f"{name} {d} {self.states[self.delta[s][d]]} {self.weight[s][d]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "WeightedTransducer":
        base = start = None
        pad = 1
        edges = []
        order: dict[str, int] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            try:
                if parts[0] == "base" and len(parts) == 2:
                    base = int(parts[1])
                elif parts[0] == "start" and len(parts) == 2:
                    start = parts[1]
                elif parts[0] == "pad" and len(parts) == 2:
                    pad = int(parts[1])
                elif len(parts) == 4:
                    edges.append((parts[0], int(parts[1]), parts[2], int(parts[3])))
                    order.setdefault(parts[0], len(order))
                else:
                    raise ValueError
            except ValueError:
                raise TransducerError(f"line {lineno}: cannot parse {raw!r}") from None
        if base is None or start is None:
            raise TransducerError("missing 'base' or 'start' line")
        for _, _, to, _ in edges:
            if to not in order:
                raise TransducerError(f"state {to!r} has no outgoing edges")
        if start not in order:
            raise TransducerError(f"start state {start!r} has no outgoing edges")
        states = tuple(order)
        n = len(states)
        delta = [[None] * base for _ in range(n)]
        weight = [[None] * base for _ in range(n)]
        for frm, d, to, w in edges:
            s = order[frm]
            if not 0 <= d < base:
                raise TransducerError(f"digit {d} outside base {base}")
            if delta[s][d] is not None:
                raise TransducerError(f"two edges for ({frm}, {d})")
            delta[s][d] = order[to]
            weight[s][d] = w
        for s in range(n):
            if None in delta[s]:
                raise TransducerError(f"state {states[s]} lacks some digit")
        return cls(base, states, order[start], tuple(map(tuple, delta)),
                   tuple(map(tuple, weight)), pad)


# -- the degree transducer --------------------------------------------------

# nonzero degree contributions, keyed by (state, digit)
_T1_WEIGHTS = {(B_L, 0): 1, (B_L, 1): 1, (B_L, 2): 1, (BH_L, 0): 1, (C_L, 2): -1}


@lru_cache(maxsize=1)
def hexagon_T1() -> WeightedTransducer:
    """Base-4 transducer whose weight sum at j is deg(j) and whose final state is A⁺_j.

    Transitions follow the φ⁺ images: from letter x, digit l leads to the
    l-th letter of φ⁺(x).
    """
    images = catalog.PHIPLUS.images
    delta = tuple(tuple(images[x][d] for d in range(4)) for x in range(K_SIZE))
    weight = tuple(tuple(3 * _T1_WEIGHTS.get((x, d), 0) for d in range(4))
                   for x in range(K_SIZE))
    t = WeightedTransducer(4, ASCII_NAMES, A_, delta, weight)
    if not t.zero_loop_ok():
        raise TransducerError("degree transducer lacks the zero loop at start")
    return t


@dataclass(frozen=True)
class T2Matrices:
    """3x-scaled 7x7 matrices indexed [digit][row i][column j], 0-based K order."""

    A: np.ndarray
    W: np.ndarray
    Z: np.ndarray


Q_EVEN = (0, 2, 1, 0)      # q_l, for columns a, b̂←, b̂→
Q_ODD = (2, 1, 0, 2)       # q̃_l, for columns b←, b→, c←, c→
R_SHIFT = (0, 1, 0, 1, 0, -1, 0)


@lru_cache(maxsize=1)
def t2_matrices() -> T2Matrices:
    t1 = hexagon_T1()
    A = np.zeros((4, K_SIZE, K_SIZE), dtype=np.int64)
    W = np.zeros_like(A)
    Z = np.zeros_like(A)
    for j in range(K_SIZE):
        for ell in range(4):
            i = t1.delta[j][ell]
            A[ell, i, j] = 1
            # T1 weights are 3x degrees; dividing by three gives 3x (degree / 3)
            W[ell, i, j] = t1.weight[j][ell] // 3
    for ell in range(4):
        for j in range(K_SIZE):
            col = A[ell, :, j]
            if col.sum() != 1 or col.max() != 1:
                raise TransducerError(f"column {j + 1} of A^({ell}) is not a unit vector")
            i = int(np.argmax(col))
            q = Q_EVEN if j < 3 else Q_ODD
            Z[ell, i, j] = q[ell] + R_SHIFT[j]
    return T2Matrices(A, W, Z)


def t2_state(i: int, ell: int, j: int) -> int:
    """Index of state (i, ell, j), with i, j given 1-based as in K order."""
    return ((i - 1) * 4 + ell) * K_SIZE + (j - 1)


@lru_cache(maxsize=1)
def build_T2() -> WeightedTransducer:
    m = t2_matrices()
    t1 = hexagon_T1()
    names = []
    delta = []
    weight = []
    for i in range(1, K_SIZE + 1):
        for lp in range(4):
            for k in range(1, K_SIZE + 1):
                names.append(f"{i},{lp},{k}")
                # state (j, l', k) with j = i here
                j = i
                row_d, row_w = [], []
                for ell in range(4):
                    nxt = t1.delta[j - 1][ell] + 1
                    row_d.append(t2_state(nxt, ell, j))
                    row_w.append(int(m.Z[ell, nxt - 1, j - 1] - m.Z[lp, j - 1, k - 1]
                                     + m.W[lp, j - 1, k - 1]))
                delta.append(tuple(row_d))
                weight.append(tuple(row_w))
    t = WeightedTransducer(4, tuple(names), t2_state(1, 0, 1), tuple(delta), tuple(weight))
    if not t.zero_loop_ok():
        raise TransducerError("discrepancy transducer lacks the zero loop at start")
    return t


def base2_reduction(t: WeightedTransducer) -> WeightedTransducer:
    """Equivalent base-2 transducer: each state reads its base-4 digit as two bits.

    The first bit moves to one of two auxiliary states with weight 0; the
    second bit completes the original edge.  Inputs are padded to an even
    number of bits so the bit pairs line up with base-4 digits.
    """
    if t.base != 4:
        raise TransducerError("base-2 reduction expects a base-4 transducer")
    n = len(t.states)
    names = list(t.states) + [f"{s}/{b}" for s in t.states for b in (0, 1)]
    delta = [None] * (3 * n)
    weight = [None] * (3 * n)
    for s in range(n):
        delta[s] = (n + 2 * s, n + 2 * s + 1)
        weight[s] = (0, 0)
        for b in (0, 1):
            aux = n + 2 * s + b
            delta[aux] = (t.delta[s][2 * b], t.delta[s][2 * b + 1])
            weight[aux] = (t.weight[s][2 * b], t.weight[s][2 * b + 1])
    return WeightedTransducer(2, tuple(names), t.start, tuple(delta), tuple(weight),
                              pad_multiple=2 * t.pad_multiple)


# -- three routes to D_N ---------------------------------------------------------

def discrepancy_brute(N: int) -> Third:
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N == 0:
        return ZERO
    t = catalog.thue_morse(budget=max(N + 1, 1 << 22)).raw_prefix(N + 1)
    return Third(3 * t.count(b"\x00\x01", 0, N + 1) - N)


def discrepancy_brute_all(upto: int) -> np.ndarray:
    """3 D_N for all N < upto, from one prefix of t."""
    t = np.frombuffer(catalog.thue_morse(budget=max(upto + 1, 1 << 22)).raw_prefix(upto + 1),
                      dtype=np.uint8)
    hits = (t[:-1] == 0) & (t[1:] == 1)
    count = np.concatenate(([0], np.cumsum(hits)))[:upto]
    return 3 * count - np.arange(upto)


def discrepancy_from_degree(letter: int, deg: int, r: int) -> Third:
    """D_{4j+r} given A⁺_j and deg(j)."""
    if letter in (A_, BH_L, BH_R):
        return Third(deg + R_SHIFT[letter] + Q_EVEN[r])
    return Third(deg + R_SHIFT[letter] + Q_ODD[r])


def discrepancy_by_degree(N: int) -> Third:
    if N < 0:
        raise ValueError("N must be nonnegative")
    j, r = divmod(N, 4)
    letter, deg3 = hexagon_T1().walk(j)
    return discrepancy_from_degree(letter, deg3.num3 // 3, r)


def discrepancy_t2(N: int) -> Third:
    return build_T2().run(N)


@lru_cache(maxsize=1)
def _t2_base2() -> WeightedTransducer:
    return base2_reduction(build_T2())


def discrepancy_t2_base2(N: int) -> Third:
    return _t2_base2().run(N)


def log_bound_constant() -> Fraction:
    """Largest absolute edge weight of T2, as a plain value."""
    return build_T2().max_abs_weight().as_fraction()


def log_bound_holds(three_d: np.ndarray, C: Fraction) -> np.ndarray:
    """Per-N check of ``|3 D_N| <= 3 C log2 N`` for N >= 2 (index 0, 1 reported True)."""
    n = np.arange(len(three_d))
    bound = np.zeros(len(three_d))
    bound[2:] = 3 * float(C) * np.log2(n[2:])
    ok = np.abs(three_d) <= bound + 1e-9
    ok[:2] = True
    return ok


def explicit_family(k: int) -> tuple[int, int]:
    """Indices N with D_N = -k/3 and D_N = k/3 respectively."""
    return 8 * (16 ** k - 1) // 3, 80 * (64 ** k - 1) // 63


def shallit_index(k: int) -> int:
    """((10)^{2k})_2 = (2^{2k})_4, where D = -k/3.

    The longer word ((10)^{4k})_2 gives D = -2k/3 instead.
    """
    return int("10" * (2 * k), 2)


def log2_digits(n: int) -> float:
    return math.log2(n) if n > 0 else 0.0
