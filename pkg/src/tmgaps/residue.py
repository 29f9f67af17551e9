"""Positions of ψ^{4μ}(a) in Bbar, residue classes, and missing-digit exponential sums.

Write σ = ψ⁴.  Inside σ^{ν+1}(a) the block σ^ν(a) starts at four offsets
``A(ν, 0..3)``; nesting these gives positions ``N_ε`` of σ^μ(a) in Bbar for
every digit string ε over {0,1,2,3}.  Digit 3 steers ``N_ε`` modulo powers
of two, digits {0,1,2} contribute ``4 ε 16^r`` and steer the odd part.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import catalog
from .words import MorphicStream

DEFAULT_TOL = 1e-9


def psi4_lengths(k: int) -> tuple[int, int, int]:
    """(|σ^k(a)|, |σ^k(b)|, |σ^k(c)|); |σ^k(ā)| equals the first."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    p = 16 ** k
    return p, (4 * p - 1) // 3, (2 * p + 1) // 3


def psi4_literal_lengths(k: int) -> tuple[int, int, int, int]:
    """Lengths of σ^k(x) for x = a, ā, b, c by expanding the words."""
    m = catalog.PSI.power(4 * k)
    return tuple(len(img) for img in m.images)


def count_matrix() -> np.ndarray:
    """Row x, column y: number of letters y in σ(x), alphabet order a, ā, b, c."""
    m = catalog.PSI.power(4)
    return np.array([[img.count(y) for y in range(4)] for img in m.images], dtype=object)


def letter_counts_matrix_power(k: int) -> np.ndarray:
    """Closed form of ``count_matrix() ** k`` for k >= 1."""
    if k < 1:
        raise ValueError("the closed form holds for k >= 1")
    p = 16 ** k
    quarter = p // 4
    b_lo, b_hi = (p - 1) // 3, (p + 2) // 3
    c_hi, c_lo = (p + 2) // 6, (p - 4) // 6
    return np.array([
        [quarter] * 4,
        [quarter] * 4,
        [b_lo, b_lo, b_hi, b_lo],
        [c_hi, c_hi, c_lo, c_hi],
    ], dtype=object)


def matrix_power(m: np.ndarray, k: int) -> np.ndarray:
    out = np.identity(len(m), dtype=object)
    for _ in range(k):
        out = out.dot(m)
    return out


def step(nu: int, eps: int) -> int:
    """Offset A(ν, ε) of σ^ν(a) inside σ^{ν+1}(a)."""
    p = 16 ** nu
    if eps == 0:
        return 0
    if eps == 1:
        return 4 * p
    if eps == 2:
        return 8 * p
    if eps == 3:
        return 12 * p + (4 * p - 1) // 3
    raise ValueError("digits lie in {0,1,2,3}")


@dataclass(frozen=True)
class PositionSpec:
    mu: int
    digits: tuple[int, ...]  # ε_μ, ε_{μ+1}, ...
    phases: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.mu < 0:
            raise ValueError("mu must be nonnegative")
        if any(d not in (0, 1, 2, 3) for d in self.digits):
            raise ValueError("digits lie in {0,1,2,3}")

    @property
    def nu(self) -> int:
        return self.mu + len(self.digits) - 1


def position_value(spec: PositionSpec) -> int:
    return sum(step(spec.mu + r, e) for r, e in enumerate(spec.digits))


def verify_occurrence(spec: PositionSpec, stream: MorphicStream | None = None) -> bool:
    """σ^μ(a) occurs in Bbar at N_ε; far positions are read by substitution descent."""
    s = stream or catalog.bbar()
    block = 16 ** spec.mu
    target = s.raw_prefix(block)
    return s.raw_factor_at(position_value(spec), block) == target


# -- residue classes --------------------------------------------------------------

def _split_two(m: int) -> tuple[int, int]:
    k = 0
    while m % 2 == 0:
        m //= 2
        k += 1
    return k, m


def hit_residue_class(mu: int, m: int, a: int, bound: int | None = None) -> PositionSpec | None:
    """A digit string with ``N_ε ≡ a (mod m)``, or None when the bound is exhausted.

    Phase 1 repeats digit 3 until the partial sum is right modulo 2^k and
    later digits (all multiples of 4·16^λ) can no longer disturb it.  Phase
    2 picks digits from {0,1,2} by a shortest-path search over residues
    modulo the odd part d.  If both fail within ``bound`` (largest allowed
    ν), short digit strings are tried exhaustively.
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    if bound is None:
        bound = mu + m + 16
    a %= m
    if m == 1:
        return PositionSpec(mu, (0,), ("phase1",))
    k, d = _split_two(m)
    two_k = 1 << k

    spec = _two_phase(mu, a, two_k, d, bound)
    if spec is not None:
        return spec
    return _brute(mu, m, a, bound)


def _two_phase(mu, a, two_k, d, bound):
    max_len = bound - mu + 1
    kappa = 0
    n3 = 0
    while n3 <= max_len:
        lam = mu + n3
        if kappa % two_k == a % two_k and (4 * 16 ** lam) % two_k == 0:
            tail = _phase_two(lam, (a - kappa) % d, d, max_len - n3)
            if tail is not None:
                digits = (3,) * n3 + tail
                if not digits:
                    digits = (0,)
                phases = ("phase1",) * n3 + ("phase2",) * (len(digits) - n3)
                spec = PositionSpec(mu, digits, phases)
                if position_value(spec) % (two_k * d) == a:
                    return spec
        kappa += step(lam, 3)
        n3 += 1
    return None


def _phase_two(lam: int, target: int, d: int, max_digits: int):
    """Shortest ε_λ.. over {0,1,2} with Σ 4 ε_r 16^r ≡ target (mod d)."""
    if target % d == 0:
        return ()
    # breadth-first over number of digits; parents record the path
    layers = []
    frontier = {0}
    for i in range(max_digits):
        unit = 4 * pow(16, lam + i, d) % d
        nxt = {}
        for res in frontier:
            for e in (0, 1, 2):
                r2 = (res + e * unit) % d
                if r2 not in nxt:
                    nxt[r2] = (res, e)
        layers.append(nxt)
        frontier = set(nxt)
        if target in frontier:
            digits = []
            cur = target
            for j in range(i, -1, -1):
                prev, e = layers[j][cur]
                digits.append(e)
                cur = prev
            return tuple(reversed(digits))
    return None


def _brute(mu, m, a, bound):
    for length in range(1, min(bound - mu + 1, 12) + 1):
        for digits in product(range(4), repeat=length):
            spec = PositionSpec(mu, digits, ("brute",) * length)
            if position_value(spec) % m == a:
                return spec
    return None


def all_three_partial_sums(mu: int, count: int) -> list[int]:
    """α_0 = 0, α_ℓ = N for ε = (3,)*ℓ starting at μ."""
    out = [0]
    for ell in range(count):
        out.append(out[-1] + step(mu + ell, 3))
    return out


# -- missing digits and exponential sums ---------------------------------------------

def in_W(n: int, lam: int) -> bool:
    """n is a multiple of 16^λ whose base-16 digits all lie in {0,4,8}."""
    if n < 0 or n % 16 ** lam:
        return False
    while n:
        n, dig = divmod(n, 16)
        if dig not in (0, 4, 8):
            return False
    return True


def enumerate_W(lam: int, eta: int) -> np.ndarray:
    """W_λ ∩ [0, 16^η), ascending (int64, so η <= 15)."""
    if eta < lam:
        return np.zeros(1, dtype=np.int64)
    vals = np.zeros(1, dtype=np.int64)
    for r in range(lam, eta):
        vals = (vals[None, :] + np.array([0, 4, 8], dtype=np.int64)[:, None] * 16 ** r).ravel()
    return np.sort(vals)


def e(x: float) -> complex:
    return cmath.exp(2j * math.pi * x)


def U_value(alpha: float) -> complex:
    return (1 + e(4 * alpha) + e(8 * alpha)) / 3


def G_product(ell: int, d: int, lam: int, nu: int) -> complex:
    """∏_{λ<=r<ν} U(16^r ℓ/d), with 16^r ℓ reduced mod d to keep angles exact."""
    out = 1 + 0j
    for r in range(lam, nu):
        out *= U_value((pow(16, r, d) * ell % d) / d)
    return out


def G_by_enumeration(ell: int, d: int, lam: int, nu: int) -> complex:
    """Average of e(jℓ/d) over j in W_λ ∩ [0, 16^ν)."""
    w = enumerate_W(lam, nu)
    phases = (w % d) * ell % d
    return complex(np.exp(2j * np.pi * phases / d).mean())


def residue_count_deviation(a: int, d: int, lam: int, nu: int) -> float:
    """|#{j in W_λ ∩ [0,16^ν) : j ≡ a mod d} / 3^{ν-λ} - 1/d|."""
    w = enumerate_W(lam, nu)
    return abs(np.count_nonzero(w % d == a % d) / len(w) - 1 / d)


def delange_bound_check(zs, tol: float = 1e-12) -> bool:
    """|(1 + Σ z_j)/q| <= 1 - max(1 - Re z_j)/(2q), with q = len(zs) + 1."""
    zs = [complex(z) for z in zs]
    q = len(zs) + 1
    lhs = abs((1 + sum(zs)) / q)
    rhs = 1 - max((1 - z.real for z in zs), default=0.0) / (2 * q)
    return lhs <= rhs + tol


def delange_margins(zs: np.ndarray) -> np.ndarray:
    """rhs - lhs for each row of ``zs`` (shape samples x (q-1))."""
    q = zs.shape[1] + 1
    lhs = np.abs((1 + zs.sum(axis=1)) / q)
    rhs = 1 - (1 - zs.real).max(axis=1) / (2 * q)
    return rhs - lhs
