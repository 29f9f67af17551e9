"""Acceptance criteria, one test each, with their time limits.

Every test records a PASS/FAIL line (shown in the terminal summary and
printed to stdout) whether or not its assertions hold.
"""

from __future__ import annotations

import time
from contextlib import contextmanager

import numpy as np

from conftest import ACCEPTANCE_LINES
from oracles import diffs, discrepancy3, occurrences_naive, tm_string
from tmgaps import catalog, gaps, kernel, matching, residue, transducer
from tmgaps.words import Word, gaps_by_scan

TM32 = "01101001100101101001011001101001"
B21 = "334233243342433233423"
DEG48 = [0] * 48
for _j in (10, 34, 40, 41, 42, 43, 46):
    DEG48[_j] = -1
DEG48[20] = 1
THREE_D_48 = [0, 2, 1, 0, 2, 1, 0, 2, 1, 0, -1, 1, 0, 2, 1, 0, 2, 1, 0, 2, 1, 3, 2, 1,
              0, 2, 1, 0, 2, 1, 0, 2, 1, 0, -1, 1, 0, 2, 1, 0, -1, 1, 0, -1, 1, 0, -1, 1]


@contextmanager
def criterion(name: str, limit: float):
    t0 = time.perf_counter()
    status = "FAIL"
    detail = ""
    try:
        yield
        elapsed = time.perf_counter() - t0
        assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
        status = "PASS"
    except AssertionError as exc:
        detail = f"  -- {str(exc).splitlines()[0] if str(exc) else 'assertion failed'}"
        raise
    finally:
        line = f"{status}  {name}  ({time.perf_counter() - t0:.2f}s / {limit:g}s){detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)


def test_c01_prefix_and_B():
    with criterion("C1 TM prefix 32 and first 21 gaps of B", 1):
        t = catalog.thue_morse()
        assert str(t.prefix(32)) == TM32
        g = gaps_by_scan(t, Word.parse(catalog.BIN, "01"), 21)
        assert "".join(map(str, g)) == B21
        assert str(catalog.gaps_B().prefix(21)) == B21


def test_c02_identities():
    with criterion("C2 identity suite on 2^16 prefixes", 10):
        n = 1 << 16
        text = tm_string(4 * n)
        t = catalog.thue_morse()
        assert str(t.prefix(n)) == text[:n]
        assert catalog.reconstruct_tm_via(catalog.F, catalog.ternary_A(), n) == t.prefix(n)
        arr = np.frombuffer(text.encode(), np.uint8)
        occ01 = np.flatnonzero((arr[:-1] == ord("0")) & (arr[1:] == ord("1")))
        occ10 = np.flatnonzero((arr[:-1] == ord("1")) & (arr[1:] == ord("0")))
        assert catalog.gap_values(catalog.gaps_B().prefix(n)) == np.diff(occ01)[:n].tolist()
        assert catalog.gap_values(catalog.Bcheck_prefix(n)) == np.diff(occ10)[:n].tolist()
        assert catalog.PI.apply_bytes(catalog.berstel_Abar().raw_prefix(n)) == \
            catalog.ternary_A().raw_prefix(n)
        assert catalog.GAMMA.apply_bytes(catalog.aplus().raw_prefix(n)) == \
            catalog.ternary_A().raw_prefix(n)


def test_c03_squarefree():
    with criterion("C3 squarefreeness of A, Bbar; B squares only |C|=1", 30):
        n = 1 << 12
        assert kernel.first_square(catalog.ternary_A(), max_len=512, n=n) is None
        assert kernel.first_square(catalog.bbar(), max_len=512, n=n) is None
        assert kernel.square_lengths(catalog.gaps_B(), max_len=512, n=n) == {1}


def test_c04_matching():
    with criterion("C4 matching suite for k <= 6", 10):
        for k in range(1, 7):
            w = matching.closed_prefix(k)
            m = matching.find_matching(w)
            assert matching.validate_matching(w, m) is None, f"k={k}"
            covered = {x for p in m for x in p}
            assert covered == {i for i, x in enumerate(w.letters) if x != matching.A_}
            rot = matching.gamma(matching.rotate_along_links(w, m))
            assert matching.is_abc_periodic_prefix(rot), f"k={k}"
            assert matching.rotation_shortcut(w) == rot, f"k={k}"


def test_c05_degrees():
    with criterion("C5 degree regression and T1 agreement below 4^6", 30):
        n = 4 ** 6
        degs = matching.degrees(n)
        assert degs[:48] == DEG48
        assert matching.degree(10).value == -1
        assert matching.degree(170).value == -2
        _, vals = transducer.hexagon_T1().run_all(n)
        assert (vals == 3 * np.array(degs)).all()


def test_c06_discrepancy():
    with criterion("C6 discrepancy: brute = degree = T2 = base-2 T2", 60):
        n = 1 << 14
        brute = transducer.discrepancy_brute_all(n)
        _, t2 = transducer.build_T2().run_all(n)
        assert (brute == t2).all()
        assert all(transducer.discrepancy_by_degree(N).num3 == brute[N] for N in range(n))
        assert all(transducer.discrepancy_t2_base2(N).num3 == brute[N] for N in range(n))
        assert [discrepancy3(N) for N in range(48)] == THREE_D_48 == brute[:48].tolist()
        assert transducer.discrepancy_t2(41) == transducer.Third(1)
        for k in range(1, 6):
            lo, hi = transducer.explicit_family(k)
            assert transducer.discrepancy_t2(lo).num3 == -k == transducer.discrepancy_by_degree(lo).num3
            assert transducer.discrepancy_t2(hi).num3 == k == transducer.discrepancy_by_degree(hi).num3


def test_c07_gap_classification():
    with criterion("C7 gap classification (010, 00110, morphic = scan)", 60):
        text = tm_string(1 << 14)
        assert occurrences_naive(text[:30], "010") == [3, 10, 15, 18, 27]
        g2 = gaps.classify("00110")
        assert (g2.k, g2.members, g2.sigma0, g2.sigma1) == (2, ("11", "00"), 1, 3)
        for length in range(2, 13):
            for w in sorted({text[i:i + length] for i in range(4096)}):
                assert gaps.gap_stream(w, 256) == diffs(occurrences_naive(text, w))[:256], w
        g1 = gaps.classify("010")
        assert (g1.k, g1.members, g1.sigma0, g1.sigma1) == (2, ("01", "10"), 3, 2), \
            f"010 classified as k={g1.k} members={g1.members} s0={g1.sigma0} s1={g1.sigma1}"


def test_c08_kernel_evidence():
    with criterion("C8 kernel evidence for A, Abar, B", 120):
        ra = kernel.explore_kernel(catalog.ternary_A(), 2, 8, 1 << 10)
        rb = kernel.explore_kernel(catalog.berstel_Abar(), 2, 8, 1 << 10)
        assert ra.closed and rb.closed
        wit = kernel.all_pairs_witnessed(catalog.gaps_B(), 16, 10 ** 5)
        assert len(wit) == sum(m * (m - 1) // 2 for m in range(2, 17))
        assert None not in wit.values()


def test_c09_residue():
    with criterion("C9 residue classes, G decay, Delange, #W", 120):
        bb = catalog.bbar()
        for m in range(1, 13):
            for a in range(m):
                spec = residue.hit_residue_class(0, m, a)
                assert spec is not None, f"{a} mod {m}"
                assert residue.position_value(spec) % m == a
                assert residue.verify_occurrence(spec, bb), f"{a} mod {m}"
        g = [abs(residue.G_product(1, 3, 0, nu)) for nu in range(41)]
        assert g[40] < 1e-3
        assert all(y <= x + 1e-9 for x, y in zip(g, g[1:]))
        rng = np.random.default_rng(20240601)
        for q in (2, 3, 4, 8):
            z = np.sqrt(rng.random((10 ** 5, q - 1))) * \
                np.exp(2j * np.pi * rng.random((10 ** 5, q - 1)))
            assert residue.delange_margins(z).min() >= -1e-12
        for eta in range(9):
            assert len(residue.enumerate_W(0, eta)) == 3 ** eta


def test_c10_log_bound():
    with criterion("C10 log bound below 2^16", 10):
        three_d = transducer.discrepancy_brute_all(1 << 16)
        C = transducer.log_bound_constant()
        assert C == 1
        assert transducer.log_bound_holds(three_d, C).all()
        peak = int(np.abs(three_d).max())
        print(f"empirical max |3 D_N| for N < 2^16: {peak}")
        assert peak >= 4
        lo3, _ = transducer.explicit_family(3)
        assert abs(three_d[lo3]) >= 3
