"""Cross-check suite behind ``tmgaps verify``.

Each check returns ``(ok, detail)``.  They recompute everything from
scratch, so running them after a change exercises every module end to end.
"""

from __future__ import annotations

import time
from typing import Callable

import numpy as np

from . import catalog, gaps, kernel, matching, residue, transducer
from .words import Word, gaps_by_scan, occurrences

Check = Callable[[], tuple[bool, str]]
SUITES: dict[str, dict[str, Check]] = {}


def register(suite: str, name: str):
    def deco(fn):
        SUITES.setdefault(suite, {})[name] = fn
        return fn
    return deco


TM32 = "01101001100101101001011001101001"
B21 = "334233243342433233423"


@register("words", "tm-prefix-and-B")
def _tm_prefix():
    t = catalog.thue_morse()
    g = gaps_by_scan(t, Word.parse(catalog.BIN, "01"), 21)
    ok = str(t.prefix(32)) == TM32 and "".join(map(str, g)) == B21
    return ok, "t[:32] and first 21 gaps of 01"


@register("catalog", "identities-2^16")
def _identities():
    n = 1 << 16
    t = catalog.thue_morse()
    tm = t.prefix(n)
    ok_f = catalog.reconstruct_tm_via(catalog.F, catalog.ternary_A(), n) == tm
    occ01 = occurrences(t, Word.parse(catalog.BIN, "01"), 4 * n)
    occ10 = occurrences(t, Word.parse(catalog.BIN, "10"), 4 * n)
    b_scan = np.diff(occ01)[:n].tolist()
    c_scan = np.diff(occ10)[:n].tolist()
    ok_p = catalog.gap_values(catalog.gaps_B().prefix(n)) == b_scan
    ok_pc = catalog.gap_values(catalog.Bcheck_prefix(n)) == c_scan
    ok_pi = catalog.PI.apply_bytes(catalog.berstel_Abar().raw_prefix(n)) == \
        catalog.ternary_A().raw_prefix(n)
    ok_g = catalog.GAMMA.apply_bytes(catalog.aplus().raw_prefix(n)) == \
        catalog.ternary_A().raw_prefix(n)
    return all((ok_f, ok_p, ok_pc, ok_pi, ok_g)), \
        f"f(A)={ok_f} p(Bbar)={ok_p} pcheck(Bbar)={ok_pc} pi(Abar)={ok_pi} gamma(Aplus)={ok_g}"


@register("kernel", "squarefree")
def _squares():
    n = 1 << 12
    a = kernel.first_square(catalog.ternary_A(), n=n)
    bb = kernel.first_square(catalog.bbar(), n=n)
    lens = kernel.square_lengths(catalog.gaps_B(), n=n)
    return a is None and bb is None and lens == {1}, \
        f"A square={a} Bbar square={bb} B square lengths={sorted(lens)}"


@register("matching", "matchings-k<=6")
def _matchings():
    for k in range(1, 7):
        w = matching.closed_prefix(k)
        m = matching.find_matching(w)
        if matching.validate_matching(w, m) is not None:
            return False, f"invalid matching at k={k}"
        rot = matching.gamma(matching.rotate_along_links(w, m))
        if not matching.is_abc_periodic_prefix(rot) or rot != matching.rotation_shortcut(w):
            return False, f"rotation mismatch at k={k}"
    return True, "valid, total, rotates to (abc)^w"


@register("matching", "degrees")
def _degrees():
    expected = [0] * 48
    for j in (10, 34, 40, 41, 42, 43, 46):
        expected[j] = -1
    expected[20] = 1
    n = 4 ** 6
    degs = matching.degrees(n)
    states, vals = transducer.hexagon_T1().run_all(n)
    ok = (degs[:48] == expected and matching.degree(10).value == -1
          and matching.degree(170).value == -2 and (vals // 3 == np.array(degs)).all()
          and bytes(states.astype(np.uint8)) == catalog.aplus().raw_prefix(n))
    return ok, "first 48 degrees, deg(10), deg(170), T1 agreement below 4^6"


THREE_D_48 = [0, 2, 1, 0, 2, 1, 0, 2, 1, 0, -1, 1, 0, 2, 1, 0, 2, 1, 0, 2, 1, 3, 2, 1,
              0, 2, 1, 0, 2, 1, 0, 2, 1, 0, -1, 1, 0, 2, 1, 0, -1, 1, 0, -1, 1, 0, -1, 1]


@register("transducer", "discrepancy")
def _discrepancy():
    n = 1 << 14
    brute = transducer.discrepancy_brute_all(n)
    _, t2 = transducer.build_T2().run_all(n)
    deg = np.array([transducer.discrepancy_by_degree(N).num3 for N in range(n)])
    b2 = np.array([transducer.discrepancy_t2_base2(N).num3 for N in range(n)])
    ok = (brute == t2).all() and (brute == deg).all() and (brute == b2).all()
    ok &= transducer.discrepancy_t2(41) == transducer.Third(1)
    ok &= brute[:48].tolist() == THREE_D_48
    for k in range(1, 6):
        lo, hi = transducer.explicit_family(k)
        ok &= transducer.discrepancy_t2(lo).num3 == -k == transducer.discrepancy_by_degree(lo).num3
        ok &= transducer.discrepancy_t2(hi).num3 == k == transducer.discrepancy_by_degree(hi).num3
    return bool(ok), "brute = degree = T2 = base-2 T2 below 2^14; explicit families k<=5"


@register("gaps", "classification")
def _gaps():
    g1 = gaps.classify("00110")
    ok = (g1.k, g1.members, g1.sigma0, g1.sigma1) == (2, ("11", "00"), 1, 3)
    t = catalog.thue_morse()
    ok &= occurrences(t, Word.parse(catalog.BIN, "010"), 30) == [3, 10, 15, 18, 27]
    pre = str(t.prefix(1 << 12))
    for length in range(2, 13):
        for w in sorted({pre[i:i + length] for i in range(len(pre) - length)}):
            if gaps.gap_stream(w, 256) != gaps_by_scan(t, Word.parse(catalog.BIN, w), 256):
                return False, f"morphic and scanned gaps differ for {w}"
    return bool(ok), "00110 classified; morphic = scan for factors of length 2..12"


@register("kernel", "kernel-evidence")
def _kernel():
    ra = kernel.explore_kernel(catalog.ternary_A(), 2, 8, 1 << 10)
    rb = kernel.explore_kernel(catalog.berstel_Abar(), 2, 8, 1 << 10)
    wit = kernel.all_pairs_witnessed(catalog.gaps_B(), 16, 10 ** 5)
    ok = ra.closed and rb.closed and None not in wit.values()
    return ok, f"A kernel {ra.size} closed={ra.closed}; Abar {rb.size} closed={rb.closed}; " \
               f"B witnesses max n={max(v for v in wit.values() if v is not None)}"


@register("residue", "residue-numerics")
def _residue():
    bb = catalog.bbar()
    for m in range(1, 13):
        for a in range(m):
            spec = residue.hit_residue_class(0, m, a)
            if spec is None or residue.position_value(spec) % m != a \
                    or not residue.verify_occurrence(spec, bb):
                return False, f"residue class {a} mod {m} not hit"
    g = [abs(residue.G_product(1, 3, 0, nu)) for nu in range(41)]
    ok = g[40] < 1e-3 and all(y <= x + 1e-9 for x, y in zip(g, g[1:]))
    rng = np.random.default_rng(20240601)
    for q in (2, 3, 4):
        r = np.sqrt(rng.random((10 ** 5, q - 1)))
        z = r * np.exp(2j * np.pi * rng.random((10 ** 5, q - 1)))
        ok &= residue.delange_margins(z).min() >= -1e-12
    ok &= all(len(residue.enumerate_W(0, eta)) == 3 ** eta for eta in range(9))
    return bool(ok), "classes mod m<=12 hit; |G(1/3,0,40)|; Delange; #W_0"


@register("transducer", "log-bound")
def _log_bound():
    three_d = transducer.discrepancy_brute_all(1 << 16)
    C = transducer.log_bound_constant()
    ok = transducer.log_bound_holds(three_d, C).all()
    peak = int(np.abs(three_d).max())
    return bool(ok and peak >= 4), f"C={C}, max |3D_N| below 2^16 = {peak}"


def run_suite(name: str = "all", out=None) -> bool:
    import sys
    out = out or sys.stdout
    if name == "all":
        selected = [(s, n, f) for s, checks in SUITES.items() for n, f in checks.items()]
    elif name in SUITES:
        selected = [(name, n, f) for n, f in SUITES[name].items()]
    else:
        raise KeyError(name)
    all_ok = True
    for suite, cname, fn in selected:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # report, keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        all_ok &= ok
        print(f"{'PASS' if ok else 'FAIL'}  {suite}/{cname}  ({time.perf_counter() - t0:.1f}s)  {detail}",
              file=out)
    return all_ok
