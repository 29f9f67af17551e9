"""Command-line interface.

Exit codes: 0 success, 1 failed verification, 2 usage error, 3 domain error
(bad factor, malformed input, ...), 4 stream budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import catalog, checks, gaps, kernel, matching, residue, transducer
from .errors import BudgetExceeded, TmGapsError
from .words import BUDGET_ENV, Word, gaps_by_scan

EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN, EXIT_BUDGET = 1, 2, 3, 4

K_HELP = """ASCII names for the decorated alphabet (arrow = connector direction):
  a    a
  b^<  b̂←     b^>  b̂→
  bh<  b←     bh>  b→
  c<   c←     c>   c→"""

SEQUENCES = ("tm", "A", "Abar", "Aplus", "B", "Bbar", "Bcheck")


class UsageError(Exception):
    pass


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- generate ------------------------------------------------------------------------

def _sequence_tokens(name: str, n: int) -> list[str]:
    if name == "tm":
        return catalog.thue_morse().prefix(n).names()
    if name == "A":
        return catalog.ternary_A().prefix(n).names()
    if name == "Abar":
        return catalog.berstel_Abar().prefix(n).names()
    if name == "Aplus":
        return [matching.ASCII_NAMES[x] for x in catalog.aplus().raw_prefix(n)]
    if name == "B":
        return [str(v) for v in catalog.gap_values(catalog.gaps_B().prefix(n))]
    if name == "Bbar":
        return catalog.bbar().prefix(n).names()
    if name == "Bcheck":
        return [str(v) for v in catalog.gap_values(catalog.Bcheck_prefix(n))]
    raise UsageError(f"unknown sequence {name!r}; choose from {', '.join(SEQUENCES)}")


def cmd_generate(args) -> int:
    if args.length < 0:
        raise UsageError("length must be nonnegative")
    toks = _sequence_tokens(args.sequence, args.length)
    if args.format == "csv":
        text = _csv_text(("i", "letter"), enumerate(toks))
    elif args.format == "json":
        text = json.dumps({"sequence": args.sequence, "length": args.length, "letters": toks},
                          ensure_ascii=False) + "\n"
    else:
        sep = " " if args.sequence == "Aplus" else ""
        text = sep.join(toks) + "\n"
    _emit(args, text)
    return 0


# -- gaps ------------------------------------------------------------------------------

def cmd_gaps(args) -> int:
    w = args.factor
    if not w or any(ch not in "01" for ch in w):
        raise TmGapsError(f"factor {w!r} is not a nonempty word over {{0,1}}")
    lines = []
    if args.method == "scan":
        if not gaps.is_factor(w):
            raise TmGapsError(f"{w} does not occur in t within the scan budget")
        values = gaps_by_scan(catalog.thue_morse(), Word.parse(catalog.BIN, w), args.count)
    else:
        gc = gaps.classify(w)
        lines.append(gc.header())
        values = gaps.gap_stream(w, args.count)
    if args.format == "csv":
        text = _csv_text(("k", "gap"), enumerate(values))
    elif args.format == "json":
        text = json.dumps({"factor": w, "method": args.method, "header": lines[0] if lines else None,
                           "gaps": values}) + "\n"
    else:
        lines.append(" ".join(map(str, values)))
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return 0


# -- discrepancy ---------------------------------------------------------------------

METHODS = {
    "brute": transducer.discrepancy_brute,
    "degree": transducer.discrepancy_by_degree,
    "t2": transducer.discrepancy_t2,
    "t2base2": transducer.discrepancy_t2_base2,
}


def _parse_range(spec: str) -> tuple[int, int, bool]:
    try:
        if ".." in spec:
            lo, hi = spec.split("..", 1)
            lo, hi = int(lo), int(hi)
            if lo < 0 or hi < lo:
                raise ValueError
            return lo, hi, True
        n = int(spec)
        if n < 0:
            raise ValueError
        return n, n, False
    except ValueError:
        raise UsageError(f"expected N or LO..HI with 0 <= LO <= HI, got {spec!r}") from None


def cmd_discrepancy(args) -> int:
    lo, hi, is_range = _parse_range(args.n)
    fn = METHODS[args.method]
    rows = [(N, fn(N).num3) for N in range(lo, hi + 1)]
    fmt = args.format or ("csv" if is_range else "text")
    if fmt == "csv":
        text = _csv_text(("N", "threeD"), rows)
    elif fmt == "json":
        text = json.dumps([{"N": N, "threeD": v} for N, v in rows]) + "\n"
    else:
        text = "".join(f"{N} {v}\n" for N, v in rows)
    _emit(args, text)
    return 0


# -- matching ------------------------------------------------------------------------

def cmd_matching(args) -> int:
    if not 0 <= args.k <= 10:
        raise UsageError("depth must lie in 0..10")
    w = matching.closed_prefix(args.k)
    if args.action == "degrees":
        degs = matching.degrees(len(w))
        if args.format == "csv":
            text = _csv_text(("j", "deg"), enumerate(degs))
        elif args.format == "json":
            text = json.dumps(degs) + "\n"
        else:
            text = " ".join(map(str, degs)) + "\n"
    else:
        m = matching.find_matching(w)
        if args.action == "links":
            rows = [(i, j, matching.link_direction(w.letters, i, j)) for i, j in m]
            if args.format == "csv":
                text = _csv_text(("i", "j", "dir"), rows)
            elif args.format == "json":
                text = json.dumps([{"i": i, "j": j, "dir": d} for i, j, d in rows]) + "\n"
            else:
                text = "".join(f"{i} {j} {d}\n" for i, j, d in rows)
        else:
            rotated = matching.rotate_along_links(w, m)
            text = matching.render_ascii(rotated) + "\n" + str(matching.gamma(rotated)) + "\n"
    _emit(args, text)
    return 0


# -- kernel ------------------------------------------------------------------------------

def _kernel_source(name: str):
    table = {
        "tm": catalog.thue_morse,
        "A": catalog.ternary_A,
        "Abar": catalog.berstel_Abar,
        "Aplus": catalog.aplus,
        "B": catalog.gaps_B,
        "Bbar": catalog.bbar,
        "Bcheck": lambda: (lambda n: catalog.Bcheck_prefix(n).letters),
    }
    if name not in table:
        raise UsageError(f"unknown sequence {name!r}; choose from {', '.join(SEQUENCES)}")
    return table[name]()


def cmd_kernel(args) -> int:
    if args.base < 2 or args.depth < 0 or args.prefix < 1:
        raise UsageError("need base >= 2, depth >= 0, prefix >= 1")
    rep = kernel.explore_kernel(_kernel_source(args.sequence), args.base, args.depth, args.prefix)
    if args.format == "json":
        text = json.dumps({"sequence": args.sequence, "base": rep.base, "depth": rep.depth,
                           "fingerprint_length": rep.fingerprint_length, "counts": rep.counts,
                           "closed": rep.closed, "closed_at": rep.closed_at}) + "\n"
    elif args.format == "csv":
        text = _csv_text(("depth", "distinct"), enumerate(rep.counts))
    else:
        text = (f"fingerprint_length={rep.fingerprint_length} base={rep.base}\n"
                + "".join(f"depth {j}: {c}\n" for j, c in enumerate(rep.counts))
                + f"closed={str(rep.closed).lower()} closed_at={rep.closed_at}\n")
    _emit(args, text)
    return 0


# -- residue / expsum ------------------------------------------------------------------

def cmd_residue(args) -> int:
    if args.mu < 0 or args.modulus < 1:
        raise UsageError("need mu >= 0 and modulus >= 1")
    spec = residue.hit_residue_class(args.mu, args.modulus, args.residue, args.bound)
    if spec is None:
        raise TmGapsError("no digit string found within the bound")
    n = residue.position_value(spec)
    ok = residue.verify_occurrence(spec)
    if args.format == "json":
        text = json.dumps({"mu": spec.mu, "digits": list(spec.digits), "phases": list(spec.phases),
                           "N": n, "verified": ok}) + "\n"
    else:
        text = (f"mu={spec.mu} digits={''.join(map(str, spec.digits))} "
                f"phases={','.join(spec.phases)}\nN={n} residue={n % args.modulus} "
                f"verified={str(ok).lower()}\n")
    _emit(args, text)
    return 0 if ok else EXIT_VERIFY


def cmd_expsum(args) -> int:
    if args.d < 1 or args.d % 2 == 0 or not 0 < args.ell < args.d:
        raise UsageError("need odd d >= 1 and 0 < ell < d")
    if args.nu_max < args.lam:
        raise UsageError("nu_max must be at least lambda")
    rows = []
    for nu in range(args.lam, args.nu_max + 1):
        g = residue.G_product(args.ell, args.d, args.lam, nu)
        rows.append((nu, f"{abs(g):.12e}"))
    if args.format == "csv":
        text = _csv_text(("nu", "absG"), rows)
    else:
        text = "".join(f"{nu} {v}\n" for nu, v in rows)
    _emit(args, text)
    return 0


# -- transducer ------------------------------------------------------------------------

BUILTIN = {
    "t1": (transducer.hexagon_T1, "deg"),
    "t2": (transducer.build_T2, "D"),
    "t2base2": (lambda: transducer.base2_reduction(transducer.build_T2()), "D"),
}


def _load_transducer(ref: str):
    if ref in BUILTIN:
        make, label = BUILTIN[ref]
        return make(), label
    path = Path(ref)
    if not path.exists():
        raise UsageError(f"no such transducer file or builtin: {ref!r}")
    t = transducer.WeightedTransducer.loads(path.read_text(encoding="utf-8"))
    # a dumped builtin keeps its label
    for make, label in BUILTIN.values():
        if t == make():
            return t, label
    return t, "weight"


def cmd_transducer(args) -> int:
    t, label = _load_transducer(args.file)
    if args.action == "dump":
        _emit(args, t.dumps())
    elif args.action == "reduce":
        _emit(args, transducer.base2_reduction(t).dumps())
    else:
        if args.n is None or args.n < 0:
            raise UsageError("run needs a nonnegative integer n")
        state, value = t.walk(args.n)
        _emit(args, f"{args.label or label}={value} state={t.states[state]}\n")
    return 0


def cmd_verify(args) -> int:
    try:
        ok = checks.run_suite(args.suite)
    except KeyError:
        raise UsageError(f"unknown suite {args.suite!r}; choose all or "
                         f"{', '.join(sorted(checks.SUITES))}") from None
    return 0 if ok else EXIT_VERIFY


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tmgaps",
        description="Thue-Morse gap sequences, matchings on A+, discrepancy transducers.",
        epilog=K_HELP + f"\n\nSet {BUDGET_ENV} to change the default stream budget (letters).",
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "csv", "json"), default="text"):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--out", help="write to this file instead of standard output")

    sp = sub.add_parser("generate", help="print a prefix of a sequence",
                        epilog=K_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sp.add_argument("sequence", help=f"one of {', '.join(SEQUENCES)}")
    sp.add_argument("length", type=int)
    common(sp)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("gaps", help="gaps between occurrences of a factor of t")
    sp.add_argument("factor")
    sp.add_argument("count", type=int)
    sp.add_argument("method", nargs="?", choices=("scan", "morphic"), default="morphic")
    common(sp)
    sp.set_defaults(func=cmd_gaps)

    sp = sub.add_parser("discrepancy", help="3*D_N for N or a range LO..HI")
    sp.add_argument("n", metavar="N|LO..HI")
    sp.add_argument("method", nargs="?", choices=tuple(METHODS), default="t2")
    sp.add_argument("--format", choices=("text", "csv", "json"), default=None,
                    help="default: text for one N, csv for a range")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_discrepancy)

    sp = sub.add_parser("matching", help="links, rotation or degrees for (phi+)^k(a)",
                        epilog=K_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sp.add_argument("k", type=int)
    sp.add_argument("action", choices=("links", "rotate", "degrees"))
    common(sp)
    sp.set_defaults(func=cmd_matching)

    sp = sub.add_parser("kernel", help="k-kernel fingerprint exploration")
    sp.add_argument("sequence")
    sp.add_argument("--base", type=int, default=2)
    sp.add_argument("--depth", type=int, default=8)
    sp.add_argument("--prefix", type=int, default=1024, help="fingerprint length")
    common(sp)
    sp.set_defaults(func=cmd_kernel)

    sp = sub.add_parser("residue", help="position of psi^(4mu)(a) in Bbar within a residue class")
    sp.add_argument("mu", type=int)
    sp.add_argument("modulus", type=int)
    sp.add_argument("residue", type=int)
    sp.add_argument("--bound", type=int, default=None, help="largest allowed nu")
    common(sp, ("text", "json"))
    sp.set_defaults(func=cmd_residue)

    sp = sub.add_parser("expsum", help="|G(ell/d, lambda, nu)| for nu = lambda..nu_max")
    sp.add_argument("d", type=int)
    sp.add_argument("ell", type=int)
    sp.add_argument("lam", type=int, metavar="lambda")
    sp.add_argument("nu_max", type=int)
    common(sp, ("text", "csv"))
    sp.set_defaults(func=cmd_expsum)

    sp = sub.add_parser("transducer", help="dump, run or reduce a weighted transducer")
    sp.add_argument("action", choices=("dump", "run", "reduce"))
    sp.add_argument("file", help="path to a transducer text file, or builtin t1, t2, t2base2")
    sp.add_argument("n", type=int, nargs="?")
    sp.add_argument("--label", help="name printed before the weight sum")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_transducer)

    sp = sub.add_parser("verify", help="run the cross-check suite")
    sp.add_argument("suite", nargs="?", default="all")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tmgaps: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"tmgaps: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (TmGapsError, ValueError) as exc:
        print(f"tmgaps: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
