"""Command line interface: formprime <command> ...

Exit status: 0 on success, 2 for a mathematically invalid argument, 3 when a
request exceeds a resource budget, 64 for a usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import arith
from .classgrp import class_group, group_type
from .equiv import all_classes, build_classes, make_class, same_d_partners, two_lift
from .errors import DomainError, ResourceError
from .genus import genus_basis
from .oracle import density_check, falsify_pair, verify_class
from .qform import parse_form, reduce_gl2, reduce_sl2
from .search import SearchConfig, default_workers, run_search
from .tables import format_primes, golden, hits_tsv, pretty, render_all, write_tables

EXIT_DOMAIN = 2
EXIT_RESOURCE = 3
EXIT_USAGE = 64


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _Usage(message)


def _disc(text: str) -> int:
    """A discriminant; a positive value n is read as -n."""
    try:
        D = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return -abs(D)


def _form(text: str):
    try:
        return parse_form(text)
    except DomainError as e:
        raise argparse.ArgumentTypeError(str(e))


def _emit(text: str, args):
    print(pretty(text) if getattr(args, "pretty", False) else text, end="")


def cmd_reduce(args):
    Q = args.form
    R = reduce_sl2(Q)
    D = Q.discriminant
    d, f = arith.fundamental_decomposition(D)
    print(f"{R}\tGL2 {reduce_gl2(Q)}\tD={D}\td={d}\tf={f}")


def cmd_classgroup(args):
    G = class_group(args.D)
    print(f"D={G.D}\th={G.h}\ttype={group_type(G)}")
    for Q in G:
        print(f"{Q}\torder {G.orders[Q]}")


def cmd_genus(args):
    d, f = arith.fundamental_decomposition(args.D)
    B = genus_basis(d, f)
    print(f"D={args.D}\td={d}\tf={f}\t{B}\tbasis {list(B.canonical_basis)}")


def cmd_lift(args):
    Q = args.form
    L = two_lift(Q)
    print(f"2-lift\t{L}\tD={L.discriminant}" if L else "2-lift\tnone")
    partners = same_d_partners(Q)
    print("same d\t" + (" ".join(f"{P}" for P in partners) if partners else "none"))


def _config(args) -> SearchConfig:
    return SearchConfig(args.bound, args.f_max, args.full_B, args.jobs or default_workers())


def cmd_search(args):
    hits = run_search(_config(args), args.checkpoint)
    text = "d\tf\tD\ttype\n" + hits_tsv(hits)
    if args.out:
        write_tables({"hits.tsv": text}, args.out)
    _emit(text, args)
    fund = sum(1 for H in hits if H.f == 1)
    print(f"# {fund} fundamental, {len(hits) - fund} nonmaximal; complete up to the bound, "
          "one further fundamental discriminant beyond it is not excluded", file=sys.stderr)


def _class_lines(classes) -> str:
    lines = ["class\tQ\t|D|\t|d|\tf\tP\tCl\tE"]
    for i, C in enumerate(classes, 1):
        for m in C.members:
            lines.append(f"{i}\t{m.form}\t{abs(m.D)}\t{abs(m.d)}\t{m.f}\t{C.genus}\t{m.group_type}\t{format_primes(m.exceptional)}")
    return "\n".join(lines) + "\n"


def cmd_pairs(args):
    _emit(_class_lines(all_classes(args.D)), args)


def cmd_tables(args):
    hits = run_search(_config(args), args.checkpoint)
    classes = build_classes(hits)
    files = render_all(hits, classes)
    out = Path(args.out or "tables")
    write_tables(files, out)
    many = [C for C in classes if len(C.delta) >= 2]
    by_delta = {k: sum(1 for C in many if len(C.delta) == k) for k in sorted({len(C.delta) for C in many})}
    fund = sum(1 for H in hits if H.f == 1)
    print(f"orders\t{fund} fundamental\t{len(hits) - fund} nonmaximal")
    print(f"classes\t{len(many)} with #delta >= 2\t" + "\t".join(f"#delta={k}: {v}" for k, v in by_delta.items()))
    print(f"roots-of-unity classes\t{len(classes) - len(many)}")
    print(f"written\t{out}/ ({len(files)} files)")


def _load_class(ref: str):
    """'t1:4' (table 1, class 4 of the shipped tables) or a file with one form per line."""
    if ref.startswith("t") and ":" in ref:
        t, i = ref[1:].split(":")
        rows = [line.split("\t") for line in golden(f"classes_t{int(t)}.tsv").splitlines()[1:]]
        forms = [parse_form(r[1]) for r in rows if r[0] == i]
    else:
        forms = [parse_form(line) for line in Path(ref).read_text().split() if line.strip()]
    if len(forms) < 1:
        raise DomainError(f"no class found for {ref!r}")
    try:
        return make_class(forms)
    except AssertionError as e:
        raise DomainError(str(e))


def cmd_verify(args):
    C = _load_class(args.cls)
    rep = verify_class(C, args.limit, args.jobs or default_workers())
    print(f"E\t{format_primes(C.exceptional)}\tsieve E\t{format_primes(rep.sieve_exceptional())}")
    for m in rep.members:
        diffs = sorted({p for ps in m.differences.values() for p in ps})
        print(f"{m.form}\t{m.count} primes <= {args.limit}\tdifferences {format_primes(diffs)}")
    print("PASS" if rep.passed and rep.sieve_exceptional() == C.exceptional else "FAIL")
    return 0 if rep.passed else 1


def cmd_falsify(args):
    ps = falsify_pair(args.form1, args.form2, args.limit)
    print(" ".join(map(str, ps)) if ps else "no distinguishing prime")


def cmd_density(args):
    obs, exp = density_check(args.form, args.limit)
    print(f"observed\t{obs:.6f}\texpected\t{exp:.6f}\tratio\t{obs / exp:.4f}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="formprime", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--pretty", action="store_true", help="align TSV output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("reduce", help="reduce a form")
    s.add_argument("form", type=_form)
    s.set_defaults(run=cmd_reduce)

    s = sub.add_parser("classgroup", help="class group of a discriminant")
    s.add_argument("D", type=_disc)
    s.set_defaults(run=cmd_classgroup)

    s = sub.add_parser("genus", help="genus field of a discriminant")
    s.add_argument("D", type=_disc)
    s.set_defaults(run=cmd_genus)

    s = sub.add_parser("lift", help="2-lift and same-d partners of a form")
    s.add_argument("form", type=_form)
    s.set_defaults(run=cmd_lift)

    def search_flags(s):
        s.add_argument("--bound", type=int, default=100_000)
        s.add_argument("--f-max", type=int, default=100)
        s.add_argument("--full-B", action="store_true")
        s.add_argument("--jobs", type=int, default=None)
        s.add_argument("--checkpoint", default=None)
        s.add_argument("--out", default=None)
        s.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)

    s = sub.add_parser("search", help="orders with class group of type dividing (2,...,2,4)")
    search_flags(s)
    s.set_defaults(run=cmd_search)

    s = sub.add_parser("pairs", help="classes among the given discriminants")
    s.add_argument("D", type=_disc, nargs="+")
    s.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    s.set_defaults(run=cmd_pairs)

    s = sub.add_parser("tables", help="search and classify, write all tables")
    search_flags(s)
    s.set_defaults(run=cmd_tables)

    s = sub.add_parser("verify", help="sieve check of one class")
    s.add_argument("--class", dest="cls", required=True, help="tN:i or a file of forms")
    s.add_argument("--limit", type=int, default=10**6)
    s.add_argument("--jobs", type=int, default=None)
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("falsify", help="primes represented by exactly one of two forms")
    s.add_argument("form1", type=_form)
    s.add_argument("form2", type=_form)
    s.add_argument("--limit", type=int, default=10**6)
    s.set_defaults(run=cmd_falsify)

    s = sub.add_parser("density", help="observed and expected prime density")
    s.add_argument("form", type=_form)
    s.add_argument("--limit", type=int, default=10**6)
    s.set_defaults(run=cmd_density)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage:
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.run(args) or 0
    except DomainError as e:
        print(f"formprime: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except ResourceError as e:
        print(f"formprime: {e}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
