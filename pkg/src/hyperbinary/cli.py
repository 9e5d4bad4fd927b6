"""Command-line front end.

    hyperbinary expand 10
    hyperbinary graph 10 > a10.dot
    hyperbinary classify --range 1..100
    hyperbinary verify all
    hyperbinary sequence b 20

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .classify import DEFAULT_WORK_BOUND, classify
from .errors import DomainError
from .expansion import (
    blocks_of_twos,
    count_expansions,
    distance_indices,
    enumerate_expansions,
    length_class,
    shortlex_key,
    stern,
    weight,
)
from .graph import build_graph, cyclomatic_number, node_class, to_dot
from .verify import DEFAULT_ORACLE_BOUND, REGISTRY, verify_many

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def nonneg_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {n}")
    return n


def index_range(text: str) -> tuple[int, int]:
    """Parse ``A..B`` (or a single ``A``) with 0 <= A <= B."""
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like A..B, got {text!r}")
    if a < 0 or b < a:
        raise argparse.ArgumentTypeError(f"need 0 <= A <= B, got {text!r}")
    return a, b


def cmd_expand(args, out):
    for e in sorted(enumerate_expansions(args.n), key=shortlex_key):
        i, j = distance_indices(e)
        fields = dict(word=e, weight=weight(e), length=length_class(e), i=i, j=j, blocks=blocks_of_twos(e))
        if args.format == "machine":
            print(" ".join(f"{k}={v}" for k, v in fields.items()), file=out)
        else:
            print(f"{e:<{args.n.bit_length() + 2}} weight={fields['weight']} {fields['length']:<5} "
                  f"i={i} j={j} blocks={fields['blocks']}", file=out)
    return EXIT_OK


def cmd_graph(args, out):
    g = build_graph(args.n)
    if args.format == "dot":
        out.write(to_dot(g))
    elif args.format == "machine":
        for v in g.nodes:
            print(f"node={v} row={g.row_of(v)} class={node_class(g, v)}", file=out)
        for a in g.arcs:
            print(f"arc={a.source}>{a.target} color={a.color.value}", file=out)
    else:
        print(f"A({g.n}): {len(g.nodes)} nodes, {len(g.arcs)} arcs, cyclomatic number {cyclomatic_number(g)}", file=out)
        for r, row in enumerate(g.rows):
            print(f"row {r}: " + "  ".join(row), file=out)
        for a in g.arcs:
            print(f"  {a}", file=out)
    return EXIT_OK


def _classify_fields(c) -> dict:
    p = c.tree_params
    return {
        "n": c.n,
        "b": c.b,
        "cyclomatic": "?" if c.cyclomatic is None else c.cyclomatic,
        "tree": "yes" if c.is_tree else "no",
        "params": f"s={p.s},t={p.t},sign={p.sign}" if p else "-",
        "in_T": "yes" if c.in_T else "no",
        "pi1": "?" if c.pi1 is None else str(c.pi1).replace(" ", "_"),
        "verified": "yes" if c.structurally_verified else "no",
    }


def cmd_classify(args, out):
    if args.n is not None and args.range is not None:
        raise DomainError("give either N or --range, not both")
    if args.n is None and args.range is None:
        raise DomainError("classify needs N or --range A..B")
    lo, hi = (args.n, args.n) if args.n is not None else args.range
    if lo < 1:
        raise DomainError("classify ranges start at 1")
    for n in range(lo, hi + 1):
        c = classify(n, work_bound=args.work_bound)
        if args.format == "machine":
            print(" ".join(f"{k}={v}" for k, v in _classify_fields(c).items()), file=out)
            continue
        verdict = f"tree ({c.tree_params})" if c.is_tree else "not a tree"
        cyc = "?" if c.cyclomatic is None else c.cyclomatic
        pi1 = "?" if c.pi1 is None else ("π₁ = Z" if c.pi1.rank == 1 else f"π₁ {c.pi1}")
        note = "" if c.structurally_verified else "  [closed forms only, unverified structurally]"
        print(f"{n}: b={c.b} cyclomatic {cyc}, {verdict}, {'in' if c.in_T else 'not in'} T, {pi1}{note}", file=out)
    return EXIT_OK


def cmd_verify(args, out):
    ids = list(REGISTRY) if args.ids in ([], ["all"]) else args.ids
    unknown = [i for i in ids + args.skip if i not in REGISTRY]
    if unknown:
        raise DomainError(f"unknown claim id(s): {', '.join(unknown)}")
    ids = [i for i in ids if i not in args.skip]
    lo, hi = args.range if args.range else (None, None)
    reports = verify_many(ids, lo, hi, seed=args.seed, oracle_bound=args.oracle_bound)
    for r in reports:
        print(r.to_line(timing=not args.no_timing), file=out)
    failed = [r.claim_id for r in reports if not r.passed]
    if failed:
        print(f"FAILED: {' '.join(failed)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_sequence(args, out):
    fn = count_expansions if args.kind == "b" else stern
    for n in range(args.upper + 1):
        print(n, fn(n), file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperbinary", description="Hyperbinary expansion graphs A(n).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="list H(n) in shortlex order")
    p.add_argument("n", type=positive_int)
    p.add_argument("--format", choices=["text", "machine"], default="text")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("graph", help="emit A(n)")
    p.add_argument("n", type=positive_int)
    p.add_argument("--format", choices=["dot", "text", "machine"], default="dot")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("classify", help="tree / cyclomatic / pi_1 verdicts")
    p.add_argument("n", type=positive_int, nargs="?")
    p.add_argument("--range", type=index_range)
    p.add_argument("--format", choices=["text", "machine"], default="text")
    p.add_argument("--work-bound", type=positive_int, default=DEFAULT_WORK_BOUND,
                   help="skip building A(n) when b(n) * len(n) exceeds this")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="check claims over ranges; ids or 'all'")
    p.add_argument("ids", nargs="*", metavar="ID")
    p.add_argument("--range", type=index_range, help="override every claim's range (in its own index)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle-bound", type=positive_int, default=DEFAULT_ORACLE_BOUND)
    p.add_argument("--skip", action="append", default=[], metavar="ID")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed times for byte-stable output")
    p.add_argument("--list", action="store_true", help="list claim ids and exit")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sequence", help="print n and b(n) or s(n) for 0..UPPER")
    p.add_argument("kind", choices=["b", "stern"])
    p.add_argument("upper", type=nonneg_int)
    p.set_defaults(func=cmd_sequence)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "verify" and args.list:
        for c in REGISTRY.values():
            print(f"{c.id:<12} {c.index}={c.default_range[0]}..{c.default_range[1]}  {c.statement}", file=out)
        return EXIT_OK
    try:
        return args.func(args, out)
    except DomainError as exc:
        print(f"hyperbinary {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
