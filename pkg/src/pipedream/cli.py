"""Command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 bad usage or
unparsable input, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .perm import (PatternError, Permutation, count_pattern, inversions, is_layered,
                   lehmer_code, length, parse_permutation, rothe_diagram)
from .rcgraph import BudgetExceeded, bottom, enumerate_all, top
from .render import FORMATS, render
from .schubert import (build_coefficients, max_coefficient, nu, nu_macdonald_oracle)
from .verify import SUITES, run_all, write_report

log = logging.getLogger("pipedream")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _perm(text: str) -> Permutation:
    try:
        return parse_permutation(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse permutation {text!r}: {exc}") from exc


def cmd_info(args) -> int:
    w = _perm(args.w)
    data = {
        "w": w.to_json(),
        "length": length(w),
        "code": list(lehmer_code(w)),
        "inversions": sorted(inversions(w)),
        "rothe_diagram": sorted(rothe_diagram(w)),
        "layered": is_layered(w),
        "p132": count_pattern("132", w),
        "p1432": count_pattern("1432", w),
    }
    if args.json:
        print(json.dumps(data))
    else:
        for k, v in data.items():
            print(f"{k}: {v}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    w = _perm(args.w)
    graphs = enumerate_all(w, budget=args.budget, max_order=args.max_order)
    if args.format == "json":
        print(json.dumps([D.to_json() for D in graphs]))
    else:
        for D in graphs:
            print(render(D, args.format, args.show_strands))
            print()
        print(f"count: {len(graphs)}")
    return EXIT_OK


def cmd_nu(args) -> int:
    w = _perm(args.w)
    print(nu_macdonald_oracle(w) if args.oracle else nu(w, budget=args.budget))
    return EXIT_OK


def cmd_coeffs(args) -> int:
    table = build_coefficients(args.n, workers=args.workers, budget=args.budget,
                               checkpoint=args.checkpoint, resume=args.resume)
    if args.format == "json":
        print(json.dumps(table.to_json()))
        return EXIT_OK
    print("w,c")
    for u, c in sorted(table.values.items(), key=lambda kv: (len(kv[0]), kv[0])):
        print(f"{Permutation(u)},{c}")
    return EXIT_OK


def cmd_table_max(args) -> int:
    table = build_coefficients(args.n, workers=args.workers, budget=args.budget,
                               checkpoint=args.checkpoint, resume=args.resume)
    print("n,max_c,argmax")
    for m in range(3, args.n + 1):
        value, arg = max_coefficient(m, table)
        print(f"{m},{value},{' '.join(str(p) for p in arg)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = run_all(args.n, shards=args.shards, shard_id=args.shard_id, suite=args.suite,
                      workers=args.workers, checkpoint=args.checkpoint, resume=args.resume)
    for r in reports.values():
        print(r.line())
        for f in r.failures[:5]:
            print(f"  {json.dumps(f)}")
    if args.report:
        write_report(reports, args.report)
    return EXIT_OK if all(r.passed for r in reports.values()) else EXIT_FAIL


def cmd_render(args) -> int:
    w = _perm(args.w)
    if args.which == "bottom":
        D = bottom(w)
    elif args.which == "top":
        D = top(w)
    else:
        graphs = enumerate_all(w, budget=args.budget)
        if not 0 <= args.index < len(graphs):
            raise UsageError(f"index {args.index} out of range 0..{len(graphs) - 1}")
        D = graphs[args.index]
    print(render(D, args.format, args.show_strands))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pipedream", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--budget", type=int, default=None,
                   help="max RC-graphs per enumeration (default: $PIPEDREAM_BUDGET or 10^7)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", help="basic statistics of a permutation")
    s.add_argument("w")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("enumerate", help="list every RC-graph of w")
    s.add_argument("w")
    s.add_argument("--format", choices=FORMATS, default="ascii")
    s.add_argument("--show-strands", action="store_true")
    s.add_argument("--max-order", type=int, default=None,
                   help="only use ladder moves up to this order")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("nu", help="number of RC-graphs, Schubert polynomial at all ones")
    s.add_argument("w")
    s.add_argument("--oracle", action="store_true", help="use the reduced-word identity")
    s.set_defaults(func=cmd_nu)

    for name, func, helptext in (("coeffs", cmd_coeffs, "pattern coefficients up to size n"),
                                 ("table-max", cmd_table_max, "largest coefficient per size")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("n", type=int)
        s.add_argument("--workers", type=int, default=1)
        s.add_argument("--checkpoint", default=None)
        s.add_argument("--resume", action="store_true")
        if name == "coeffs":
            s.add_argument("--format", choices=("csv", "json"), default="csv")
        s.set_defaults(func=func)

    s = sub.add_parser("verify", help="exhaustive checks over S_1..S_n")
    s.add_argument("--suite", choices=sorted(SUITES), default="all")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--shards", type=int, default=1)
    s.add_argument("--shard-id", type=int, default=None)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--checkpoint", default=None)
    s.add_argument("--resume", action="store_true")
    s.add_argument("--report", default=None, help="write a JSON report here")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("render", help="draw one RC-graph of w")
    s.add_argument("w")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--index", type=int, default=0, help="position in the enumeration")
    g.add_argument("--bottom", dest="which", action="store_const", const="bottom")
    g.add_argument("--top", dest="which", action="store_const", const="top")
    s.add_argument("--format", choices=FORMATS, default="ascii")
    s.add_argument("--show-strands", action="store_true")
    s.set_defaults(func=cmd_render, which="index")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "n", 1) is not None and getattr(args, "n", 1) < 1:
        print("error: n must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PatternError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
