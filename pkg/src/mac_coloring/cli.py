"""Command line entry point ``mac``.

Exit codes: 0 success or positive verdict, 1 negative verdict (invalid
coloring, graph not good, no coloring exists), 2 usage or input error,
3 budget exhausted.  With ``--json`` a single report object is printed::

    {"command": [...], "input_digest": {path: sha256}, "outcome": str,
     "stats": {...}, "violations": [{"u": int, "s": int, "witnesses": [...]}]}
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import coloring as col
from .errors import BudgetExceededError, GraphFormatError, MacError, NotGoodError, PncViolatedError
from .exact import DEFAULT_BUDGET, chi_mac_search, decide_kmac
from .generators import expand_sts, gen_sts, random_graph, random_good_graph
from .graph import read_graph, write_graph
from .greedy import greedy_recolor, random_order, theorem1_bound
from .lll import DEFAULT_MAX_RESAMPLES, lll_color
from .reductions import nae_to_mac2, parse_nae_cnf, subdivide3

log = logging.getLogger("mac_coloring")

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Report:
    def __init__(self, argv):
        self.data = {"command": list(argv), "input_digest": {}, "outcome": None,
                     "stats": {}, "violations": []}
        self.lines: list[str] = []
        self._start = time.perf_counter()

    def digest(self, path: str) -> None:
        with open(path, "rb") as fh:
            self.data["input_digest"][path] = hashlib.sha256(fh.read()).hexdigest()

    def say(self, line: str) -> None:
        self.lines.append(line)

    def violations(self, report: col.ViolationReport) -> None:
        self.data["violations"] = [
            {"u": v.u, "s": v.s, "witnesses": sorted(v.witnesses)} for v in report
        ]
        for v in report:
            self.say(f"violation at vertex {v.u}: sum {v.s} on neighbors {sorted(v.witnesses)}")

    def emit(self, as_json: bool) -> None:
        self.data["stats"]["wall_time"] = round(time.perf_counter() - self._start, 6)
        if as_json:
            print(json.dumps(self.data, default=str))
        else:
            for line in self.lines:
                print(line)


def _load_graph(path, report):
    if path is None:
        raise UsageError("missing -g/--graph")
    try:
        g = read_graph(path)
    except OSError as exc:
        raise UsageError(f"cannot read graph: {exc}") from None
    report.digest(path)
    return g


def _write_coloring(path, c):
    if path:
        with open(path, "w") as fh:
            fh.write(col.serialize_coloring(c))


def cmd_check(args, report):
    g = _load_graph(args.graph, report)
    if args.coloring is None:
        raise UsageError("missing -c/--coloring")
    try:
        with open(args.coloring) as fh:
            c = col.parse_coloring(fh.read(), g.n)
    except OSError as exc:
        raise UsageError(f"cannot read coloring: {exc}") from None
    report.digest(args.coloring)
    col.check_coloring(g, c)
    result = col.verify(g, c)
    report.violations(result)
    report.data["stats"]["max_color"] = max(c, default=0)
    report.data["outcome"] = "valid" if result.ok else "invalid"
    report.say(report.data["outcome"])
    return EXIT_OK if result.ok else EXIT_NEGATIVE


def cmd_good(args, report):
    g = _load_graph(args.graph, report)
    w = col.is_good(g)
    if w.good:
        report.data["outcome"] = "good"
        report.say("good")
        return EXIT_OK
    report.data["outcome"] = "bad"
    report.data["witness"] = {"u": w.u, "R": sorted(w.R)}
    report.say(f"bad: vertex {w.u} has neighbors {sorted(w.R)} with identical neighborhoods")
    return EXIT_NEGATIVE


def cmd_onemac(args, report):
    g = _load_graph(args.graph, report)
    ok = col.one_mac_check(g)
    report.data["outcome"] = "yes" if ok else "no"
    report.say(report.data["outcome"])
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_greedy(args, report):
    g = _load_graph(args.graph, report)
    if args.order == "random":
        order = random_order(g, random.Random(args.seed))
    else:
        order = None
    try:
        c = greedy_recolor(g, order)
    except NotGoodError as exc:
        report.data["outcome"] = "bad"
        report.say(str(exc))
        return EXIT_NEGATIVE
    bound = theorem1_bound(g.max_degree)
    _write_coloring(args.out, c)
    report.data["outcome"] = "valid"
    report.data["stats"].update(max_color=max(c, default=0), bound=bound, max_degree=g.max_degree)
    report.say(f"max color {max(c, default=0)} (bound 2*D*(D-1)+1 = {bound}, D = {g.max_degree})")
    if not args.out:
        report.say(col.serialize_coloring(c).rstrip())
    return EXIT_OK


def _lll_trial(payload):
    g, seed, budget, k = payload
    try:
        res = lll_color(g, seed, budget, k)
        return seed, res.k, res.resamples, max(res.coloring, default=0), None, res.coloring
    except BudgetExceededError as exc:
        return seed, k, budget, None, str(exc), None


def cmd_lll(args, report):
    g = _load_graph(args.graph, report)
    seed = args.seed if args.seed is not None else 0
    # one generator per invocation; each trial draws its own seed from it
    master = random.Random(seed)
    seeds = [master.getrandbits(64) for _ in range(args.trials)]
    payloads = [(g, s, args.max_resamples, args.k) for s in seeds]
    try:
        if args.jobs > 1 and len(payloads) > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                trials = list(pool.map(_lll_trial, payloads))
        else:
            trials = [_lll_trial(p) for p in payloads]
    except PncViolatedError as exc:
        report.data["outcome"] = "pnc-violated"
        report.data["witness"] = {"u": exc.report.u, "v": exc.report.v}
        report.say(str(exc))
        return EXIT_NEGATIVE
    failed = [t for t in trials if t[4] is not None]
    report.data["trials"] = [
        {"seed": t[0], "k": t[1], "resamples": t[2], "max_color": t[3]} for t in trials
    ]
    if failed:
        report.data["outcome"] = "budget-exceeded"
        report.say(failed[0][4])
        return EXIT_BUDGET
    _, k, resamples, max_color, _, c = trials[0]
    _write_coloring(args.out, c)
    report.data["outcome"] = "valid"
    report.data["stats"].update(k=k, resamples=resamples, max_color=max_color)
    for t in trials:
        report.say(f"seed {t[0]}: k {t[1]}, resamples {t[2]}, max color {t[3]}")
    return EXIT_OK


def cmd_exact(args, report):
    if args.k is None:
        return cmd_chi(args, report)
    g = _load_graph(args.graph, report)
    if args.k < 1:
        raise UsageError("--k must be positive")
    out = decide_kmac(g, args.k, args.budget)
    report.data["outcome"] = out.verdict
    report.data["stats"].update(nodes_explored=out.nodes_explored, budget_hit=out.budget_hit)
    report.say(f"{out.verdict} (k={args.k}, {out.nodes_explored} nodes)")
    if out.yes:
        _write_coloring(args.out, out.coloring)
        if not args.out:
            report.say(col.serialize_coloring(out.coloring).rstrip())
    return {"yes": EXIT_OK, "no": EXIT_NEGATIVE}.get(out.verdict, EXIT_BUDGET)


def cmd_chi(args, report):
    g = _load_graph(args.graph, report)
    try:
        res = chi_mac_search(g, args.budget)
    except NotGoodError as exc:
        report.data["outcome"] = "NOT-GOOD"
        report.data["witness"] = {"u": exc.witness.u, "R": sorted(exc.witness.R)}
        report.say("NOT-GOOD")
        return EXIT_NEGATIVE
    except BudgetExceededError as exc:
        report.data["outcome"] = "unknown"
        report.say(f"unknown: {exc}")
        return EXIT_BUDGET
    _write_coloring(args.out, res.coloring)
    report.data["outcome"] = res.chi
    report.data["stats"]["nodes_explored"] = res.nodes_explored
    report.say(str(res.chi))
    return EXIT_OK


def _emit_graph(g, path, report):
    if path:
        write_graph(g, path)
    else:
        from .graph import serialize_graph
        report.say(serialize_graph(g).rstrip())
    report.data["stats"].update(n=g.n, m=g.num_edges, max_degree=g.max_degree)


def cmd_gen(args, report):
    if args.kind == "sts":
        try:
            ts = gen_sts(args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        g = expand_sts(ts)
        report.data["blocks"] = [list(b) for b in ts.blocks]
    else:
        if args.p is None or not 0 <= args.p <= 1:
            raise UsageError("gen random needs --p in [0, 1]")
        rng = random.Random(args.seed)
        g = random_good_graph(args.n, args.p, rng) if args.good else random_graph(args.n, args.p, rng)
    _emit_graph(g, args.out, report)
    report.data["outcome"] = "generated"
    return EXIT_OK


def cmd_reduce(args, report):
    if args.kind == "nae3sat":
        if args.formula is None:
            raise UsageError("reduce nae3sat needs -f/--formula")
        try:
            with open(args.formula) as fh:
                f = parse_nae_cnf(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read formula: {exc}") from None
        report.digest(args.formula)
        g, pmap = nae_to_mac2(f)
    else:
        g, pmap = subdivide3(_load_graph(args.graph, report))
    _emit_graph(g, args.out, report)
    if args.map:
        with open(args.map, "w") as fh:
            fh.write(pmap.to_json())
    report.data["outcome"] = "reduced"
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("-g", "--graph", help="graph file (.col is DIMACS, else edge list)")
    common.add_argument("-o", "--out", help="output file")
    common.add_argument("--seed", type=int, help="seed for the random generator")

    parser = argparse.ArgumentParser(prog="mac", description="Majority additive colorings of graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="verify a coloring")
    p.add_argument("-c", "--coloring")
    p.set_defaults(func=cmd_check)

    sub.add_parser("good", parents=[common], help="goodness test").set_defaults(func=cmd_good)
    sub.add_parser("onemac", parents=[common], help="is the all-ones coloring valid").set_defaults(
        func=cmd_onemac)

    p = sub.add_parser("greedy", parents=[common], help="greedy recoloring")
    p.add_argument("--order", choices=["ascending", "random"], default="ascending")
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser("lll", parents=[common], help="random coloring by local resampling")
    p.add_argument("--max-resamples", type=int, default=DEFAULT_MAX_RESAMPLES)
    p.add_argument("-k", "--k", type=int, help="override the number of colors")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_lll)

    p = sub.add_parser("exact", parents=[common], help="decide k-MAC (chi without --k)")
    p.add_argument("--k", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("chi", parents=[common], help="majority additive chromatic number")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("gen", parents=[common], help="generate graphs")
    p.add_argument("kind", choices=["sts", "random"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--good", action="store_true", help="resample until good")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", parents=[common], help="hardness gadgets")
    p.add_argument("kind", choices=["nae3sat", "subdivide"])
    p.add_argument("-f", "--formula")
    p.add_argument("--map", help="write the vertex provenance map (JSON)")
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    level = os.environ.get("MAC_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    report = Report(argv)
    try:
        code = args.func(args, report)
    except (UsageError, GraphFormatError, MacError, ValueError) as exc:
        print(f"mac {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.emit(args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
