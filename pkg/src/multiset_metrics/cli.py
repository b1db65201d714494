"""Command-line interface.

Exit codes: 0 ok, 1 property violation found, 2 unreadable input, 3 domain error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from .baselines import bag_distance, matching_distance, mu_metric
from .checks import METRICS, check_metric, compare_oracle
from .errors import FormatError, ThetaThresholdWarning
from .ground import GroundSpace, load_json, load_space
from .model_e import counterexample_triangle, d_E_plan, d_Em, warn_if_not_metric
from .model_f import FPrimeSet, counterexample_triangle_A, d_F, d_Fm
from .model_g import GClass, d_G, project
from .multiset import Multiset

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3

DIST_METRICS = ("bag", "matching", "mu", "dE", "dEm", "dF", "dFm", "dG")


class DomainError(Exception):
    pass


def fmt(value: Fraction, space: GroundSpace, as_float: bool = False, decimal: bool = True) -> str:
    """Exact ``p/q (decimal)`` on rational spaces, a float otherwise."""
    value = Fraction(value)
    if as_float or not space.exact:
        return repr(float(value))
    if value.denominator == 1:
        return str(value.numerator)
    text = f"{value.numerator}/{value.denominator}"
    return f"{text} ({float(value)!r})" if decimal else text


def load_item(path: str, space: GroundSpace, metric: str):
    """Read a multiset or point-set file and convert it to what ``metric`` consumes."""
    doc = load_json(path)
    if isinstance(doc, dict) and "points" in doc:
        item = FPrimeSet.from_dict(doc, space)
    elif isinstance(doc, dict) and "elements" in doc:
        item = Multiset.from_dict(doc, space)
    else:
        raise FormatError(f"{path}: expected a multiset ('elements') or point set ('points') document")
    if metric in ("dF", "dFm"):
        return FPrimeSet.from_multiset(item) if isinstance(item, Multiset) else item
    if metric == "dG":
        return GClass(item) if isinstance(item, Multiset) else project(item)
    if isinstance(item, FPrimeSet):
        if not item.is_F:
            raise DomainError(f"{path}: point set repeats an element, so it is not a multiset; use dF, dFm or dG")
        return item.to_multiset()
    return item


def _pair_value(space: GroundSpace, metric: str, x, y, args):
    if metric == "dE":
        warn_if_not_metric(space, "dE")
        return d_E_plan(space, x, y).value
    if metric == "dEm":
        return d_Em(space, x, y)
    if metric == "dF":
        return d_F(space, x, y)
    if metric == "dFm":
        return d_Fm(space, x, y)
    if metric == "bag":
        return Fraction(bag_distance(x, y))
    if metric == "mu":
        return mu_metric(None, x, y)
    if metric == "matching":
        return matching_distance(space, x, y)
    if metric == "dG":
        return d_G(space, x, y, hops=args.hops)
    raise DomainError(f"unknown metric {metric!r}")


def _require_metric(args, allowed) -> str:
    if args.metric not in allowed:
        raise DomainError(f"unknown metric {args.metric!r}; choose from {', '.join(allowed)}")
    return args.metric


def _print_interval(iv, space, args, out) -> None:
    mode = args.gbound
    if mode == "lower":
        print(fmt(iv.lower, space, args.float), file=out)
    elif mode == "upper":
        print(fmt(iv.upper, space, args.float), file=out)
    else:
        lo = fmt(iv.lower, space, args.float, decimal=False)
        hi = fmt(iv.upper, space, args.float, decimal=False)
        print(f"interval [{lo}, {hi}] exact={str(iv.exact).lower()}", file=out)
    for U, V in iv.witness_chain:
        print(f"  link {U!r} -> {V!r}", file=out)


def cmd_dist(args, space: GroundSpace, out) -> int:
    metric = _require_metric(args, DIST_METRICS)
    x = load_item(args.first, space, metric)
    y = load_item(args.second, space, metric)
    if metric == "dG":
        _print_interval(d_G(space, x, y, hops=args.hops), space, args, out)
        return EXIT_OK
    if metric == "dE" and args.dump_flow:
        warn_if_not_metric(space, "dE")
        plan = d_E_plan(space, x, y)
        print(fmt(plan.value, space, args.float), file=out)
        if plan.instance is None:
            print("flow: none (no transportation needed)", file=out)
        else:
            inst = plan.instance
            names = lambda idxs: [space.elements[i] if i is not None else "M" for i in idxs]
            print("rows: " + " ".join(names(inst.rows)), file=out)
            print("cols: " + " ".join(names(inst.cols)), file=out)
            for row in plan.flow.h:
                print(" ".join(str(v) for v in row), file=out)
        return EXIT_OK
    print(fmt(_pair_value(space, metric, x, y, args), space, args.float), file=out)
    return EXIT_OK


def cmd_matrix(args, space: GroundSpace, out) -> int:
    metric = _require_metric(args, DIST_METRICS)
    if len(args.files) < 2:
        raise DomainError("matrix needs at least two input files")
    items = [load_item(p, space, metric) for p in args.files]
    names = [Path(p).name for p in args.files]
    n = len(items)
    cells = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = _pair_value(space, metric, items[i], items[j], args) if i != j else None
            cells[i][j] = cells[j][i] = v
    writer = csv.writer(out, lineterminator="\n")
    zero = Fraction(0)

    def emit(title: str, pick) -> None:
        writer.writerow([title] + names)
        for i in range(n):
            row = [pick(cells[i][j]) if i != j else zero for j in range(n)]
            writer.writerow([names[i]] + [fmt(v, space, args.float, decimal=False) for v in row])

    if metric != "dG":
        emit("", lambda v: v)
        return EXIT_OK
    if args.gbound in ("lower", "interval"):
        emit("lower", lambda iv: iv.lower)
    if args.gbound == "interval":
        out.write("\n")
    if args.gbound in ("upper", "interval"):
        emit("upper", lambda iv: iv.upper)
    return EXIT_OK


def cmd_check(args, space: GroundSpace, out) -> int:
    metric = _require_metric(args, tuple(METRICS))
    report = check_metric(space, metric, samples=args.samples, seed=args.seed)
    for line in report.lines():
        print(line, file=out)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_oracle(args, space: GroundSpace, out) -> int:
    report = compare_oracle(space, samples=args.samples, seed=args.seed)
    print(f"space={space.label} samples={report.samples} seed={report.seed}", file=out)
    print(f"mismatches: {len(report.mismatches)}", file=out)
    print(f"max deviation: {fmt(report.max_deviation, space, args.float)}", file=out)
    if report.ok:
        return EXIT_OK
    a, c, fast, slow = report.mismatches[0]
    failing = {"a": a.to_dict(space), "c": c.to_dict(space), "solver": str(fast), "oracle": str(slow)}
    print(json.dumps(failing), file=out)
    return EXIT_VIOLATION


def cmd_counterexample(args, space: GroundSpace, out) -> int:
    metric = _require_metric(args, ("dE", "dEm", "dA", "dAm"))
    if metric in ("dE", "dEm"):
        w = counterexample_triangle(space, metric)
    else:
        w = counterexample_triangle_A(space, metric)
    if w is None:
        print(f"none: theta = {fmt(space.theta, space, args.float)} is within the threshold for {metric}", file=out)
        return EXIT_OK
    p, q, r = w.points
    print(f"witness {metric}: p={p!r} q={q!r} r={r!r}", file=out)
    print(f"d(p,q) = {fmt(w.d_pq, space, args.float)}", file=out)
    print(f"d(q,r) = {fmt(w.d_qr, space, args.float)}", file=out)
    print(f"d(p,r) = {fmt(w.d_pr, space, args.float)}", file=out)
    print(f"slack = {fmt(w.slack, space, args.float)}", file=out)
    return EXIT_OK


def cmd_gbound(args, space: GroundSpace, out) -> int:
    x = load_item(args.first, space, "dG")
    y = load_item(args.second, space, "dG")
    _print_interval(d_G(space, x, y, hops=args.hops), space, args, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", required=True, help="ground space JSON file")
    common.add_argument("--metric", default="dE", help="metric name")
    common.add_argument("--M", type=Fraction, default=None, help="scale parameter, overrides the file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--hops", type=int, default=1, help="intermediate classes allowed in d_G chains")
    common.add_argument("--gbound", choices=("lower", "upper", "interval"), default="interval")
    common.add_argument("--float", action="store_true", help="print decimals instead of exact rationals")
    common.add_argument("--dump-flow", action="store_true", help="print the optimal transport matrix for dE")

    parser = argparse.ArgumentParser(prog="multiset-metrics", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("dist", parents=[common], help="distance between two multisets or point sets")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(run=cmd_dist)
    p = sub.add_parser("matrix", parents=[common], help="pairwise distance matrix as CSV")
    p.add_argument("files", nargs="+")
    p.set_defaults(run=cmd_matrix)
    p = sub.add_parser("check", parents=[common], help="randomized metric-axiom check")
    p.set_defaults(run=cmd_check)
    p = sub.add_parser("oracle", parents=[common], help="transportation solver versus brute force")
    p.set_defaults(run=cmd_oracle)
    p = sub.add_parser("counterexample", parents=[common], help="triangle-inequality witness above threshold")
    p.set_defaults(run=cmd_counterexample)
    p = sub.add_parser("gbound", parents=[common], help="certified bounds on d_G")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(run=cmd_gbound)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.seed < 0 or args.seed >= 2**64:
        print("error: seed must be a 64-bit unsigned integer", file=sys.stderr)
        return EXIT_PARSE
    try:
        space = load_space(args.space, M=args.M)
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ThetaThresholdWarning)
        try:
            code = args.run(args, space, out)
        except (FormatError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = EXIT_PARSE
        except (DomainError, ValueError, KeyError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = EXIT_DOMAIN
    for msg in dict.fromkeys(str(w.message) for w in caught if issubclass(w.category, ThetaThresholdWarning)):
        print(f"warning: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
