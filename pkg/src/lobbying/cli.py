"""Command-line front end.

Exit codes: 0 success or feasible, 1 infeasible, 2 error.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from .errors import Infeasible, LobbyError
from .generators import GenConfig, from_knapsack, from_optimal_lobbying, from_subset_sum, gen_random
from .hard import greedy_vb, solve_vb_exact, within_ratio_bound
from .io import parse_instance, serialize_instance
from .model import Comparison, evaluate, example1, validate_instance
from .oracle import oracle_exact_spend, oracle_min_budget, oracle_weighted
from .solve import solve

EXIT_OK, EXIT_INFEASIBLE, EXIT_ERROR = 0, 1, 2
BUILTINS = {"example1": example1}


def _emit(doc):
    print(json.dumps(doc, indent=2))


def _load(args):
    source = args.file
    if source in BUILTINS and not Path(source).exists():
        inst = BUILTINS[source]()
    elif source == "-":
        inst = parse_instance(sys.stdin.read())
    else:
        inst = parse_instance(Path(source).read_text())
    changes = {}
    if getattr(args, "threshold", None) is not None:
        changes["threshold"] = Fraction(args.threshold)
    if getattr(args, "comparison", None) is not None:
        changes["comparison"] = Comparison(args.comparison)
    if getattr(args, "budget", None) is not None:
        changes["budget"] = args.budget
    if changes:
        inst = validate_instance(replace(inst, **changes))
    return inst


def cmd_validate(args):
    inst = _load(args)
    _emit({"valid": True, "m": inst.m, "n": inst.n, "k": inst.k})
    return EXIT_OK


def cmd_eval(args):
    inst = _load(args)
    outcome = evaluate(inst, args.criterion)
    _emit({
        "criterion": args.criterion,
        "outcome": str(outcome),
        "agenda": "".join(map(str, inst.agenda)),
        "agenda_won": outcome.bits == inst.agenda,
    })
    return EXIT_OK


def _infeasible_doc(exc: Infeasible):
    return {"feasible": False, "min_cost": None, "unwinnable_issue": exc.issue, "message": str(exc)}


def cmd_solve(args):
    inst = _load(args)
    try:
        report = solve(inst, args.method, args.criterion, weighted=args.weighted, exact=args.exact)
    except Infeasible as exc:
        _emit(_infeasible_doc(exc))
        return EXIT_INFEASIBLE
    doc = report.to_dict()
    doc["budget"] = inst.budget
    _emit(doc)
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def cmd_oracle(args):
    inst = _load(args)
    if args.exact:
        ok = oracle_exact_spend(inst, args.criterion)
        _emit({"feasible": ok, "budget": inst.budget, "solver": "oracle"})
        return EXIT_OK if ok else EXIT_INFEASIBLE
    if args.weighted:
        report = oracle_weighted(inst, args.method, args.criterion)
    else:
        report = oracle_min_budget(inst, args.method, args.criterion)
    doc = report.to_dict()
    doc["budget"] = inst.budget
    _emit(doc)
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def cmd_greedy(args):
    inst = _load(args)
    trace = greedy_vb(inst, args.criterion)
    if trace is None:
        _emit({"feasible": False, "total_cost": None, "message": "some issue cannot be won"})
        return EXIT_INFEASIBLE
    feasible = trace.total_cost <= inst.budget
    _emit({
        "feasible": feasible,
        "total_cost": trace.total_cost,
        "budget": inst.budget,
        "cover_number": trace.cover_number,
        "ratio_bound": trace.ratio_bound,
        "plan": list(trace.plan().dollars),
        "steps": [{"voter": s.voter, "dollars": s.dollars, "issues": list(s.issues)} for s in trace.steps],
        "solver": "greedy",
    })
    return EXIT_OK if feasible else EXIT_INFEASIBLE


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _bits_matrix(text):
    return [[int(ch) for ch in row.strip()] for row in text.split(",") if row.strip()]


def _gen_config(args, **extra) -> GenConfig:
    return GenConfig(
        seed=args.seed,
        m=(args.m, args.m) if args.m else (1, 3),
        n=(args.n, args.n) if args.n else (1, 3),
        k=(args.k, args.k) if args.k is not None else (0, 3),
        max_cost=args.max_cost,
        agenda=args.agenda,
        **extra,
    )


def cmd_gen(args):
    if args.reduction == "subsetsum":
        inst = from_subset_sum(_ints(args.values), args.target)
    elif args.reduction == "knapsack":
        inst = from_knapsack(_ints(args.weights), _ints(args.profits), args.capacity, args.goal)
    elif args.reduction == "ol":
        matrix = _bits_matrix(args.matrix)
        target = [int(ch) for ch in args.target_bits] if args.target_bits else [1] * len(matrix[0])
        inst = from_optimal_lobbying(matrix, target, args.b)
    else:
        inst = gen_random(_gen_config(args))
    text = serialize_instance(validate_instance(inst))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


BENCH_FIELDS = [
    "index", "m", "n", "k", "criterion", "threshold", "comparison", "status",
    "exact_cost", "greedy_cost", "ratio", "cover_number", "bound", "within_bound",
]


def bench_row(task):
    index, inst, criterion = task
    row = {
        "index": index, "m": inst.m, "n": inst.n, "k": inst.k, "criterion": criterion,
        "threshold": str(inst.threshold), "comparison": inst.comparison.value,
    }
    trace = greedy_vb(inst, criterion)
    if trace is None:
        row.update(status="unwinnable")
        return row
    exact = solve_vb_exact(inst, criterion).min_cost
    ratio = Fraction(trace.total_cost, exact) if exact else Fraction(1)
    row.update(
        status="ok",
        exact_cost=exact,
        greedy_cost=trace.total_cost,
        ratio=f"{float(ratio):.6f}",
        cover_number=trace.cover_number,
        bound=f"{trace.ratio_bound:.6f}",
        within_bound=within_ratio_bound(trace.total_cost, exact, trace.cover_number),
    )
    return row


def cmd_bench(args):
    cfg = _gen_config(args)
    rng = random.Random(args.seed)
    tasks = [(i, gen_random(cfg, rng), args.criterion) for i in range(args.count)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(bench_row, tasks))
    else:
        rows = [bench_row(t) for t in tasks]
    writer = csv.DictWriter(sys.stdout, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return EXIT_OK


def _instance_args(p, method=False):
    p.add_argument("file", help="instance file, '-' for stdin, or 'example1'")
    p.add_argument("--threshold", help="override threshold, e.g. 3/5")
    p.add_argument("--comparison", choices=["strict", "weak"], help="override comparison mode")
    p.add_argument("--budget", type=int, help="override budget")
    if method:
        p.add_argument("--method", choices=["mb", "ib", "vb"], required=True)
        p.add_argument("--criterion", choices=["sm", "am"], required=True)
        p.add_argument("--weighted", action="store_true", help="use issue weights and objective")
        p.add_argument("--exact", action="store_true", help="spend exactly the budget (mb only)")


def _random_args(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", type=int, help="voters (default: random 1..3)")
    p.add_argument("--n", type=int, help="issues (default: random 1..3)")
    p.add_argument("--k", type=int, help="discretization level (default: random 0..3)")
    p.add_argument("--max-cost", type=int, default=9)
    p.add_argument("--agenda", choices=["random", "ones"], default="random")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lobbying", description="Probabilistic lobbying solvers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check an instance file")
    _instance_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("eval", help="evaluate the current outcome")
    _instance_args(p)
    p.add_argument("--criterion", choices=["sm", "am"], required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("solve", help="minimum-budget solve")
    _instance_args(p, method=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="brute-force reference solve")
    _instance_args(p, method=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("greedy", help="greedy voter-bribery approximation")
    _instance_args(p)
    p.add_argument("--criterion", choices=["sm", "am"], required=True)
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser("gen", help="generate an instance file")
    _random_args(p)
    p.add_argument("--reduction", choices=["subsetsum", "knapsack", "ol"])
    p.add_argument("--values", help="subsetsum: comma-separated values")
    p.add_argument("--target", type=int, help="subsetsum: target sum")
    p.add_argument("--weights", help="knapsack: comma-separated object weights")
    p.add_argument("--profits", help="knapsack: comma-separated object profits")
    p.add_argument("--capacity", type=int, help="knapsack: weight capacity")
    p.add_argument("--goal", type=int, help="knapsack: profit goal")
    p.add_argument("--matrix", help="ol: rows of 0/1 digits separated by commas, e.g. 110,011")
    p.add_argument("--target-bits", help="ol: target outcome digits (default all ones)")
    p.add_argument("--b", type=int, default=0, help="ol: number of voters to change")
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="greedy vs exact voter bribery, CSV on stdout")
    _random_args(p)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--criterion", choices=["sm", "am"], default="am")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def _check_gen_args(args):
    needed = {
        "subsetsum": ("values", "target"),
        "knapsack": ("weights", "profits", "capacity", "goal"),
        "ol": ("matrix",),
    }.get(args.reduction, ())
    missing = [name for name in needed if getattr(args, name) is None]
    if missing:
        raise LobbyError(f"--reduction {args.reduction} needs --{', --'.join(missing)}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            _check_gen_args(args)
        return args.func(args)
    except (LobbyError, ValueError, OSError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
