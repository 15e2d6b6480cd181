"""Brute-force reference solvers.

Nothing here is shared with the optimized solvers except the model's
bribery and evaluation semantics; every minimum is found by trying plans.
Two reductions keep the enumeration affordable without trusting any solver
logic:

* under micro and issue bribery a column's outcome and price depend only
  on what is spent in that column, so columns are enumerated one at a time;
* under issue and voter bribery only spends that make some share reach a
  listed price can move a level, so per-voter candidates are finite.  The
  issue-bribery oracle still walks every integer spend.
"""

from __future__ import annotations

import itertools
import math
from typing import List, Optional, Tuple

from .errors import InstanceTooLarge
from .model import (
    Criterion,
    Instance,
    IssuePlan,
    Method,
    MicroPlan,
    VoterPlan,
    apply_bribery,
    evaluate,
    evaluate_levels,
)
from .report import SolveReport, SolverTag, enumeration_limit


def _check_size(count: int, what: str):
    limit = enumeration_limit()
    if count > limit:
        raise InstanceTooLarge(f"{what}: {count} candidates exceed the limit of {limit}")


def _micro_options(inst: Instance, i: int, j: int) -> List[Tuple[int, int]]:
    """(stored level, price) pairs the Lobby may move pair (i, j) to."""
    a = inst.prob[i][j]
    row = inst.cost[i][j]
    levels = range(a, inst.k + 2) if inst.agenda[j] else range(0, a + 1)
    return [(lvl, row[lvl]) for lvl in levels if row[lvl] is not None]


def _column_micro(inst: Instance, j: int, criterion: Criterion):
    """Cheapest micro edit of column j that wins issue j: (price, stored levels) or None."""
    options = [_micro_options(inst, i, j) for i in range(inst.m)]
    best = None
    levels = [list(r) for r in inst.prob]
    for combo in itertools.product(*options):
        price = sum(c for _, c in combo)
        if best is not None and price >= best[0]:
            continue
        for i, (lvl, _) in enumerate(combo):
            levels[i][j] = lvl
        if evaluate_levels(inst, levels, criterion).bits[j] == inst.agenda[j]:
            best = (price, tuple(lvl for lvl, _ in combo))
    return best


def _column_issue(inst: Instance, j: int, criterion: Criterion) -> Optional[int]:
    """Smallest integer spend on issue j that wins it, trying every dollar amount."""
    top = 0
    for i in range(inst.m):
        row = inst.cost[i][j]
        present = [c for c in row if c is not None]
        top = max(top, max(present))
    for d in range(math.ceil(inst.m * top) + 1):
        dollars = [0] * inst.n
        dollars[j] = d
        after = apply_bribery(inst, IssuePlan(dollars))
        if evaluate(after, criterion).bits[j] == inst.agenda[j]:
            return d
    return None


def _per_column(inst: Instance, method: Method, criterion: Criterion):
    if method is Method.MB:
        sizes = [math.prod(len(_micro_options(inst, i, j)) for i in range(inst.m)) for j in range(inst.n)]
        _check_size(sum(sizes), "micro enumeration")
        return [_column_micro(inst, j, criterion) for j in range(inst.n)]
    found = []
    for j in range(inst.n):
        d = _column_issue(inst, j, criterion)
        found.append(None if d is None else (d, None))
    return found


def _voter_candidates(inst: Instance, i: int) -> List[int]:
    spends = {0}
    for j in range(inst.n):
        for c in inst.cost[i][j]:
            if c:
                spends.add(math.ceil(inst.n * c))
    return sorted(spends)


def _voter_rows(inst: Instance):
    """For each voter, (spend, resulting level row) for every candidate spend."""
    table = []
    for i in range(inst.m):
        rows = []
        for d in _voter_candidates(inst, i):
            dollars = [0] * inst.m
            dollars[i] = d
            rows.append((d, apply_bribery(inst, VoterPlan(dollars)).prob[i]))
        table.append(rows)
    _check_size(math.prod(len(r) for r in table), "voter enumeration")
    return table


def _voter_search(inst: Instance, criterion: Criterion, accept):
    """Cheapest voter plan whose outcome satisfies ``accept``."""
    best = None
    for combo in itertools.product(*_voter_rows(inst)):
        price = sum(d for d, _ in combo)
        if best is not None and price >= best[0]:
            continue
        outcome = evaluate_levels(inst, [row for _, row in combo], criterion)
        if accept(outcome.bits):
            best = (price, tuple(d for d, _ in combo))
    return best


def _report(inst: Instance, cost, plan, per_issue) -> SolveReport:
    if cost is None:
        return SolveReport(False, None, None, None, SolverTag.ORACLE)
    return SolveReport(cost <= inst.budget, cost, plan, per_issue, SolverTag.ORACLE)


def _columns_plan(inst: Instance, method: Method, chosen, columns):
    if method is Method.MB:
        targets = [list(r) for r in inst.prob]
        for j in chosen:
            for i, lvl in enumerate(columns[j][1]):
                targets[i][j] = lvl
        return MicroPlan(targets)
    return IssuePlan([columns[j][0] if j in chosen else 0 for j in range(inst.n)])


def oracle_min_budget(inst: Instance, method: Method, criterion: Criterion) -> SolveReport:
    """Exact minimum spend that wins the whole agenda, by enumeration."""
    method, criterion = Method(method), Criterion(criterion)
    if method is Method.VB:
        best = _voter_search(inst, criterion, lambda bits: bits == inst.agenda)
        if best is None:
            return _report(inst, None, None, None)
        return _report(inst, best[0], VoterPlan(best[1]), None)
    columns = _per_column(inst, method, criterion)
    if any(c is None for c in columns):
        return _report(inst, None, None, None)
    per_issue = tuple(c[0] for c in columns)
    plan = _columns_plan(inst, method, set(range(inst.n)), columns)
    return _report(inst, sum(per_issue), plan, per_issue)


def oracle_weighted(inst: Instance, method: Method, criterion: Criterion) -> SolveReport:
    """Exact minimum spend reaching matched issue weight at least the objective."""
    method, criterion = Method(method), Criterion(criterion)
    if inst.weights is None:
        raise ValueError("instance has no issue weights")
    weights, goal = inst.weights, inst.objective

    def matched(bits):
        return sum(w for w, b, z in zip(weights, bits, inst.agenda) if b == z) >= goal

    if method is Method.VB:
        best = _voter_search(inst, criterion, matched)
        if best is None:
            return _report(inst, None, None, None)
        return _report(inst, best[0], VoterPlan(best[1]), None)

    columns = _per_column(inst, method, criterion)
    winnable = [j for j in range(inst.n) if columns[j] is not None]
    best = None
    for r in range(len(winnable) + 1):
        for subset in itertools.combinations(winnable, r):
            if sum(weights[j] for j in subset) < goal:
                continue
            price = sum(columns[j][0] for j in subset)
            if best is None or price < best[0]:
                best = (price, set(subset))
    if best is None:
        return _report(inst, None, None, None)
    return _report(inst, best[0], _columns_plan(inst, method, best[1], columns), None)


def oracle_exact_spend(inst: Instance, criterion: Criterion) -> bool:
    """Whether some micro plan costs exactly the budget and wins the agenda."""
    criterion = Criterion(criterion)
    pairs = [(i, j) for i in range(inst.m) for j in range(inst.n)]
    options = [_micro_options(inst, i, j) for i, j in pairs]
    _check_size(math.prod(len(o) for o in options), "exact-spend enumeration")
    levels = [list(r) for r in inst.prob]
    budget = inst.budget

    def search(p: int, spent) -> bool:
        if spent > budget:
            return False
        if p == len(pairs):
            return spent == budget and evaluate_levels(inst, levels, criterion).bits == inst.agenda
        i, j = pairs[p]
        for lvl, c in options[p]:
            levels[i][j] = lvl
            if search(p + 1, spent + c):
                return True
        levels[i][j] = inst.prob[i][j]
        return False

    return search(0, 0)
