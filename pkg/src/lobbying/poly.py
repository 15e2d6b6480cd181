"""Exact polynomial-time minimum-budget solvers for microbribery and issue bribery.

Under both methods the issues are independent: money spent on one column
never moves another.  Each solver therefore computes the cheapest way to
win every issue separately and adds them up.  The per-issue routines are
shared with the issue-weighted knapsack solver.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .errors import Infeasible, InfeasibleIssue
from .model import (
    Criterion,
    Instance,
    IssuePlan,
    MicroPlan,
    checked_sum,
    cover_numbers,
    crossing_cost,
    issue_won,
    lowest_winning_level,
    majority_size,
    normalize_agenda,
    reachable_level,
)
from .report import SolveReport, SolverTag
from .schedule import ScheduleInstance, schedule_prefixes

# per-issue result: (dollars, {voter: oriented target level}) or None if unwinnable
IssueSolution = Optional[Tuple[int, Dict[int, int]]]


def mb_sm_issue(norm: Instance, j: int) -> IssueSolution:
    """Pay the cheapest voters until a strict majority clears the threshold."""
    need = majority_size(norm.m)
    prices = []
    for i in range(norm.m):
        c = crossing_cost(norm, i, j)
        if c is not None:
            prices.append((c, i))
    if len(prices) < need:
        return None
    prices.sort()
    target = lowest_winning_level(norm)
    chosen = prices[:need]
    moves = {i: target for c, i in chosen if c > 0}
    return checked_sum(c for c, _ in chosen), moves


def _level_deficit(norm: Instance, j: int) -> Optional[int]:
    try:
        return cover_numbers(_single_issue(norm, j), Criterion.AM).per_issue[0]
    except Infeasible:
        return None


def _single_issue(norm: Instance, j: int) -> Instance:
    return Instance(
        k=norm.k,
        prob=tuple((row[j],) for row in norm.prob),
        cost=tuple((rows[j],) for rows in norm.cost),
        agenda=(norm.agenda[j],),
        threshold=norm.threshold,
        comparison=norm.comparison,
        budget=norm.budget,
    )


def mb_am_schedule(norm: Instance, j: int) -> Optional[ScheduleInstance]:
    """Path Schedule instance whose optimum is the price of winning issue ``j``.

    One path per voter; its jobs are the successive one-level raises above
    the voter's current level, priced at the marginal cost of that step.
    """
    b = _level_deficit(norm, j)
    if b is None:
        return None
    paths = []
    for i in range(norm.m):
        base, row = norm.oriented(i, j)
        paths.append(tuple(row[h] - row[h - 1] for h in range(base + 1, norm.k + 2)))
    return ScheduleInstance(tuple(paths), b)


def mb_am_issue(norm: Instance, j: int) -> IssueSolution:
    si = mb_am_schedule(norm, j)
    if si is None:
        return None
    cost, lengths = schedule_prefixes(si.paths, si.q)
    moves = {}
    for i, x in enumerate(lengths):
        if x:
            moves[i] = norm.oriented(i, j)[0] + x
    return cost, moves


def ib_issue(norm: Instance, j: int, criterion: Criterion) -> Optional[int]:
    """Smallest integer spend on issue ``j`` that wins it.

    Each voter's level is a step function of its share ``d/m`` that only
    moves when the share reaches a price entry, so the optimum is 0 or
    ``m`` times some price in the column.
    """
    m = norm.m
    rows = [norm.oriented(i, j) for i in range(m)]
    prices = {c for base, row in rows for c in row[base + 1:] if c is not None}
    for d in sorted({0} | {math.ceil(m * c) for c in prices}):
        share = Fraction(d, m)
        levels = [reachable_level(row, base, share) for base, row in rows]
        if issue_won(norm, levels, criterion):
            return d
    return None


def _stored(inst: Instance, j: int, oriented_level: int) -> int:
    return oriented_level if inst.agenda[j] else inst.k + 1 - oriented_level


def micro_plan(inst: Instance, moves_per_issue) -> MicroPlan:
    """MicroPlan on the original instance from oriented per-issue moves."""
    targets = [list(r) for r in inst.prob]
    for j, moves in moves_per_issue.items():
        for i, lvl in moves.items():
            targets[i][j] = _stored(inst, j, lvl)
    return MicroPlan(targets)


def _mb_report(inst: Instance, issue_fn) -> SolveReport:
    norm = normalize_agenda(inst)
    costs, moves = [], {}
    for j in range(inst.n):
        found = issue_fn(norm, j)
        if found is None:
            raise InfeasibleIssue(f"issue {j} cannot be won by microbribery", issue=j)
        costs.append(found[0])
        moves[j] = found[1]
    total = checked_sum(costs)
    return SolveReport(
        feasible=total <= inst.budget,
        min_cost=total,
        plan=micro_plan(inst, moves),
        per_issue_cost=tuple(costs),
        solver=SolverTag.EXACT_POLY,
    )


def solve_mb_sm(inst: Instance) -> SolveReport:
    return _mb_report(inst, mb_sm_issue)


def solve_mb_am(inst: Instance) -> SolveReport:
    return _mb_report(inst, mb_am_issue)


def solve_mb(inst: Instance, criterion: Criterion) -> SolveReport:
    if Criterion(criterion) is Criterion.SM:
        return solve_mb_sm(inst)
    return solve_mb_am(inst)


def solve_ib(inst: Instance, criterion: Criterion) -> SolveReport:
    criterion = Criterion(criterion)
    norm = normalize_agenda(inst)
    costs = []
    for j in range(inst.n):
        d = ib_issue(norm, j, criterion)
        if d is None:
            raise InfeasibleIssue(f"issue {j} cannot be won by issue bribery", issue=j)
        costs.append(d)
    total = checked_sum(costs)
    return SolveReport(
        feasible=total <= inst.budget,
        min_cost=total,
        plan=IssuePlan(costs),
        per_issue_cost=tuple(costs),
        solver=SolverTag.EXACT_POLY,
    )
