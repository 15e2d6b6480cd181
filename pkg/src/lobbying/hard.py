"""Solvers for the NP-hard variants.

Voter bribery is solved exactly by a pruned search over per-voter spends
and approximately by the greedy cover procedure.  Issue-weighted micro and
issue bribery reduce to 0/1 knapsack over per-issue prices, and exact-spend
microbribery to a subset-sum style reachability table over dollar amounts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath

from .errors import Infeasible, InfeasibleIssue, InstanceTooLarge
from .model import (
    Comparison,
    Criterion,
    Instance,
    IssuePlan,
    Method,
    VoterPlan,
    compares_above,
    cover_numbers,
    crossing_cost,
    lowest_winning_level,
    majority_size,
    normalize_agenda,
    reachable_level,
)
from .poly import ib_issue, mb_am_issue, mb_sm_issue, micro_plan
from .report import SolveReport, SolverTag, enumeration_limit


def issue_goals(norm: Instance, criterion: Criterion) -> List[int]:
    """Per-issue target for the summed column statistic.

    SM sums 0/1 "clears the threshold" flags, AM sums oriented levels; an
    issue is won exactly when its sum reaches the goal.
    """
    if criterion is Criterion.SM:
        return [majority_size(norm.m)] * norm.n
    num, den = norm.threshold.numerator, norm.threshold.denominator
    scaled = num * (norm.k + 1) * norm.m
    if norm.comparison is Comparison.STRICT:
        goal = scaled // den + 1
    else:
        goal = -(-scaled // den)
    return [goal] * norm.n


def _contribution(norm: Instance, criterion: Criterion, level: int) -> int:
    if criterion is Criterion.SM:
        return 1 if compares_above(norm, level) else 0
    return level


def _voter_levels(norm: Instance, i: int, spend) -> Tuple[int, ...]:
    share = Fraction(spend, norm.n)
    out = []
    for j in range(norm.n):
        base, row = norm.oriented(i, j)
        out.append(reachable_level(row, base, share))
    return tuple(out)


def _candidate_spends(norm: Instance, i: int, criterion: Criterion) -> List[int]:
    """Spends worth trying on voter i: those where some share first reaches a price.

    Under SM only crossing the threshold matters, so only crossing prices count.
    """
    n = norm.n
    spends = {0}
    for j in range(n):
        if criterion is Criterion.SM:
            c = crossing_cost(norm, i, j)
            prices = [c] if c else []
        else:
            base, row = norm.oriented(i, j)
            prices = row[base + 1:]
        spends.update(math.ceil(n * c) for c in prices)
    return sorted(spends)


@dataclass
class _Voter:
    spends: List[int]
    contrib: List[Tuple[int, ...]]
    key: tuple


def _voter_table(norm: Instance, criterion: Criterion) -> List[_Voter]:
    table = []
    for i in range(norm.m):
        spends = _candidate_spends(norm, i, criterion)
        contrib = [
            tuple(_contribution(norm, criterion, lvl) for lvl in _voter_levels(norm, i, d))
            for d in spends
        ]
        key = tuple(norm.oriented(i, j) for j in range(norm.n))
        table.append(_Voter(spends, contrib, key))
    count = math.prod(len(v.spends) for v in table)
    limit = enumeration_limit()
    if count > limit:
        raise InstanceTooLarge(f"{count} spend combinations exceed the limit of {limit}")
    return table


def _vb_search(norm: Instance, criterion: Criterion, goals: Sequence[int], weights=None, objective=None):
    """Cheapest voter plan, as (cost, spends) or None.

    Without weights every issue must reach its goal; with weights the
    issues reaching their goal must carry at least ``objective`` weight.
    Identical voters are enumerated in nonincreasing spend order only.
    """
    table = _voter_table(norm, criterion)
    m, n = norm.m, norm.n
    # best achievable column sums from voters p.. onward
    rest = [[0] * n for _ in range(m + 1)]
    for p in range(m - 1, -1, -1):
        top = table[p].contrib[-1]
        rest[p] = [rest[p + 1][j] + top[j] for j in range(n)]
    # cheapest spend for voter p to contribute on issue j under SM
    cheapest = None
    if criterion is Criterion.SM and weights is None:
        cheapest = []
        for v in table:
            row = []
            for j in range(n):
                row.append(min((d for d, c in zip(v.spends, v.contrib) if c[j]), default=None))
            cheapest.append(row)

    def satisfied(sums) -> bool:
        if weights is None:
            return all(s >= g for s, g in zip(sums, goals))
        return sum(w for w, s, g in zip(weights, sums, goals) if s >= g) >= objective

    def lower_bound(p, sums) -> Optional[int]:
        """Optimistic extra spend, None when the goal is out of reach."""
        if weights is not None:
            reach = [sums[j] + rest[p][j] >= goals[j] for j in range(n)]
            return 0 if sum(w for w, r in zip(weights, reach) if r) >= objective else None
        bound = 0
        for j in range(n):
            short = goals[j] - sums[j]
            if short <= 0:
                continue
            if short > rest[p][j]:
                return None
            if cheapest is not None:
                prices = sorted(cheapest[q][j] for q in range(p, m) if cheapest[q][j] is not None)
                bound = max(bound, sum(prices[:short]))
        return bound

    best_cost: List[Optional[int]] = [None]
    best_plan: List[Optional[Tuple[int, ...]]] = [None]
    chosen = [0] * m
    picks = [0] * m

    def search(p: int, sums: List[int], spent: int):
        if p == m:
            if satisfied(sums) and (best_cost[0] is None or spent < best_cost[0]):
                best_cost[0], best_plan[0] = spent, tuple(chosen)
            return
        lb = lower_bound(p, sums)
        if lb is None or (best_cost[0] is not None and spent + lb >= best_cost[0]):
            return
        voter = table[p]
        last = len(voter.spends) - 1
        if p > 0 and table[p - 1].key == voter.key:
            last = picks[p - 1]
        for x in range(last + 1):
            d = voter.spends[x]
            if best_cost[0] is not None and spent + d >= best_cost[0]:
                break
            chosen[p], picks[p] = d, x
            c = voter.contrib[x]
            search(p + 1, [s + cj for s, cj in zip(sums, c)], spent + d)
        chosen[p], picks[p] = 0, 0

    base_sums = [0] * n
    search(0, base_sums, 0)
    if best_cost[0] is None:
        return None
    return best_cost[0], best_plan[0]


def _first_unwinnable(norm: Instance, criterion: Criterion) -> Optional[int]:
    try:
        cover_numbers(norm, criterion)
    except Infeasible as exc:
        return exc.issue
    return None


def solve_vb_exact(inst: Instance, criterion: Criterion) -> SolveReport:
    """Minimum-cost voter bribery plan winning the whole agenda."""
    criterion = Criterion(criterion)
    norm = normalize_agenda(inst)
    bad = _first_unwinnable(norm, criterion)
    if bad is not None:
        raise InfeasibleIssue(f"issue {bad} cannot be won by voter bribery", issue=bad)
    found = _vb_search(norm, criterion, issue_goals(norm, criterion))
    cost, spends = found
    return SolveReport(cost <= inst.budget, cost, VoterPlan(spends), None, SolverTag.EXACT_BRUTE)


def solve_weighted_vb_exact(inst: Instance, criterion: Criterion) -> SolveReport:
    """Minimum-cost voter plan whose won issues weigh at least the objective."""
    criterion = Criterion(criterion)
    if inst.weights is None:
        raise ValueError("instance has no issue weights")
    norm = normalize_agenda(inst)
    found = _vb_search(norm, criterion, issue_goals(norm, criterion), inst.weights, inst.objective)
    if found is None:
        return SolveReport(False, None, None, None, SolverTag.EXACT_BRUTE)
    cost, spends = found
    return SolveReport(cost <= inst.budget, cost, VoterPlan(spends), None, SolverTag.EXACT_BRUTE)


# ---------------------------------------------------------------------------
# kernelization


def voter_profiles(inst: Instance) -> List[Tuple[Optional[int], ...]]:
    """Per voter, the dollars needed to carry each issue across the threshold.

    None marks an issue the voter cannot be carried across within the budget.
    """
    norm = normalize_agenda(inst)
    budget = inst.budget
    profiles = []
    for i in range(norm.m):
        row = []
        for j in range(norm.n):
            c = crossing_cost(norm, i, j)
            w = None if c is None else math.ceil(norm.n * c)
            row.append(w if w is not None and w <= budget else None)
        profiles.append(tuple(row))
    return profiles


def kernel_split(inst: Instance) -> Tuple[List[int], List[int]]:
    """Indices of voters kept bribable and of voters frozen by :func:`kernelize_vb`."""
    seen: Dict[tuple, int] = {}
    kept, frozen = [], []
    for i, profile in enumerate(voter_profiles(inst)):
        seen[profile] = seen.get(profile, 0) + 1
        (kept if seen[profile] <= inst.budget else frozen).append(i)
    return kept, frozen


def kernelize_vb(inst: Instance, criterion: Criterion = Criterion.SM) -> Instance:
    """Shrink a strict-majority voter-bribery instance to its relevant voters.

    At most ``budget`` voters per profile stay bribable; the rest keep their
    votes but are replaced by the fewest stand-in voters that leave every
    issue's yes/no margin unchanged.  Stand-ins cost more than the budget
    to move, so the optimum is preserved whenever it is within budget.
    """
    if Criterion(criterion) is not Criterion.SM:
        raise ValueError("kernelization is defined for strict majority only")
    kept, frozen = kernel_split(inst)
    if not frozen:
        return inst
    norm = normalize_agenda(inst)
    n, k1 = norm.n, norm.k + 1
    margin = [0] * n
    for i in frozen:
        for j in range(n):
            margin[j] += 1 if compares_above(norm, norm.oriented(i, j)[0]) else -1
    width = max(abs(x) for x in margin)
    if not kept and width == 0:
        width = 2  # a tied pair keeps the instance nonempty

    prob = [inst.prob[i] for i in kept]
    cost = [inst.cost[i] for i in kept]
    blocked = inst.budget + 1
    for v in range(width):
        levels, rows = [], []
        for j in range(n):
            if 2 * v < width + margin[j]:
                lvl, row = k1, (None,) * k1 + (0,)
            else:
                lvl, row = 0, (0,) + (blocked,) * k1
            if not inst.agenda[j]:
                lvl, row = k1 - lvl, row[::-1]
            levels.append(lvl)
            rows.append(row)
        prob.append(tuple(levels))
        cost.append(tuple(rows))
    return replace(inst, prob=tuple(prob), cost=tuple(cost))


# ---------------------------------------------------------------------------
# greedy approximation


@dataclass(frozen=True)
class GreedyStep:
    voter: int
    dollars: int
    issues: Tuple[int, ...]


@dataclass(frozen=True)
class GreedyTrace:
    steps: Tuple[GreedyStep, ...]
    total_cost: int
    cover_number: int
    m: int

    @property
    def ratio_bound(self) -> float:
        """ln(N) + 1 for the instance's (strict) cover number N."""
        return math.log(self.cover_number) + 1 if self.cover_number > 0 else 1.0

    def plan(self) -> VoterPlan:
        dollars = [0] * self.m
        for step in self.steps:
            dollars[step.voter] += step.dollars
        return VoterPlan(dollars)


def greedy_vb(inst: Instance, criterion: Criterion) -> Optional[GreedyTrace]:
    """Greedy cover for minimum-budget voter bribery; None if some issue is unwinnable.

    Each round buys the voter move with the lowest price per unit of cover:
    under AM the cheapest next-level raise of a voter (counting every open
    issue it lifts), under SM the cheapest (voter, spend) pair counted by
    how many open issues the voter crosses.  Money always splits over all
    issues, including ones already won.
    """
    criterion = Criterion(criterion)
    norm = normalize_agenda(inst)
    try:
        cover = cover_numbers(norm, criterion)
    except Infeasible:
        return None
    m, n = norm.m, norm.n
    goals = issue_goals(norm, criterion)
    spent = [0] * m
    levels = [list(norm.prob[i]) for i in range(m)]
    rows = [[norm.oriented(i, j)[1] for j in range(n)] for i in range(m)]
    cross = lowest_winning_level(norm)
    steps = []

    def open_issues():
        out = []
        for j in range(n):
            s = sum(_contribution(norm, criterion, levels[i][j]) for i in range(m))
            if s < goals[j]:
                out.append(j)
        return out

    while True:
        unwon = open_issues()
        if not unwon:
            break
        best = None  # (ratio, voter, extra, issues)
        for v in range(m):
            # dollars (on top of what v already got) that first move each open issue
            prices = {}
            for j in unwon:
                lvl = levels[v][j]
                if criterion is Criterion.AM:
                    if lvl >= norm.k + 1:
                        continue
                    target = rows[v][j][lvl + 1]
                else:
                    if compares_above(norm, lvl):
                        continue
                    target = rows[v][j][cross]
                prices[j] = math.ceil(n * target) - spent[v]
            if not prices:
                continue
            options = [min(prices.values())] if criterion is Criterion.AM else sorted(set(prices.values()))
            for extra in options:
                moved = tuple(j for j in unwon if j in prices and prices[j] <= extra)
                key = (Fraction(extra, len(moved)), v, extra)
                if best is None or key < best[0]:
                    best = (key, v, extra, moved)
        if best is None:
            return None
        _, v, extra, moved = best
        spent[v] += extra
        levels[v] = list(_voter_levels(norm, v, spent[v]))
        steps.append(GreedyStep(v, extra, moved))

    return GreedyTrace(tuple(steps), sum(s.dollars for s in steps), cover.total, m)


def within_ratio_bound(greedy_cost, optimum, cover_number: int) -> bool:
    """Exact test of ``greedy_cost <= (ln N + 1) * optimum``.

    The harmonic number H(N) never exceeds ln N + 1, so the rational test
    against H(N) settles most cases; otherwise exp(ratio - 1) <= N is
    checked at high precision.
    """
    if greedy_cost <= optimum:
        return True
    if cover_number < 1 or optimum == 0:
        return False
    harmonic = sum(Fraction(1, r) for r in range(1, cover_number + 1))
    if greedy_cost <= harmonic * optimum:
        return True
    with mpmath.workdps(60):
        ratio = mpmath.mpf(greedy_cost) / mpmath.mpf(optimum)
        return bool(mpmath.exp(ratio - 1) <= cover_number)


# ---------------------------------------------------------------------------
# issue weights


def _issue_prices(norm: Instance, method: Method, criterion: Criterion):
    """Per issue (price, move) with move the micro targets or the issue spend; None if unwinnable."""
    out = []
    for j in range(norm.n):
        if method is Method.IB:
            d = ib_issue(norm, j, criterion)
            out.append(None if d is None else (d, d))
        else:
            found = mb_sm_issue(norm, j) if criterion is Criterion.SM else mb_am_issue(norm, j)
            out.append(found)
    return out


def solve_weighted_mb_ib(inst: Instance, method: Method, criterion: Criterion) -> SolveReport:
    """Issue-weighted micro or issue bribery as 0/1 knapsack over per-issue prices.

    The table is indexed by dollars up to the total price of all winnable
    issues, so the reported minimum is exact even when it exceeds the budget.
    """
    method, criterion = Method(method), Criterion(criterion)
    if method is Method.VB:
        raise ValueError("use solve_weighted_vb_exact for voter bribery")
    if inst.weights is None:
        raise ValueError("instance has no issue weights")
    norm = normalize_agenda(inst)
    priced = _issue_prices(norm, method, criterion)
    items = [j for j in range(inst.n) if priced[j] is not None]
    cap = sum(priced[j][0] for j in items)
    if cap * max(len(items), 1) > enumeration_limit():
        raise InstanceTooLarge(f"knapsack table of {cap + 1} columns is too large")

    # profit[c]: best total weight spending at most c dollars
    profit = [0] * (cap + 1)
    took = []
    for j in items:
        price, weight = priced[j][0], inst.weights[j]
        mark = [False] * (cap + 1)
        for c in range(cap, price - 1, -1):
            cand = profit[c - price] + weight
            if cand > profit[c]:
                profit[c], mark[c] = cand, True
        took.append(mark)

    per_issue = tuple(None if p is None else p[0] for p in priced)
    need = inst.objective
    best = next((c for c in range(cap + 1) if profit[c] >= need), None)
    if best is None:
        return SolveReport(False, None, None, per_issue, SolverTag.KNAPSACK_DP)

    chosen, c = [], best
    for idx in range(len(items) - 1, -1, -1):
        if took[idx][c]:
            chosen.append(items[idx])
            c -= priced[items[idx]][0]
    spent = sum(priced[j][0] for j in chosen)
    if method is Method.IB:
        plan = IssuePlan([priced[j][1] if j in chosen else 0 for j in range(inst.n)])
    else:
        plan = micro_plan(inst, {j: priced[j][1] for j in chosen})
    return SolveReport(spent <= inst.budget, spent, plan, per_issue, SolverTag.KNAPSACK_DP)


# ---------------------------------------------------------------------------
# exact spend


def _exact_issue_table(norm: Instance, j: int, criterion: Criterion, goal: int, budget: int):
    """Reachable (progress -> cost bitmask) tables after each voter of column j."""
    full = (1 << (budget + 1)) - 1
    tables = [{0: 1}]
    for i in range(norm.m):
        base, row = norm.oriented(i, j)
        options = []
        for lvl in range(base, norm.k + 2):
            price = row[lvl]
            if price != int(price):
                raise ValueError("exact-spend solving needs integer prices")
            if price <= budget:
                options.append((lvl, int(price), _contribution(norm, criterion, lvl)))
        nxt: Dict[int, int] = {}
        for progress, mask in tables[-1].items():
            for lvl, price, gain in options:
                p = min(goal, progress + gain)
                nxt[p] = nxt.get(p, 0) | ((mask << price) & full)
        tables.append({p: mk for p, mk in nxt.items() if mk})
    return tables


def _bits(mask: int):
    c = 0
    while mask:
        if mask & 1:
            yield c
        mask >>= 1
        c += 1


def solve_exact_mb(inst: Instance, criterion: Criterion) -> SolveReport:
    """Can micro bribery win the agenda spending exactly the budget?

    For each issue the set of exact spends that win it is built as a bitmask
    over dollar amounts; issues are then combined like subset sum.
    """
    criterion = Criterion(criterion)
    budget = inst.budget
    norm = normalize_agenda(inst)
    states = (budget + 1) * (norm.m * (norm.k + 2)) * norm.n
    if states > enumeration_limit():
        raise InstanceTooLarge(f"exact-spend table with {states} cells exceeds the limit")
    goals = issue_goals(norm, criterion)
    full = (1 << (budget + 1)) - 1

    issue_tables = []
    totals = [1]
    for j in range(norm.n):
        tables = _exact_issue_table(norm, j, criterion, goals[j], budget)
        wins = tables[-1].get(goals[j], 0)
        issue_tables.append(tables)
        acc = 0
        for c in _bits(wins):
            acc |= (totals[-1] << c) & full
        totals.append(acc)

    if not (totals[-1] >> budget) & 1:
        return SolveReport(False, None, None, None, SolverTag.EXACT_POLY)

    moves, per_issue = {}, [0] * norm.n
    remaining = budget
    for j in range(norm.n - 1, -1, -1):
        tables = issue_tables[j]
        wins = tables[-1][goals[j]]
        spend = next(c for c in _bits(wins) if c <= remaining and (totals[j] >> (remaining - c)) & 1)
        per_issue[j] = spend
        moves[j] = _trace_column(norm, j, criterion, goals[j], tables, spend)
        remaining -= spend
    plan = micro_plan(inst, moves)
    return SolveReport(True, budget, plan, tuple(per_issue), SolverTag.EXACT_POLY)


def _trace_column(norm, j, criterion, goal, tables, spend) -> Dict[int, int]:
    moves = {}
    progress, cost = goal, spend
    for i in range(norm.m - 1, -1, -1):
        base, row = norm.oriented(i, j)
        prev = tables[i]
        done = False
        for lvl in range(base, norm.k + 2):
            price = int(row[lvl])
            if price > cost:
                continue
            gain = _contribution(norm, criterion, lvl)
            for p, mask in prev.items():
                if min(goal, p + gain) == progress and (mask >> (cost - price)) & 1:
                    if lvl != base:
                        moves[i] = lvl
                    progress, cost, done = p, cost - price, True
                    break
            if done:
                break
    return moves
