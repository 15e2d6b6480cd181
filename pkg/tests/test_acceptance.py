"""Acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line to the terminal.
Run ``pytest tests/test_acceptance.py -v`` to see them.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

from lobbying.errors import InfeasibleIssue
from lobbying.generators import (
    GenConfig,
    from_knapsack,
    from_optimal_lobbying,
    from_subset_sum,
    gen_random,
)
from lobbying.hard import (
    greedy_vb,
    kernel_split,
    kernelize_vb,
    solve_vb_exact,
    solve_weighted_mb_ib,
    within_ratio_bound,
)
from lobbying.model import (
    Comparison,
    Criterion,
    Instance,
    Method,
    apply_bribery,
    cover_numbers,
    evaluate,
    example1,
    normalize_agenda,
    plan_cost,
    wins_agenda,
)
from lobbying.oracle import oracle_exact_spend, oracle_min_budget, oracle_weighted
from lobbying.poly import solve_ib, solve_mb
from lobbying.schedule import ScheduleInstance, min_cost_schedule, schedule_oracle

SM, AM = Criterion.SM, Criterion.AM
SMALL = GenConfig(m=(1, 3), n=(1, 3), k=(0, 3), max_cost=9)


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def seeded(cfg, count, seed):
    rng = random.Random(seed)
    return [gen_random(cfg, rng) for _ in range(count)]


def optimized(inst, method, criterion):
    """Optimized min cost, or None when some issue cannot be won."""
    try:
        if method is Method.MB:
            return solve_mb(inst, criterion)
        if method is Method.IB:
            return solve_ib(inst, criterion)
        return solve_vb_exact(inst, criterion)
    except InfeasibleIssue:
        return None


def test_criterion_1_example_evaluations(report):
    inst = example1()
    start = time.perf_counter()
    reps = 200
    for _ in range(reps):
        sm, am = evaluate(inst, SM), evaluate(inst, AM)
    per_call = (time.perf_counter() - start) / (2 * reps)
    ok = sm.bits == (0, 0, 0) and am.bits == (1, 0, 0) and per_call < 1e-3
    report(1, ok, f"SM={sm} AM={am} ({per_call * 1e6:.0f} us per evaluation)")


def brute_level_deficit(inst, j):
    """Fewest single-level raises that win issue j under AM, by enumeration."""
    norm = normalize_agenda(inst)
    base = [norm.prob[i][j] for i in range(norm.m)]
    best = None
    for levels in itertools.product(*(range(a, norm.k + 2) for a in base)):
        if inst.comparison is Comparison.WEAK:
            won = Fraction(sum(levels), (norm.k + 1) * norm.m) >= norm.threshold
        else:
            won = Fraction(sum(levels), (norm.k + 1) * norm.m) > norm.threshold
        if won:
            steps = sum(levels) - sum(base)
            best = steps if best is None else min(best, steps)
    return best


def test_criterion_2_cover_numbers(report):
    inst = example1(threshold=Fraction(3, 5), comparison=Comparison.WEAK)
    cover = cover_numbers(inst, AM)
    brute = tuple(brute_level_deficit(inst, j) for j in range(inst.n))
    ok = cover.per_issue[:2] == (0, 2) and cover.per_issue == brute == (0, 2, 3) and cover.total == 5
    report(2, ok, f"cover={cover.per_issue} enumerated={brute} N={cover.total}")


def test_criterion_3_solvers_match_oracle(report):
    start = time.perf_counter()
    mismatches, checked = [], 0
    for seed, (method, crit) in enumerate(itertools.product(Method, Criterion)):
        for idx, inst in enumerate(seeded(SMALL, 200, 30 + seed)):
            got = optimized(inst, method, crit)
            want = oracle_min_budget(inst, method, crit)
            got_cost = None if got is None else got.min_cost
            checked += 1
            if got_cost != want.min_cost:
                mismatches.append((method.value, crit.value, idx, got_cost, want.min_cost))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 60
    report(3, ok, f"{checked} instances, {len(mismatches)} mismatches, {elapsed:.1f} s {mismatches[:3]}")


def test_criterion_4_schedule_dp(report):
    rng = random.Random(4)
    start = time.perf_counter()
    bad = 0
    for _ in range(500):
        paths = []
        budget = rng.randint(0, 20)
        for _ in range(rng.randint(1, 5)):
            length = rng.randint(0, min(6, budget))
            budget -= length
            paths.append([rng.randint(0, 50) for _ in range(length)])
        total = sum(map(len, paths))
        si = ScheduleInstance(paths, rng.randint(0, total + 1))
        bad += min_cost_schedule(si) != schedule_oracle(si)
    elapsed = time.perf_counter() - start
    report(4, bad == 0 and elapsed < 10, f"500 instances, {bad} mismatches, {elapsed:.2f} s")


def test_criterion_5_greedy_ratio(report):
    start = time.perf_counter()
    failures, solved, worst = [], 0, Fraction(1)
    for crit in Criterion:
        for idx, inst in enumerate(seeded(SMALL, 200, 50 + len(crit.value))):
            trace = greedy_vb(inst, crit)
            if trace is None:
                continue
            solved += 1
            opt = solve_vb_exact(inst, crit).min_cost
            if opt:
                worst = max(worst, Fraction(trace.total_cost, opt))
            if trace.total_cost < opt or not within_ratio_bound(trace.total_cost, opt, trace.cover_number):
                failures.append((crit.value, idx, trace.total_cost, opt, trace.cover_number))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    report(5, ok, f"{solved} solvable instances, worst ratio {float(worst):.3f}, {elapsed:.1f} s {failures[:3]}")


def subset_sum_yes(values, target):
    return any(sum(c) == target for r in range(len(values) + 1) for c in itertools.combinations(values, r))


def optimal_lobbying_yes(matrix, target, b):
    m, n = len(matrix), len(target)
    for r in range(min(b, m) + 1):
        for chosen in itertools.combinations(range(m), r):
            votes = [list(target) if i in chosen else matrix[i] for i in range(m)]
            if all(2 * sum(votes[i][j] == target[j] for i in range(m)) > m for j in range(n)):
                return True
    return False


def test_criterion_6_reductions(report):
    rng = random.Random(6)
    start = time.perf_counter()
    bad = {"subset sum": 0, "knapsack": 0, "lobbying": 0}
    for _ in range(100):
        values = [rng.randint(1, 30) for _ in range(rng.randint(1, 10))]
        target = rng.randint(1, sum(values) + 5)
        bad["subset sum"] += oracle_exact_spend(from_subset_sum(values, target), SM) != subset_sum_yes(values, target)
    for _ in range(100):
        n = rng.randint(1, 12)
        w = [rng.randint(1, 20) for _ in range(n)]
        p = [rng.randint(1, 20) for _ in range(n)]
        cap, goal = rng.randint(0, sum(w)), rng.randint(0, sum(p))
        yes = any(
            sum(w[j] for j in s) <= cap and sum(p[j] for j in s) >= goal
            for r in range(n + 1)
            for s in itertools.combinations(range(n), r)
        )
        bad["knapsack"] += solve_weighted_mb_ib(from_knapsack(w, p, cap, goal), Method.MB, SM).feasible != yes
    for _ in range(100):
        m, n = rng.randint(1, 4), rng.randint(1, 3)
        matrix = [[rng.randint(0, 1) for _ in range(n)] for _ in range(m)]
        target = [rng.randint(0, 1) for _ in range(n)]
        b = rng.randint(0, m)
        inst = from_optimal_lobbying(matrix, target, b)
        yes = optimal_lobbying_yes(matrix, target, b)
        found = oracle_min_budget(inst, Method.VB, SM)
        bad["lobbying"] += (found.feasible and found.min_cost <= inst.budget) != yes
    elapsed = time.perf_counter() - start
    ok = not any(bad.values()) and elapsed < 60
    report(6, ok, f"100 instances per reduction, mismatches {bad}, {elapsed:.1f} s")


def test_criterion_7_weighted_dp(report):
    cfg = GenConfig(m=(1, 3), n=(1, 8), k=(0, 2), max_cost=9, budget=(0, 50), weights=(1, 5))
    start = time.perf_counter()
    bad, count = [], 0
    for idx, inst in enumerate(seeded(cfg, 150, 7)):
        for method in (Method.MB, Method.IB):
            for crit in Criterion:
                got = solve_weighted_mb_ib(inst, method, crit)
                want = oracle_weighted(inst, method, crit)
                count += 1
                if (got.feasible, got.min_cost) != (want.feasible, want.min_cost):
                    bad.append((idx, method.value, crit.value))
    elapsed = time.perf_counter() - start
    report(7, not bad and elapsed < 30, f"{count} comparisons, {len(bad)} mismatches, {elapsed:.1f} s {bad[:3]}")


def with_duplicates(base, rng):
    prob, cost = [], []
    for i in range(base.m):
        for _ in range(rng.randint(1, 5)):
            prob.append(base.prob[i])
            cost.append(base.cost[i])
    return Instance(k=base.k, prob=tuple(prob), cost=tuple(cost), agenda=base.agenda,
                    threshold=base.threshold, comparison=base.comparison, budget=0)


def test_criterion_8_kernel(report):
    rng = random.Random(8)
    cfg = GenConfig(m=(1, 3), n=(1, 2), k=(0, 2), max_cost=3)
    start = time.perf_counter()
    checked = shrunk = 0
    bad = []
    while checked < 100:
        inst = with_duplicates(gen_random(cfg, rng), rng)
        try:
            opt = solve_vb_exact(inst, SM).min_cost
        except InfeasibleIssue:
            continue
        inst = Instance(**{**inst.__dict__, "budget": max(0, opt + rng.randint(-1, 2))})
        if opt > inst.budget:
            continue
        checked += 1
        shrunk += bool(kernel_split(inst)[1])
        kernel_opt = solve_vb_exact(kernelize_vb(inst), SM).min_cost
        if kernel_opt != opt:
            bad.append((checked, opt, kernel_opt))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    report(8, ok, f"{checked} instances ({shrunk} reduced), {len(bad)} mismatches, {elapsed:.1f} s")


def feasible_plan_ok(inst, rep, crit):
    if not rep.feasible:
        return True
    return plan_cost(inst, rep.plan) == rep.min_cost and wins_agenda(apply_bribery(inst, rep.plan), crit)


def at_half_strict(inst):
    return inst.threshold == Fraction(1, 2) and inst.comparison is Comparison.STRICT


def test_criterion_9_structural_invariants(report):
    failures = {}

    def fail(name):
        failures[name] = failures.get(name, 0) + 1

    for inst in seeded(SMALL, 300, 9):
        norm = normalize_agenda(inst)
        for crit in Criterion:
            raw, flat = evaluate(inst, crit).bits, evaluate(norm, crit).bits
            if any(f != (r == z) for f, r, z in zip(flat, raw, inst.agenda)):
                fail("normalization")
            for method in Method:
                rep = optimized(inst, method, crit)
                if rep is not None and not feasible_plan_ok(inst, rep, crit):
                    fail("plan feasibility")
        if (inst.m == 1 or (inst.k == 0 and at_half_strict(inst))) and evaluate(inst, SM) != evaluate(inst, AM):
            fail("criteria coincidence")

    for inst in seeded(GenConfig(m=(1, 1)), 100, 91):
        for crit in Criterion:
            a, b = optimized(inst, Method.MB, crit), optimized(inst, Method.IB, crit)
            if (a and a.min_cost) != (b and b.min_cost):
                fail("m=1 MB=IB")
    for inst in seeded(GenConfig(n=(1, 1)), 100, 92):
        for crit in Criterion:
            a, b = optimized(inst, Method.MB, crit), optimized(inst, Method.VB, crit)
            if (a and a.min_cost) != (b and b.min_cost):
                fail("n=1 MB=VB")
    # with certain votes the criteria agree at t = 1/2 strict; other thresholds split them
    half = GenConfig(k=(0, 0), m=(1, 5), thresholds=(Fraction(1, 2),), comparisons=(Comparison.STRICT,))
    for inst in seeded(half, 100, 93):
        if evaluate(inst, SM) != evaluate(inst, AM):
            fail("criteria coincidence")
    report(9, not failures, f"failures {failures or 'none'}")
