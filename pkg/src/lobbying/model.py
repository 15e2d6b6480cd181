"""Problem data model: instances, plans, outcomes and cover numbers.

Probabilities are stored as integer grid levels ``a`` on ``{0, ..., k+1}``
meaning ``a / (k+1)``.  All threshold comparisons are done in exact integer
arithmetic; no floating point value ever decides an outcome.

Most solvers work on the *oriented* view of an issue: for an agenda bit of
1 the oriented level is the stored level, for an agenda bit of 0 it is
``k+1 - level`` and the price row is reversed.  In the oriented view the
Lobby always wants levels to go up.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .errors import (
    ArithmeticOverflow,
    Infeasible,
    MissingAgendaSideCost,
    NonMonotoneCost,
    NonzeroBaseCost,
    ShapeMismatch,
    ValidationError,
    WrongDirection,
)

INT64_MAX = 2**63 - 1

Cost = Union[int, Fraction, None]
CostRow = Tuple[Cost, ...]


class Criterion(str, enum.Enum):
    SM = "sm"
    AM = "am"


class Method(str, enum.Enum):
    MB = "mb"
    IB = "ib"
    VB = "vb"


class Comparison(str, enum.Enum):
    STRICT = "strict"
    WEAK = "weak"


def _freeze(value):
    if isinstance(value, (list, tuple)):
        return tuple(_freeze(v) for v in value)
    return value


@dataclass(frozen=True)
class Instance:
    """A probabilistic lobbying instance.

    ``cost[i][j][l]`` is the price of moving voter ``i`` on issue ``j`` to
    level ``l``; ``None`` marks an entry the Lobby does not care about.
    Construction only coerces containers; call :func:`validate_instance`
    to check the model constraints.
    """

    k: int
    prob: Tuple[Tuple[int, ...], ...]
    cost: Tuple[Tuple[CostRow, ...], ...]
    agenda: Tuple[int, ...]
    threshold: Fraction = Fraction(1, 2)
    comparison: Comparison = Comparison.STRICT
    budget: int = 0
    weights: Optional[Tuple[int, ...]] = None
    objective: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "prob", _freeze(self.prob))
        object.__setattr__(self, "cost", _freeze(self.cost))
        object.__setattr__(self, "agenda", _freeze(self.agenda))
        if self.weights is not None:
            object.__setattr__(self, "weights", _freeze(self.weights))
        if not isinstance(self.threshold, Fraction):
            object.__setattr__(self, "threshold", Fraction(self.threshold))
        object.__setattr__(self, "comparison", Comparison(self.comparison))

    @property
    def m(self) -> int:
        return len(self.prob)

    @property
    def n(self) -> int:
        return len(self.agenda)

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def oriented(self, i: int, j: int) -> Tuple[int, CostRow]:
        """Level and price row of pair (i, j) seen in the agenda direction."""
        a = self.prob[i][j]
        row = self.cost[i][j]
        if self.agenda[j]:
            return a, row
        return self.k + 1 - a, row[::-1]

    def oriented_column(self, j: int) -> Tuple[int, ...]:
        return tuple(self.oriented(i, j)[0] for i in range(self.m))


@dataclass(frozen=True)
class Outcome:
    bits: Tuple[int, ...]

    def __str__(self):
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class MicroPlan:
    """Target level for every voter/issue pair (stored, not oriented, levels)."""

    targets: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "targets", _freeze(self.targets))


@dataclass(frozen=True)
class IssuePlan:
    dollars: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dollars", _freeze(self.dollars))


@dataclass(frozen=True)
class VoterPlan:
    dollars: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dollars", _freeze(self.dollars))


BriberyPlan = Union[MicroPlan, IssuePlan, VoterPlan]


@dataclass(frozen=True)
class CoverProfile:
    per_issue: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.per_issue)


# ---------------------------------------------------------------------------
# validation


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _is_amount(x) -> bool:
    return _is_int(x) or isinstance(x, Fraction)


def _check_side(entries, field):
    """Present entries walking away from the base must be positive and nondecreasing."""
    last = 0
    for where, c in entries:
        if c is None:
            continue
        if c == 0:
            raise NonMonotoneCost(f"zero cost at level {where} away from the base level", field)
        if c < last:
            raise NonMonotoneCost(f"cost drops to {c} at level {where}", field)
        last = c


def validate_instance(inst: Instance) -> Instance:
    """Return ``inst`` unchanged if every model constraint holds, else raise."""
    k = inst.k
    if not _is_int(k) or k < 0:
        raise ValidationError(f"discretization level must be a nonnegative integer, got {k!r}", "k")
    m, n = inst.m, inst.n
    if m < 1:
        raise ShapeMismatch("at least one voter is required", "probabilities")
    if n < 1:
        raise ShapeMismatch("at least one issue is required", "agenda")
    for j, z in enumerate(inst.agenda):
        if z not in (0, 1) or isinstance(z, bool):
            raise ValidationError(f"agenda entries must be 0 or 1, got {z!r}", f"agenda[{j}]")
    t = inst.threshold
    if not 0 <= t <= 1:
        raise ValidationError(f"threshold {t} outside [0, 1]", "threshold")
    if not _is_int(inst.budget) or inst.budget < 0:
        raise ValidationError(f"budget must be a nonnegative integer, got {inst.budget!r}", "budget")

    if (inst.weights is None) != (inst.objective is None):
        raise ShapeMismatch("weights and objective must be given together", "weights")
    if inst.weights is not None:
        if len(inst.weights) != n:
            raise ShapeMismatch(f"expected {n} weights, got {len(inst.weights)}", "weights")
        for j, w in enumerate(inst.weights):
            if not _is_int(w) or w < 1:
                raise ValidationError(f"weights must be positive integers, got {w!r}", f"weights[{j}]")
        if not _is_int(inst.objective) or inst.objective < 0:
            raise ValidationError("objective must be a nonnegative integer", "objective")

    if len(inst.cost) != m:
        raise ShapeMismatch(f"expected {m} cost rows, got {len(inst.cost)}", "costs")
    for i in range(m):
        if len(inst.prob[i]) != n:
            raise ShapeMismatch(f"expected {n} levels, got {len(inst.prob[i])}", f"probabilities[{i}]")
        if len(inst.cost[i]) != n:
            raise ShapeMismatch(f"expected {n} price functions, got {len(inst.cost[i])}", f"costs[{i}]")
        for j in range(n):
            a = inst.prob[i][j]
            field = f"probabilities[{i}][{j}]"
            if not _is_int(a) or not 0 <= a <= k + 1:
                raise ValidationError(f"level {a!r} outside 0..{k + 1}", field)
            row = inst.cost[i][j]
            field = f"costs[{i}][{j}]"
            if len(row) != k + 2:
                raise ShapeMismatch(f"expected {k + 2} entries, got {len(row)}", field)
            for lvl, c in enumerate(row):
                if c is not None and (not _is_amount(c) or c < 0):
                    raise ValidationError(f"cost {c!r} at level {lvl} is not a nonnegative amount", field)
            if row[a] is None or row[a] != 0:
                raise NonzeroBaseCost(f"cost at own level {a} must be 0, got {row[a]!r}", field)
            up = [(lvl, row[lvl]) for lvl in range(a + 1, k + 2)]
            down = [(lvl, row[lvl]) for lvl in range(a - 1, -1, -1)]
            agenda_side = up if inst.agenda[j] else down
            for lvl, c in agenda_side:
                if c is None:
                    raise MissingAgendaSideCost(f"missing cost at level {lvl} in the agenda direction", field)
            _check_side(up, field)
            _check_side(down, field)
    return inst


# ---------------------------------------------------------------------------
# agenda normalization


def _mirror_columns(inst: Instance, columns) -> Instance:
    columns = set(columns)
    if not columns:
        return inst
    k1 = inst.k + 1
    prob = tuple(
        tuple(k1 - a if j in columns else a for j, a in enumerate(row)) for row in inst.prob
    )
    cost = tuple(
        tuple(r[::-1] if j in columns else r for j, r in enumerate(rows)) for rows in inst.cost
    )
    agenda = tuple(1 - z if j in columns else z for j, z in enumerate(inst.agenda))
    return replace(inst, prob=prob, cost=cost, agenda=agenda)


def normalize_agenda(inst: Instance) -> Instance:
    """Equivalent instance whose agenda is all ones."""
    return _mirror_columns(inst, [j for j, z in enumerate(inst.agenda) if z == 0])


# ---------------------------------------------------------------------------
# evaluation


def compares_above(inst: Instance, level) -> bool:
    """Whether probability ``level / (k+1)`` clears the threshold."""
    lhs = level * inst.threshold.denominator
    rhs = inst.threshold.numerator * (inst.k + 1)
    if inst.comparison is Comparison.STRICT:
        return lhs > rhs
    return lhs >= rhs


def lowest_winning_level(inst: Instance) -> Optional[int]:
    """Smallest grid level that clears the threshold, or None."""
    num, den = inst.threshold.numerator, inst.threshold.denominator
    scaled = num * (inst.k + 1)
    if inst.comparison is Comparison.STRICT:
        lvl = scaled // den + 1
    else:
        lvl = -(-scaled // den)
    return lvl if lvl <= inst.k + 1 else None


def majority_size(m: int) -> int:
    return m // 2 + 1


def issue_won(inst: Instance, oriented_levels: Sequence[int], criterion: Criterion) -> bool:
    """Whether the Lobby wins an issue whose oriented column is given."""
    m = len(oriented_levels)
    if criterion is Criterion.SM:
        count = sum(1 for a in oriented_levels if compares_above(inst, a))
        return 2 * count > m
    # average above t  <=>  sum(a) / ((k+1) m) above t
    lhs = sum(oriented_levels) * inst.threshold.denominator
    rhs = inst.threshold.numerator * (inst.k + 1) * m
    if inst.comparison is Comparison.STRICT:
        return lhs > rhs
    return lhs >= rhs


def evaluate_levels(inst: Instance, levels, criterion: Criterion) -> Outcome:
    """Outcome of ``inst`` if its stored levels were replaced by ``levels``.

    Bit j equals ``agenda[j]`` exactly when the Lobby wins issue j; for an
    agenda bit of 0 this means the "no" side clears the threshold.
    """
    criterion = Criterion(criterion)
    k1 = inst.k + 1
    bits = []
    for j, z in enumerate(inst.agenda):
        col = [levels[i][j] if z else k1 - levels[i][j] for i in range(inst.m)]
        bits.append(z if issue_won(inst, col, criterion) else 1 - z)
    return Outcome(tuple(bits))


def evaluate(inst: Instance, criterion: Criterion) -> Outcome:
    return evaluate_levels(inst, inst.prob, criterion)


def wins_agenda(inst: Instance, criterion: Criterion) -> bool:
    return evaluate(inst, criterion).bits == inst.agenda


# ---------------------------------------------------------------------------
# bribery


def _whole(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _rebase(row: CostRow, level: int, credited) -> CostRow:
    new = [None] * level + [0]
    new.extend(_whole(max(0, row[lvl] - credited)) for lvl in range(level + 1, len(row)))
    return tuple(new)


def reachable_level(row: CostRow, base: int, share) -> int:
    lvl = base
    while lvl + 1 < len(row) and row[lvl + 1] is not None and row[lvl + 1] <= share:
        lvl += 1
    return lvl


def _check_dollars(dollars, size, name):
    if len(dollars) != size:
        raise ShapeMismatch(f"expected {size} entries, got {len(dollars)}", name)
    for x, d in enumerate(dollars):
        if not _is_int(d) or d < 0:
            raise ValidationError(f"spend must be a nonnegative integer, got {d!r}", f"{name}[{x}]")


def _micro_target(inst: Instance, i: int, j: int, target: int) -> int:
    """Oriented target level; raises WrongDirection if it moves against the agenda."""
    base, row = inst.oriented(i, j)
    if not _is_int(target) or not 0 <= target <= inst.k + 1:
        raise ValidationError(f"target {target!r} outside 0..{inst.k + 1}", f"targets[{i}][{j}]")
    t = target if inst.agenda[j] else inst.k + 1 - target
    if t < base or row[t] is None:
        raise WrongDirection(
            f"target {target} moves against the agenda (own level {inst.prob[i][j]})",
            f"targets[{i}][{j}]",
        )
    return t


def apply_bribery(inst: Instance, plan: BriberyPlan) -> Instance:
    """Instance after the Lobby executes ``plan``.

    Money handed to a pair is credited against its remaining prices, so a
    later payment toward the next level only needs to cover the difference.
    """
    m, n, k1 = inst.m, inst.n, inst.k + 1
    if isinstance(plan, MicroPlan):
        if len(plan.targets) != m or any(len(r) != n for r in plan.targets):
            raise ShapeMismatch(f"targets must be {m}x{n}", "targets")
    elif isinstance(plan, IssuePlan):
        _check_dollars(plan.dollars, n, "issue_dollars")
    elif isinstance(plan, VoterPlan):
        _check_dollars(plan.dollars, m, "voter_dollars")
    else:
        raise TypeError(f"unknown plan type {type(plan).__name__}")

    prob = [list(r) for r in inst.prob]
    cost = [list(r) for r in inst.cost]
    for i in range(m):
        for j in range(n):
            base, row = inst.oriented(i, j)
            if isinstance(plan, MicroPlan):
                new = _micro_target(inst, i, j, plan.targets[i][j])
                credited = row[new]
            else:
                if isinstance(plan, IssuePlan):
                    credited = Fraction(plan.dollars[j], m)
                else:
                    credited = Fraction(plan.dollars[i], n)
                new = reachable_level(row, base, credited)
            if new == base and credited == 0:
                continue
            rebased = _rebase(row, new, credited)
            if inst.agenda[j]:
                prob[i][j], cost[i][j] = new, rebased
            else:
                prob[i][j], cost[i][j] = k1 - new, rebased[::-1]
    return replace(inst, prob=prob, cost=cost)


def checked_sum(values) -> int:
    total = 0
    for v in values:
        total += v
        if total > INT64_MAX:
            raise ArithmeticOverflow("total exceeds the 64-bit range")
    return total


def plan_cost(inst: Instance, plan: BriberyPlan):
    """Total dollars the plan spends."""
    if isinstance(plan, MicroPlan):
        if len(plan.targets) != inst.m or any(len(r) != inst.n for r in plan.targets):
            raise ShapeMismatch(f"targets must be {inst.m}x{inst.n}", "targets")
        parts = []
        for i, row in enumerate(plan.targets):
            for j, target in enumerate(row):
                t = _micro_target(inst, i, j, target)
                parts.append(inst.oriented(i, j)[1][t])
        return _whole(checked_sum(parts))
    if isinstance(plan, IssuePlan):
        _check_dollars(plan.dollars, inst.n, "issue_dollars")
    elif isinstance(plan, VoterPlan):
        _check_dollars(plan.dollars, inst.m, "voter_dollars")
    else:
        raise TypeError(f"unknown plan type {type(plan).__name__}")
    return checked_sum(plan.dollars)


def empty_plan(inst: Instance, method: Method) -> BriberyPlan:
    if method is Method.MB:
        return MicroPlan(inst.prob)
    if method is Method.IB:
        return IssuePlan((0,) * inst.n)
    return VoterPlan((0,) * inst.m)


# ---------------------------------------------------------------------------
# cover numbers


def cover_numbers(inst: Instance, criterion: Criterion) -> CoverProfile:
    """Per-issue distance from winning.

    AM counts single-level raises, SM counts voters that still have to
    cross the threshold.  Raises :class:`Infeasible` for an issue that
    cannot be won at any price.
    """
    criterion = Criterion(criterion)
    inst = normalize_agenda(inst)
    m, k1 = inst.m, inst.k + 1
    num, den = inst.threshold.numerator, inst.threshold.denominator
    per_issue = []
    for j in range(inst.n):
        col = inst.oriented_column(j)
        if criterion is Criterion.AM:
            total = sum(col)
            scaled = num * k1 * m
            if inst.comparison is Comparison.STRICT:
                needed = scaled // den + 1
            else:
                needed = -(-scaled // den)
            b = max(0, needed - total)
            if b > k1 * m - total:
                raise Infeasible(f"issue {j} cannot reach the average threshold", issue=j)
        else:
            need = majority_size(m)
            if lowest_winning_level(inst) is None:
                raise Infeasible(f"issue {j}: no level clears the threshold", issue=j)
            above = sum(1 for a in col if compares_above(inst, a))
            b = max(0, need - above)
        per_issue.append(b)
    return CoverProfile(tuple(per_issue))


def crossing_cost(inst: Instance, i: int, j: int):
    """Cheapest price taking pair (i, j) across the threshold, or None."""
    base, row = inst.oriented(i, j)
    if compares_above(inst, base):
        return 0
    lvl = lowest_winning_level(inst)
    if lvl is None:
        return None
    return row[lvl]


# ---------------------------------------------------------------------------
# built-in sample instance


def example1(threshold=Fraction(1, 2), comparison=Comparison.STRICT, budget=300) -> Instance:
    """Two voters, three issues, ten price steps; agenda all ones."""
    _ = None
    return Instance(
        k=9,
        prob=((8, 3, 5), (4, 7, 4)),
        cost=(
            (
                (_, _, _, _, _, _, _, _, 0, 100, 140),
                (_, _, _, 0, 10, 70, 100, 140, 310, 520, 600),
                (_, _, _, _, _, 0, 15, 25, 70, 90, 150),
            ),
            (
                (_, _, _, _, 0, 30, 40, 70, 120, 200, 270),
                (_, _, _, _, _, _, _, 0, 10, 40, 90),
                (_, _, _, _, 0, 70, 90, 100, 180, 300, 450),
            ),
        ),
        agenda=(1, 1, 1),
        threshold=Fraction(threshold),
        comparison=Comparison(comparison),
        budget=budget,
    )
