from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Optional, Tuple

from .model import BriberyPlan, IssuePlan, MicroPlan, VoterPlan

DEFAULT_ENUM_LIMIT = 10**7
ENUM_LIMIT_ENV = "LOBBYING_ENUM_LIMIT"


def enumeration_limit() -> int:
    """Cap on enumerated candidates for brute-force searches (env override)."""
    raw = os.environ.get(ENUM_LIMIT_ENV)
    return int(raw) if raw else DEFAULT_ENUM_LIMIT


class SolverTag(str, enum.Enum):
    EXACT_POLY = "exact_poly"
    EXACT_BRUTE = "exact_brute"
    GREEDY = "greedy"
    ORACLE = "oracle"
    KNAPSACK_DP = "knapsack_dp"


@dataclass(frozen=True)
class SolveReport:
    """Result of a minimum-budget solve.

    ``min_cost`` is None only when no plan at any price reaches the goal;
    ``feasible`` additionally requires ``min_cost <= budget``.
    """

    feasible: bool
    min_cost: Optional[int]
    plan: Optional[BriberyPlan]
    per_issue_cost: Optional[Tuple[Optional[int], ...]]
    solver: SolverTag

    def to_dict(self) -> dict:
        plan = self.plan
        if isinstance(plan, MicroPlan):
            plan_doc = {"kind": "micro", "targets": [list(r) for r in plan.targets]}
        elif isinstance(plan, IssuePlan):
            plan_doc = {"kind": "issue", "dollars": list(plan.dollars)}
        elif isinstance(plan, VoterPlan):
            plan_doc = {"kind": "voter", "dollars": list(plan.dollars)}
        else:
            plan_doc = None
        return {
            "feasible": self.feasible,
            "min_cost": self.min_cost,
            "per_issue_cost": None if self.per_issue_cost is None else list(self.per_issue_cost),
            "plan": plan_doc,
            "solver": self.solver.value,
        }


def unreachable(solver: SolverTag) -> SolveReport:
    return SolveReport(False, None, None, None, solver)
