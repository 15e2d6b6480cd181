"""Solvers for probabilistic lobbying: micro, issue and voter bribery under
strict-majority and average-majority evaluation."""

from .errors import (
    ArithmeticOverflow,
    Infeasible,
    InfeasibleIssue,
    InstanceTooLarge,
    LobbyError,
    MissingAgendaSideCost,
    NonMonotoneCost,
    NonzeroBaseCost,
    ParseError,
    ShapeMismatch,
    ValidationError,
    WrongDirection,
)
from .generators import GenConfig, from_knapsack, from_optimal_lobbying, from_subset_sum, gen_random
from .hard import (
    GreedyTrace,
    greedy_vb,
    kernelize_vb,
    solve_exact_mb,
    solve_vb_exact,
    solve_weighted_mb_ib,
    solve_weighted_vb_exact,
)
from .io import parse_instance, serialize_instance
from .model import (
    Comparison,
    CoverProfile,
    Criterion,
    Instance,
    IssuePlan,
    Method,
    MicroPlan,
    Outcome,
    VoterPlan,
    apply_bribery,
    cover_numbers,
    evaluate,
    example1,
    normalize_agenda,
    plan_cost,
    validate_instance,
)
from .oracle import oracle_exact_spend, oracle_min_budget, oracle_weighted
from .poly import solve_ib, solve_mb, solve_mb_am, solve_mb_sm
from .report import SolveReport, SolverTag
from .schedule import ScheduleInstance, min_cost_schedule, schedule_oracle
from .solve import solve
