"""Pick the right solver for a method, criterion and problem variant."""

from __future__ import annotations

from .hard import solve_exact_mb, solve_vb_exact, solve_weighted_mb_ib, solve_weighted_vb_exact
from .model import Criterion, Instance, Method
from .poly import solve_ib, solve_mb
from .report import SolveReport


def solve(inst: Instance, method, criterion, weighted: bool = False, exact: bool = False) -> SolveReport:
    method, criterion = Method(method), Criterion(criterion)
    if exact:
        if method is not Method.MB or weighted:
            raise ValueError("exact spending is only defined for unweighted microbribery")
        return solve_exact_mb(inst, criterion)
    if weighted:
        if method is Method.VB:
            return solve_weighted_vb_exact(inst, criterion)
        return solve_weighted_mb_ib(inst, method, criterion)
    if method is Method.MB:
        return solve_mb(inst, criterion)
    if method is Method.IB:
        return solve_ib(inst, criterion)
    return solve_vb_exact(inst, criterion)
