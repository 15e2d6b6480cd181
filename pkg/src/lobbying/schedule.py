"""Scheduling jobs on disjoint precedence paths at minimum cost.

A schedule of ``q`` jobs may only take a job once every earlier job on the
same path has been taken, so any feasible schedule is a choice of prefix
length per path.  The table below adds one path at a time and keeps, for
every job count, the cheapest way to fill it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import ArithmeticOverflow, InstanceTooLarge, ValidationError
from .model import INT64_MAX, checked_sum

ORACLE_MAX_JOBS = 20


@dataclass(frozen=True)
class ScheduleInstance:
    paths: Tuple[Tuple[int, ...], ...]
    q: int
    bound: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(tuple(p) for p in self.paths))
        if self.q < 0:
            raise ValidationError("job count must be nonnegative", "q")
        for p, path in enumerate(self.paths):
            for s, c in enumerate(path):
                if c < 0:
                    raise ValidationError(f"negative job cost {c}", f"paths[{p}][{s}]")

    @property
    def total_jobs(self) -> int:
        return sum(len(p) for p in self.paths)

    def decide(self, cost: Optional[int]) -> bool:
        """Decision form: is there a schedule within ``bound``?"""
        return cost is not None and (self.bound is None or cost <= self.bound)


def schedule_prefixes(paths: Sequence[Sequence[int]], q: int) -> Optional[Tuple[int, List[int]]]:
    """Minimum cost of ``q`` jobs and the prefix length taken from each path.

    Returns None when fewer than ``q`` jobs exist.
    """
    if q > sum(len(p) for p in paths):
        return None
    inf = None
    best: List[Optional[int]] = [0] + [inf] * q
    choices: List[List[int]] = []
    for path in paths:
        prefix = [0]
        for c in path:
            prefix.append(prefix[-1] + c)
        if prefix[-1] > INT64_MAX:
            raise ArithmeticOverflow("path cost exceeds the 64-bit range")
        new: List[Optional[int]] = [inf] * (q + 1)
        took = [0] * (q + 1)
        for j in range(q + 1):
            for x in range(min(j, len(path)) + 1):
                prev = best[j - x]
                if prev is None:
                    continue
                cand = checked_sum((prev, prefix[x]))
                if new[j] is None or cand < new[j]:
                    new[j], took[j] = cand, x
        best = new
        choices.append(took)

    lengths = [0] * len(paths)
    j = q
    for p in range(len(paths) - 1, -1, -1):
        lengths[p] = choices[p][j]
        j -= lengths[p]
    return best[q], lengths


def min_cost_schedule(si: ScheduleInstance) -> Optional[int]:
    """Cheapest precedence-respecting schedule of ``si.q`` jobs, None if impossible."""
    found = schedule_prefixes(si.paths, si.q)
    return None if found is None else found[0]


def schedule_oracle(si: ScheduleInstance) -> Optional[int]:
    """Same contract as :func:`min_cost_schedule`, by trying every prefix-length tuple."""
    if si.total_jobs > ORACLE_MAX_JOBS:
        raise InstanceTooLarge(f"{si.total_jobs} jobs exceed the oracle limit of {ORACLE_MAX_JOBS}")
    best = None
    for lengths in itertools.product(*(range(len(p) + 1) for p in si.paths)):
        if sum(lengths) != si.q:
            continue
        cost = sum(sum(p[:x]) for p, x in zip(si.paths, lengths))
        if best is None or cost < best:
            best = cost
    return best


def schedule_oracle_any_order(si: ScheduleInstance) -> Optional[int]:
    """Enumerate job *subsets* closed under path predecessors.

    Unlike :func:`schedule_oracle` this never assumes that a path's jobs
    are taken contiguously; it exists to check that assumption.
    """
    if si.total_jobs > ORACLE_MAX_JOBS:
        raise InstanceTooLarge(f"{si.total_jobs} jobs exceed the oracle limit of {ORACLE_MAX_JOBS}")
    jobs = [(p, s) for p, path in enumerate(si.paths) for s in range(len(path))]
    best = None
    for chosen in itertools.combinations(jobs, si.q):
        picked = set(chosen)
        if any(s > 0 and (p, s - 1) not in picked for p, s in picked):
            continue
        cost = sum(si.paths[p][s] for p, s in picked)
        if best is None or cost < best:
            best = cost
    return best
