"""Seeded random instances and instances built from classic source problems."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .model import Comparison, Instance

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    m: Tuple[int, int] = (1, 3)
    n: Tuple[int, int] = (1, 3)
    k: Tuple[int, int] = (0, 3)
    max_cost: int = 9
    agenda: str = "random"  # or "ones"
    thresholds: Tuple[Fraction, ...] = (Fraction(1, 4), Fraction(1, 3), HALF, Fraction(2, 3), Fraction(3, 4))
    comparisons: Tuple[Comparison, ...] = (Comparison.STRICT, Comparison.WEAK)
    budget: Tuple[int, int] = (0, 50)
    weights: Optional[Tuple[int, int]] = None  # range for issue weights, None for unweighted

    def __post_init__(self):
        for name in ("m", "n", "k", "budget"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"empty range for {name}: {lo}..{hi}")
        if self.m[0] < 1 or self.n[0] < 1 or self.k[0] < 0:
            raise ValueError("need m >= 1, n >= 1, k >= 0")
        if self.max_cost < 1:
            raise ValueError("max_cost must be positive")
        if self.agenda not in ("random", "ones"):
            raise ValueError(f"unknown agenda policy {self.agenda!r}")


def _price_steps(rng: random.Random, count: int, max_cost: int):
    """``count`` nondecreasing positive prices, strictly increasing when room allows."""
    if count <= max_cost:
        return sorted(rng.sample(range(1, max_cost + 1), count))
    return sorted(rng.randint(1, max_cost) for _ in range(count))


def _price_row(rng: random.Random, k: int, level: int, agenda_bit: int, max_cost: int):
    row = [None] * (k + 2)
    row[level] = 0
    up = list(range(level + 1, k + 2))
    down = list(range(level - 1, -1, -1))
    lobby, other = (up, down) if agenda_bit else (down, up)
    for lvl, price in zip(lobby, _price_steps(rng, len(lobby), max_cost)):
        row[lvl] = price
    if other and rng.random() < 0.5:
        for lvl, price in zip(other, _price_steps(rng, len(other), max_cost)):
            row[lvl] = price
    return tuple(row)


def gen_random(cfg: GenConfig, rng: Optional[random.Random] = None) -> Instance:
    """Random valid instance; the same config and seed always give the same instance."""
    rng = rng or random.Random(cfg.seed)
    m = rng.randint(*cfg.m)
    n = rng.randint(*cfg.n)
    k = rng.randint(*cfg.k)
    if cfg.agenda == "ones":
        agenda = (1,) * n
    else:
        agenda = tuple(rng.randint(0, 1) for _ in range(n))
    prob = tuple(tuple(rng.randint(0, k + 1) for _ in range(n)) for _ in range(m))
    cost = tuple(
        tuple(_price_row(rng, k, prob[i][j], agenda[j], cfg.max_cost) for j in range(n))
        for i in range(m)
    )
    weights = objective = None
    if cfg.weights is not None:
        weights = tuple(rng.randint(*cfg.weights) for _ in range(n))
        objective = rng.randint(0, sum(weights))
    return Instance(
        k=k,
        prob=prob,
        cost=cost,
        agenda=agenda,
        threshold=rng.choice(cfg.thresholds),
        comparison=rng.choice(cfg.comparisons),
        budget=rng.randint(*cfg.budget),
        weights=weights,
        objective=objective,
    )


def gen_many(cfg: GenConfig, count: int):
    rng = random.Random(cfg.seed)
    return [gen_random(cfg, rng) for _ in range(count)]


def from_subset_sum(values: Sequence[int], target: int) -> Instance:
    """Exact-spend micro bribery instance that is solvable iff some subset sums to ``target``.

    One issue, k = 0.  Half the voters already vote yes and cannot be
    moved; the other half vote no and cost ``values[i]`` to flip.  The
    yes side is one voter short of a strict majority.
    """
    if not values:
        raise ValueError("need at least one value")
    if any(v < 1 for v in values) or target < 1:
        raise ValueError("subset sum values and target must be positive")
    yes = [((1,), ((None, 0),)) for _ in values]
    no = [((0,), ((0, v),)) for v in values]
    voters = yes + no
    return Instance(
        k=0,
        prob=tuple(p for p, _ in voters),
        cost=tuple(c for _, c in voters),
        agenda=(1,),
        threshold=HALF,
        comparison=Comparison.STRICT,
        budget=target,
    )


def from_knapsack(weights: Sequence[int], profits: Sequence[int], capacity: int, goal: int) -> Instance:
    """Issue-weighted instance with one voter: object j becomes issue j.

    The voter rejects every issue; flipping issue j costs the object's
    weight and winning it earns the object's profit.
    """
    if len(weights) != len(profits) or not weights:
        raise ValueError("weights and profits must be nonempty and of equal length")
    if any(w < 1 for w in weights) or any(p < 1 for p in profits):
        raise ValueError("object weights and profits must be positive")
    n = len(weights)
    return Instance(
        k=0,
        prob=((0,) * n,),
        cost=(tuple((0, w) for w in weights),),
        agenda=(1,) * n,
        threshold=HALF,
        comparison=Comparison.STRICT,
        budget=capacity,
        weights=tuple(profits),
        objective=goal,
    )


def from_optimal_lobbying(matrix: Sequence[Sequence[int]], target: Sequence[int], b: int) -> Instance:
    """Voter bribery instance with unit flip prices and budget ``b * n``.

    Paying a voter ``n`` dollars gives one dollar per issue, which flips
    every vote of that voter toward the target.
    """
    m = len(matrix)
    n = len(target)
    if m < 1 or any(len(row) != n for row in matrix):
        raise ValueError("matrix must be m x n with n = len(target)")
    cost = tuple(tuple((0, 1) if e == 0 else (1, 0) for e in row) for row in matrix)
    return Instance(
        k=0,
        prob=tuple(tuple(row) for row in matrix),
        cost=cost,
        agenda=tuple(target),
        threshold=HALF,
        comparison=Comparison.STRICT,
        budget=b * n,
    )
