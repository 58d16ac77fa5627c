"""Monotone PTAS: shrink the job set to a constant size with bid-oblivious
mega-jobs, then take the lex-min optimal assignment of the reduced instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .baselines import list_schedule
from .core import Assignment, Instance
from .oracle import lex_min_optimal

PTAS_BUDGET = 2**32


@dataclass(frozen=True)
class MegaJob:
    members: tuple[int, ...]
    size: Fraction

    @property
    def identity(self) -> int:
        return min(self.members)


@dataclass(frozen=True)
class ReducedJobs:
    kept: tuple[int, ...]
    mega: tuple[MegaJob, ...]
    delta: int
    case_tag: str  # "identity" | "greedy" | "list-scheduling"
    small_total: Fraction = Fraction(0)
    small_max: Fraction = Fraction(0)

    @property
    def count(self) -> int:
        return len(self.kept) + len(self.mega)


def delta_for(m: int, eps: Fraction) -> int:
    eps = Fraction(eps)
    return math.ceil(Fraction(2 * m * m) / (eps * eps)) + m


def reduce_jobs(jobs: Sequence[Fraction], m: int, eps: Fraction) -> ReducedJobs:
    """Keep the delta largest jobs, merge the rest into mega-jobs.

    ``jobs`` must be sorted non-increasing; returned indices refer to it.
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    n = len(jobs)
    delta = delta_for(m, eps)
    if n <= delta:
        return ReducedJobs(tuple(range(n)), (), delta, "identity")
    kept = tuple(range(delta))
    small = list(range(delta, n))
    A = sum((jobs[k] for k in small), Fraction(0))
    a = jobs[small[0]]
    if A <= 3 * a * delta:
        groups: list[list[int]] = []
        current: list[int] = []
        total = Fraction(0)
        for k in small:
            current.append(k)
            total += jobs[k]
            if total >= a:
                groups.append(current)
                current, total = [], Fraction(0)
        if current:
            groups[-1].extend(current)
        tag = "greedy"
    else:
        sets = list_schedule([jobs[k] for k in small], delta)
        groups = [[small[t] for t in s] for s in sets]
        tag = "list-scheduling"
    mega = tuple(MegaJob(tuple(g), sum((jobs[k] for k in g), Fraction(0))) for g in groups)
    return ReducedJobs(kept, mega, delta, tag, A, a)


def reduced_instance(instance: Instance, reduced: ReducedJobs) -> tuple[Instance, list[tuple[int, ...]]]:
    """Reduced instance (canonically sorted) and, per reduced job, its members."""
    items = [(instance.jobs[k], k, (k,)) for k in reduced.kept]
    items += [(mj.size, mj.identity, mj.members) for mj in reduced.mega]
    items.sort(key=lambda it: (-it[0], it[1]))
    inst = Instance(tuple(it[0] for it in items), instance.bids, instance.machine_ids)
    return inst, [it[2] for it in items]


def ptas(instance: Instance, eps: Fraction, budget: int = PTAS_BUDGET) -> Assignment:
    reduced = reduce_jobs(instance.jobs, instance.m, eps)
    small, members = reduced_instance(instance, reduced)
    choice = lex_min_optimal(small, budget)
    out = [0] * instance.n
    for r, pos in enumerate(choice.machine_of):
        for k in members[r]:
            out[k] = pos
    return Assignment(tuple(out))
