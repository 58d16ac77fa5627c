"""Exact optimum and the lexicographically smallest optimal assignment.

The lexicographic object is the sequence of machine *ids* per job, first
(largest) job first.  It never reads bids, so the tie-break does not move
when a machine changes its bid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _kernels
from .core import Assignment, Instance, evaluate


class BudgetExceeded(RuntimeError):
    """The exhaustive search space m**n is larger than the caller allows."""


DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class OracleResult:
    opt_cover: Fraction
    assignment: Assignment
    explored: int


def _integer_scale(values):
    den = 1
    for v in values:
        den = math.lcm(den, v.denominator)
    return [int(v * den) for v in values], den


def _greedy_seed(sizes, bids):
    """Cover of 'next job to the currently least loaded machine' (integers)."""
    works = [0] * len(bids)
    for p in sizes:
        i = min(range(len(bids)), key=lambda t: (works[t] * bids[t], t))
        works[i] += p
    return min(w * b for w, b in zip(works, bids))


def optimal_cover(instance: Instance, budget: int = DEFAULT_BUDGET, *, force_python: bool = False) -> OracleResult:
    """Exact OPT by lexicographic branch and bound over all m**n assignments.

    Pruning only discards subtrees that cannot hold a leaf at the current
    acceptance level, or that are mirror images (equal bid, equal work) of a
    lex-smaller subtree, so the returned assignment is the lex-min optimum.
    """
    n, m = instance.n, instance.m
    if m**n > budget:
        raise BudgetExceeded(f"{m}**{n} assignments exceed budget {budget}")
    sizes, _ = _integer_scale(instance.jobs)
    bids_by_id, _ = _integer_scale(instance.bids_by_id())
    seed = _greedy_seed(sizes, bids_by_id)
    # phase 1: the optimum value
    found, best, _, leaves1 = _kernels.bb_search(sizes, bids_by_id, seed, True, force_python)
    assert found, "greedy seed is always attainable"
    # phase 2: the first assignment in lex order reaching it
    found, cover, ids, leaves2 = _kernels.bb_search(sizes, bids_by_id, best, False, force_python)
    assert found and cover == best
    pos = {mid: p for p, mid in enumerate(instance.machine_ids)}
    assignment = Assignment(tuple(pos[i] for i in ids))
    return OracleResult(evaluate(assignment, instance).cover, assignment, leaves1 + leaves2)


def lex_min_optimal(instance: Instance, budget: int = DEFAULT_BUDGET) -> Assignment:
    return optimal_cover(instance, budget).assignment


def brute_force(instance: Instance) -> OracleResult:
    """Plain enumeration in lex order; the reference the pruned search is checked against."""
    import itertools

    pos = {mid: p for p, mid in enumerate(instance.machine_ids)}
    best = None
    best_assignment = None
    count = 0
    for ids in itertools.product(range(instance.m), repeat=instance.n):
        count += 1
        a = Assignment(tuple(pos[i] for i in ids))
        c = evaluate(a, instance).cover
        if best is None or c > best:
            best, best_assignment = c, a
    return OracleResult(best, best_assignment, count)
