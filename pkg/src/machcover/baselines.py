"""LPT and List Scheduling on identical machines, and Round Robin."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import Assignment, Instance


def list_schedule(jobs: Sequence[Fraction], k: int) -> list[list[int]]:
    """Each job, in the given order, to a least-loaded set (lowest index on ties).

    Returns ``k`` lists of indices into ``jobs``.
    """
    if k <= 0:
        raise ValueError("k must be positive")
    sums = [Fraction(0)] * k
    sets: list[list[int]] = [[] for _ in range(k)]
    for j, p in enumerate(jobs):
        i = min(range(k), key=lambda t: (sums[t], t))
        sums[i] += p
        sets[i].append(j)
    return sets


def lpt_identical(jobs: Sequence[Fraction], k: int) -> tuple[list[list[int]], Fraction]:
    """LPT on ``k`` identical machines for jobs already sorted non-increasing.

    Returns the partition and its cover ``A`` (smallest set sum).
    """
    if k <= 0:
        raise ValueError("k must be positive")
    sets = list_schedule(jobs, k)
    value = min(sum((jobs[j] for j in s), Fraction(0)) for s in sets)
    return sets, value


def round_robin(instance: Instance) -> Assignment:
    """Sorted job j goes to sorted machine j mod m."""
    m = instance.m
    return Assignment(tuple(k % m for k in range(instance.n)))
