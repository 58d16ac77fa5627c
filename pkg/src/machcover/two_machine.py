"""Split-based algorithms: SNC and SSNC on two machines, and the exhaustive
multi-machine SSNC (optionally on job sizes rounded up to powers of a base).

None of these look at speeds when *building* the job sets except through the
objective; once sets are chosen they are always handed out largest-first to
machines in bid order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Assignment, Instance, sorted_allocation


@dataclass(frozen=True)
class SplitChoice:
    i: int
    sigma1: Fraction
    sigma2: Fraction
    r: Fraction


def choose_split(jobs: Sequence[Fraction], r: Fraction = Fraction(1)) -> SplitChoice:
    """Split point i in 1..n-1 maximizing min(sigma1/r, sigma2); smallest i on ties."""
    n = len(jobs)
    if n < 2:
        raise ValueError("need at least two jobs")
    total = sum(jobs)
    best = None
    prefix = Fraction(0)
    for i in range(1, n):
        prefix += jobs[i - 1]
        value = min(prefix / r, total - prefix)
        if best is None or value > best[0]:
            best = (value, i, prefix)
    _, i, s1 = best
    return SplitChoice(i, s1, total - s1, Fraction(r))


def _assign_split(n: int, split: SplitChoice) -> Assignment:
    head, tail = range(split.i), range(split.i, n)
    if split.sigma1 >= split.sigma2:
        return Assignment.from_sets(n, [head, tail])
    return Assignment.from_sets(n, [tail, head])


def _require_two(instance: Instance):
    if instance.m != 2:
        raise ValueError("two-machine algorithm needs exactly 2 machines")


def snc2(instance: Instance) -> Assignment:
    _require_two(instance)
    if instance.n < 2:
        return Assignment.all_on(instance.n)
    return _assign_split(instance.n, choose_split(instance.jobs))


def speed_ratio(instance: Instance) -> Fraction:
    return instance.bids[1] / instance.bids[0]


def ssnc2_split(instance: Instance) -> SplitChoice:
    return choose_split(instance.jobs, speed_ratio(instance))


def ssnc2(instance: Instance) -> Assignment:
    _require_two(instance)
    if instance.n < 2:
        return Assignment.all_on(instance.n)
    return _assign_split(instance.n, ssnc2_split(instance))


def round_up_to_power(x: Fraction, base: Fraction) -> Fraction:
    """Smallest integer power of ``base`` (> 1) that is >= x."""
    base = Fraction(base)
    q = Fraction(1)
    if x >= 1:
        while q < x:
            q *= base
    else:
        while q / base >= x:
            q /= base
    return q


def ssnc_multi_split(instance: Instance, job_rounding_base: Fraction | None = None) -> tuple[int, ...]:
    """Cut points (c_1 < ... < c_{m-1}) of the consecutive partition chosen.

    Objective: max over partitions of min_i X_i * b_i, set i on machine i,
    where X_i uses rounded sizes when a base is given.  Ties go to the
    lexicographically smallest cut tuple.
    """
    n, m = instance.n, instance.m
    if job_rounding_base is None:
        seen = list(instance.jobs)
    else:
        seen = [round_up_to_power(p, job_rounding_base) for p in instance.jobs]
    prefix = [Fraction(0)]
    for p in seen:
        prefix.append(prefix[-1] + p)
    best = None
    for cuts in itertools.combinations(range(1, n), m - 1):
        bounds = (0,) + cuts + (n,)
        value = min((prefix[bounds[t + 1]] - prefix[bounds[t]]) * instance.bids[t] for t in range(m))
        if best is None or value > best[0]:
            best = (value, cuts)
    return best[1]


def ssnc_multi(instance: Instance, job_rounding_base: Fraction | None = None) -> Assignment:
    """Exhaustive SSNC over consecutive partitions; sets re-sorted by true size."""
    n, m = instance.n, instance.m
    if job_rounding_base is not None and Fraction(job_rounding_base) <= 1:
        raise ValueError("rounding base must exceed 1")
    if n < m:
        return Assignment.all_on(n)
    if m == 1:
        return Assignment.all_on(n)
    cuts = ssnc_multi_split(instance, job_rounding_base)
    bounds = (0,) + cuts + (n,)
    sets = [list(range(bounds[t], bounds[t + 1])) for t in range(m)]
    return Assignment.from_sets(n, sorted_allocation(sets, instance.jobs))
