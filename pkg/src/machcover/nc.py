"""Next Cover with a guess value, and Sorted Next Cover (SNC)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .baselines import lpt_identical
from .core import Assignment, Instance, normalize_total, sorted_allocation

logger = logging.getLogger(__name__)

SQRT_PRECISION_BITS = 20


@dataclass(frozen=True)
class NcOutcome:
    success: bool
    partition: tuple[tuple[int, ...], ...]
    guess: Fraction

    def sums(self, jobs: Sequence[Fraction]) -> list[Fraction]:
        return [sum((jobs[k] for k in s), Fraction(0)) for s in self.partition]


@dataclass
class SncTrace:
    A: Fraction | None = None
    iterations: list[tuple[Fraction, Fraction, Fraction, bool]] = field(default_factory=list)
    final_L: Fraction | None = None

    def to_json(self) -> dict:
        return {
            "A": None if self.A is None else str(self.A),
            "iterations": [
                {"L": str(lo), "U": str(hi), "G": str(g), "success": ok} for lo, hi, g, ok in self.iterations
            ],
            "final_L": None if self.final_L is None else str(self.final_L),
        }


def next_cover(jobs: Sequence[Fraction], m: int, guess: Fraction) -> NcOutcome:
    """Fill machines 1..m in turn with consecutive jobs until each reaches ``guess``.

    On success any leftover jobs join machine m.  On failure the partial
    partition is returned (the machines that were reached, plus the one that
    ran dry).
    """
    guess = Fraction(guess)
    n = len(jobs)
    partition: list[list[int]] = []
    k = 0
    for _ in range(m):
        current: list[int] = []
        total = Fraction(0)
        while total < guess and k < n:
            current.append(k)
            total += jobs[k]
            k += 1
        partition.append(current)
        if total < guess:
            while len(partition) < m:
                partition.append([])
            return NcOutcome(False, tuple(map(tuple, partition)), guess)
    partition[-1].extend(range(k, n))
    return NcOutcome(True, tuple(map(tuple, partition)), guess)


def approx_sqrt(x: Fraction) -> Fraction:
    """Dyadic rational within relative error 2**-20 of sqrt(x), for x > 0."""
    # x * 4**K >= 2**(2*bits + 2) keeps both the floor and isqrt errors tiny
    target = 2 * SQRT_PRECISION_BITS + 2
    scale = 0
    while (x.numerator << (2 * scale)) < (x.denominator << target):
        scale += 1
    root = isqrt((x.numerator << (2 * scale)) // x.denominator)
    return Fraction(root, 1 << scale)


def geometric_guess(low: Fraction, high: Fraction) -> Fraction:
    g = approx_sqrt(low * high)
    if not low < g < high:
        g = (low + high) / 2
    return g


def snc(instance: Instance, eps: Fraction) -> tuple[Assignment, SncTrace]:
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 2):
        raise ValueError("epsilon must lie in (0, 1/2)")
    n, m = instance.n, instance.m
    trace = SncTrace()
    if n < m:
        return Assignment.all_on(n), trace
    jobs = normalize_total(instance).jobs
    _, A = lpt_identical(jobs, m)
    low, high = A / 2, A * Fraction(4, 3)
    trace.A = A
    while True:
        g = geometric_guess(low, high)
        ok = next_cover(jobs, m, g).success
        trace.iterations.append((low, high, g, ok))
        if ok:
            low = g
        else:
            high = g
        if high - low <= eps / 2 * low:
            break
    trace.final_L = low
    outcome = next_cover(jobs, m, low)
    assert outcome.success
    sets = sorted_allocation(outcome.partition, jobs)
    logger.debug("snc: %d iterations, final L=%s", len(trace.iterations), low)
    return Assignment.from_sets(n, sets), trace
