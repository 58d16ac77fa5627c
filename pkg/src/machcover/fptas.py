"""DP-based FPTAS for covering related machines, and the monotone FPTAS
mechanism that wraps it (bid rounding, enumeration of rounded bid vectors,
sorted re-assignment, best cover on the rounded bids).
"""

from __future__ import annotations

import functools
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .baselines import round_robin
from .core import Assignment, Instance, evaluate

logger = logging.getLogger(__name__)


def check_eps(eps: Fraction) -> int:
    """Return 1/eps, which must be a positive integer."""
    eps = Fraction(eps)
    if eps <= 0 or eps > 1 or eps.numerator != 1:
        raise ValueError(f"epsilon must be 1/k for a positive integer k, got {eps}")
    return eps.denominator


@dataclass(frozen=True)
class DpInput:
    rounded_loads: np.ndarray  # (n, m) ints, entry [k, i] = ceil(p_k' * b_i)
    S: int
    clamp: bool = True

    @property
    def n(self) -> int:
        return self.rounded_loads.shape[0]

    @property
    def m(self) -> int:
        return self.rounded_loads.shape[1]


@dataclass(frozen=True)
class DpResult:
    reachable: bool
    minimal_k: int | None
    prefix: tuple[int, ...] | None  # machine position (0-based) for jobs 0..k-1


def dp_cover_test(dp: DpInput, *, force_numpy: bool = False) -> DpResult:
    loads = np.asarray(dp.rounded_loads, dtype=np.int64)
    if loads.ndim != 2 or (loads < 1).any():
        raise ValueError("rounded loads must be a 2-d array of positive integers")
    n, m = loads.shape
    if m > 127:
        raise ValueError("too many machines for the DP table")
    table, k = _kernels.dp_fill(loads, dp.S, dp.clamp, force_numpy)
    if k < 0:
        return DpResult(False, None, None)
    side = dp.S + 1
    strides = [side ** (m - 1 - i) for i in range(m)]
    vec = [dp.S] * m
    prefix = [0] * k
    for step in range(k, 0, -1):
        idx = sum(a * s for a, s in zip(vec, strides))
        machine = int(table[step, idx]) - 1
        assert machine >= 0
        prefix[step - 1] = machine
        vec[machine] = max(0, vec[machine] - int(loads[step - 1, machine]))
    assert not any(vec)
    return DpResult(True, k, tuple(prefix))


@dataclass(frozen=True)
class FptasRun:
    assignment: Assignment
    j: int | None
    minimal_k: int | None
    probes: dict
    anomaly: bool = False


def _rounded_loads(jobs, bids, scale) -> np.ndarray:
    rows = []
    for p in jobs:
        rows.append([math.ceil(p * b * scale) for b in bids])
    return np.array(rows, dtype=np.int64)


def fptas_detail(instance: Instance, eps: Fraction, *, clamp: bool = True) -> FptasRun:
    inv = check_eps(eps)
    eps = Fraction(1, inv)
    n, m = instance.n, instance.m
    if n < m:
        return FptasRun(Assignment.all_on(n), None, None, {})
    rr_cover = evaluate(round_robin(instance), instance).cover
    jobs = [p / rr_cover for p in instance.jobs]
    S = n * inv
    probes: dict[int, DpResult] = {}

    def attempt(j: int) -> DpResult:
        if j not in probes:
            scale = Fraction(n * inv * inv, j)
            probes[j] = dp_cover_test(DpInput(_rounded_loads(jobs, instance.bids, scale), S, clamp))
        return probes[j]

    def consistent() -> bool:
        ok = [j for j, r in probes.items() if r.reachable]
        bad = [j for j, r in probes.items() if not r.reachable]
        return not ok or not bad or max(ok) < min(bad)

    lo, hi = inv, m * inv
    anomaly = False
    if not attempt(lo).reachable:
        anomaly = True
    elif attempt(hi).reachable:
        lo = hi
    else:
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if attempt(mid).reachable:
                lo = mid
            else:
                hi = mid
        anomaly = not consistent()
    if anomaly:
        logger.warning("fptas: non-monotone success pattern over j, falling back to linear scan")
        lo = next((j for j in range(m * inv, inv - 1, -1) if attempt(j).reachable), None)
        if lo is None:
            # cannot happen for n >= m: j = 1/eps covers the round robin value
            raise RuntimeError("no guess reachable")
    best = attempt(lo)
    machine_of = list(best.prefix) + [0] * (n - best.minimal_k)
    return FptasRun(Assignment(tuple(machine_of)), lo, best.minimal_k, probes, anomaly)


def fptas(instance: Instance, eps: Fraction) -> tuple[Assignment, int | None]:
    run = fptas_detail(instance, eps)
    return run.assignment, run.j


# ---------------------------------------------------------------------------
# monotone mechanism
# ---------------------------------------------------------------------------

def power_exponent(x: Fraction, base: Fraction) -> int:
    """Smallest integer e with base**e >= x (base > 1, x > 0)."""
    e, q = 0, Fraction(1)
    if x >= 1:
        while q < x:
            q *= base
            e += 1
    else:
        while q / base >= x:
            q /= base
            e -= 1
    return e


def compute_ell(jobs: Sequence[Fraction], eps: Fraction) -> int:
    ratio = sum(jobs) / min(jobs)
    return power_exponent(ratio, 1 + Fraction(eps))


@dataclass(frozen=True)
class RoundedBids:
    exponents: tuple[int, ...]
    ell: int | None
    base: Fraction

    @property
    def d(self) -> tuple[Fraction, ...]:
        return tuple(self.base**e for e in self.exponents)


def round_bids(bids: Sequence[Fraction], eps: Fraction, ell: int | None = None) -> RoundedBids:
    base = 1 + Fraction(eps)
    raw = [power_exponent(Fraction(b), base) for b in bids]
    low = min(raw)
    exps = [e - low for e in raw]
    if ell is not None:
        exps = [min(e, ell + 1) for e in exps]
    return RoundedBids(tuple(exps), ell, base)


@functools.lru_cache(maxsize=65536)
def _bundles(jobs: tuple[Fraction, ...], exps: tuple[int, ...], eps: Fraction) -> tuple[tuple[int, ...], ...]:
    """Job sets from the subroutine on bids (1+eps)**exps, largest work first."""
    base = 1 + eps
    inst = Instance(jobs, tuple(base**e for e in exps), tuple(range(len(exps))))
    assignment, _ = fptas(inst, eps)
    sets = assignment.sets(len(exps))
    work = [sum((jobs[k] for k in s), Fraction(0)) for s in sets]
    order = sorted(range(len(sets)), key=lambda t: -work[t])
    return tuple(tuple(sets[t]) for t in order)


@dataclass(frozen=True)
class MechanismRun:
    assignment: Assignment
    rounded: RoundedBids
    cover_on_d: Fraction
    candidates: int
    clamped: bool


def mechanism_detail(instance: Instance, eps: Fraction) -> MechanismRun:
    check_eps(eps)
    eps = Fraction(eps)
    n, m = instance.n, instance.m
    ell = compute_ell(instance.jobs, eps)
    rb = round_bids(instance.bids, eps, ell)
    unclamped = round_bids(instance.bids, eps)
    d = rb.d
    # machine positions ordered by rounded bid, external id on ties
    d_order = sorted(range(m), key=lambda pos: (rb.exponents[pos], instance.machine_ids[pos]))
    best = None
    count = 0
    # bundles depend only on the multiset of d' and are invariant under a
    # common shift, so sorted vectors normalized to start at 0 cover all of d'
    for vec in itertools.combinations_with_replacement(range(ell + 2), m):
        count += 1
        shifted = tuple(e - vec[0] for e in vec)
        sets = _bundles(instance.jobs, shifted, eps)
        if logger.isEnabledFor(logging.DEBUG):
            # machines bidding (1+eps)**ell or more are expected to get exactly one job
            sizes = sorted((len(s) for s in sets), reverse=True)
            slow = [t for t, e in enumerate(vec) if e >= ell]
            if any(len(sets[m - 1 - r]) != 1 for r in range(len(slow))):
                logger.debug("mechanism: slow machines in d'=%s do not hold single jobs (%s)", vec, sizes)
        machine_of = [0] * n
        for t, s in enumerate(sets):
            for k in s:
                machine_of[k] = d_order[t]
        cand = Assignment(tuple(machine_of))
        work = [Fraction(0)] * m
        for k, pos in enumerate(machine_of):
            work[pos] += instance.jobs[k]
        cover = min(w * b for w, b in zip(work, d))
        key = (cover, tuple(work[instance.position_of(mid)] for mid in range(m)))
        if best is None or key > best[0]:
            best = (key, cand)
    return MechanismRun(best[1], rb, best[0][0], count, rb.exponents != unclamped.exponents)


def mechanism(instance: Instance, eps: Fraction) -> Assignment:
    return mechanism_detail(instance, eps).assignment
