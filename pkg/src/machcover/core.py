"""Domain types shared by every algorithm.

Sizes, bids, loads and covers are ``fractions.Fraction`` values throughout.
Machines are addressed by their *position* in the canonical bid order
(position 0 has the lowest bid, i.e. is the fastest machine); ``machine_ids``
maps positions back to the fixed external ids.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class InstanceError(ValueError):
    """Malformed or invalid instance data."""


def to_rational(value) -> Fraction:
    """Convert ``"p"``, ``"p/q"``, a finite decimal string, or an int to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InstanceError(f"not a number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise InstanceError(f"floats are not accepted, pass a string: {value!r}")
    if not isinstance(value, str):
        raise InstanceError(f"not a number: {value!r}")
    try:
        q = Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceError(f"cannot parse rational {value!r}") from exc
    return q


def fmt(q: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` (or ``"p"`` when integral)."""
    return str(Fraction(q))


@dataclass(frozen=True)
class Instance:
    """Canonically sorted jobs and machines.

    ``jobs`` is non-increasing (stable w.r.t. input order), ``bids`` is
    non-decreasing with ties broken by ascending machine id.  ``job_order[k]``
    is the input index of the job at sorted position ``k``.
    """

    jobs: tuple[Fraction, ...]
    bids: tuple[Fraction, ...]
    machine_ids: tuple[int, ...]
    job_order: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.jobs:
            raise InstanceError("empty job list")
        if not self.bids:
            raise InstanceError("empty machine list")
        if len(self.machine_ids) != len(self.bids):
            raise InstanceError("machine_ids and bids differ in length")
        if sorted(self.machine_ids) != list(range(len(self.bids))):
            raise InstanceError("machine_ids must be a permutation of 0..m-1")
        if any(p <= 0 for p in self.jobs):
            raise InstanceError("non-positive job size")
        if any(b <= 0 for b in self.bids):
            raise InstanceError("non-positive bid")
        if not self.job_order:
            object.__setattr__(self, "job_order", tuple(range(len(self.jobs))))
        if any(self.jobs[k] < self.jobs[k + 1] for k in range(len(self.jobs) - 1)):
            raise InstanceError("jobs not sorted non-increasing")
        for k in range(len(self.bids) - 1):
            if (self.bids[k], self.machine_ids[k]) > (self.bids[k + 1], self.machine_ids[k + 1]):
                raise InstanceError("bids not in canonical order")

    @property
    def n(self) -> int:
        return len(self.jobs)

    @property
    def m(self) -> int:
        return len(self.bids)

    def position_of(self, machine_id: int) -> int:
        return self.machine_ids.index(machine_id)

    def bid_of(self, machine_id: int) -> Fraction:
        return self.bids[self.position_of(machine_id)]

    def bids_by_id(self) -> list[Fraction]:
        out = [Fraction(0)] * self.m
        for pos, mid in enumerate(self.machine_ids):
            out[mid] = self.bids[pos]
        return out

    def with_bid(self, machine_id: int, bid: Fraction) -> "Instance":
        """Same jobs, one machine's bid replaced, re-canonicalized."""
        raw = self.bids_by_id()
        raw[machine_id] = Fraction(bid)
        jobs_in = [Fraction(0)] * self.n
        for k, orig in enumerate(self.job_order):
            jobs_in[orig] = self.jobs[k]
        return sort_canonical(jobs_in, raw, range(self.m))

    def with_jobs(self, jobs: Sequence[Fraction]) -> "Instance":
        """Replace the sorted job vector (same length, still sorted)."""
        return Instance(tuple(jobs), self.bids, self.machine_ids, self.job_order)

    def to_document(self) -> dict:
        jobs_in = [Fraction(0)] * self.n
        for k, orig in enumerate(self.job_order):
            jobs_in[orig] = self.jobs[k]
        return {
            "jobs": [fmt(p) for p in jobs_in],
            "bids": [fmt(b) for b in self.bids_by_id()],
            "machine_ids": list(range(self.m)),
        }


@dataclass(frozen=True)
class Assignment:
    """``machine_of[k]`` is the machine position of sorted job ``k``."""

    machine_of: tuple[int, ...]

    @classmethod
    def all_on(cls, n: int, position: int = 0) -> "Assignment":
        return cls((position,) * n)

    @classmethod
    def from_sets(cls, n: int, sets: Sequence[Iterable[int]]) -> "Assignment":
        """Build from per-position job-index sets."""
        out = [-1] * n
        for pos, jobs in enumerate(sets):
            for k in jobs:
                out[k] = pos
        if -1 in out:
            raise ValueError("job left unassigned")
        return cls(tuple(out))

    def sets(self, m: int) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(m)]
        for k, pos in enumerate(self.machine_of):
            out[pos].append(k)
        return out

    def by_id(self, instance: Instance) -> tuple[int, ...]:
        """Machine id per job, in sorted job order."""
        return tuple(instance.machine_ids[pos] for pos in self.machine_of)

    def by_input_order(self, instance: Instance) -> list[int]:
        """Machine id per job, indexed by the job's input position."""
        out = [0] * instance.n
        for k, pos in enumerate(self.machine_of):
            out[instance.job_order[k]] = instance.machine_ids[pos]
        return out


@dataclass(frozen=True)
class CoverReport:
    work: tuple[Fraction, ...]
    load: tuple[Fraction, ...]
    cover: Fraction
    bottleneck: frozenset[int] = field(default_factory=frozenset)

    def work_by_id(self, instance: Instance) -> list[Fraction]:
        out = [Fraction(0)] * instance.m
        for pos, mid in enumerate(instance.machine_ids):
            out[mid] = self.work[pos]
        return out


def sort_canonical(jobs: Sequence, bids: Sequence, machine_ids: Iterable[int] | None = None) -> Instance:
    """Stable non-increasing job sort; bids non-decreasing with id tie-break."""
    jobs = [to_rational(p) for p in jobs]
    bids = [to_rational(b) for b in bids]
    ids = list(range(len(bids))) if machine_ids is None else [int(i) for i in machine_ids]
    if len(ids) != len(bids):
        raise InstanceError("machine_ids and bids differ in length")
    if any(p <= 0 for p in jobs):
        raise InstanceError("non-positive job size")
    if any(b <= 0 for b in bids):
        raise InstanceError("non-positive bid")
    order = sorted(range(len(jobs)), key=lambda k: -jobs[k])
    machines = sorted(zip(bids, ids))
    return Instance(
        jobs=tuple(jobs[k] for k in order),
        bids=tuple(b for b, _ in machines),
        machine_ids=tuple(i for _, i in machines),
        job_order=tuple(order),
    )


def parse_instance(text: str | dict) -> Instance:
    """Parse an instance document ``{"jobs": [...], "bids": [...]}``."""
    if isinstance(text, dict):
        doc = text
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"malformed document: {exc}") from exc
    if not isinstance(doc, dict) or "jobs" not in doc or "bids" not in doc:
        raise InstanceError("document must be an object with 'jobs' and 'bids'")
    jobs, bids = doc["jobs"], doc["bids"]
    if not isinstance(jobs, list) or not isinstance(bids, list):
        raise InstanceError("'jobs' and 'bids' must be lists")
    if not jobs:
        raise InstanceError("empty job list")
    if not bids:
        raise InstanceError("empty machine list")
    ids = doc.get("machine_ids")
    if ids is not None:
        if not isinstance(ids, list) or any(isinstance(i, bool) or not isinstance(i, int) for i in ids):
            raise InstanceError("'machine_ids' must be a list of integers")
    return sort_canonical(jobs, bids, ids)


def evaluate(assignment: Assignment, instance: Instance) -> CoverReport:
    if len(assignment.machine_of) != instance.n:
        raise ValueError(f"assignment has {len(assignment.machine_of)} jobs, instance has {instance.n}")
    work = [Fraction(0)] * instance.m
    for k, pos in enumerate(assignment.machine_of):
        if not 0 <= pos < instance.m:
            raise ValueError(f"machine position {pos} out of range")
        work[pos] += instance.jobs[k]
    load = [w * b for w, b in zip(work, instance.bids)]
    cover = min(load)
    return CoverReport(
        work=tuple(work),
        load=tuple(load),
        cover=cover,
        bottleneck=frozenset(i for i, x in enumerate(load) if x == cover),
    )


def normalize_total(instance: Instance) -> Instance:
    total = sum(instance.jobs)
    return instance.with_jobs([p / total for p in instance.jobs])


def works_by_id(assignment: Assignment, instance: Instance) -> list[Fraction]:
    return evaluate(assignment, instance).work_by_id(instance)


def sorted_allocation(sets: Sequence[Sequence[int]], jobs: Sequence[Fraction]) -> list[list[int]]:
    """Order job sets by non-increasing total size (stable), one per machine position."""
    totals = [sum((jobs[k] for k in s), Fraction(0)) for s in sets]
    order = sorted(range(len(sets)), key=lambda t: -totals[t])
    return [list(sets[t]) for t in order]
