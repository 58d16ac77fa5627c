"""Instance generators, monotonicity probing and approximation-ratio measurement."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .baselines import round_robin
from .core import Assignment, Instance, evaluate, fmt, sort_canonical, works_by_id
from .fptas import fptas, mechanism, mechanism_detail
from .nc import snc
from .oracle import DEFAULT_BUDGET, lex_min_optimal, optimal_cover
from .ptas import PTAS_BUDGET, ptas
from .two_machine import snc2, ssnc2, ssnc_multi

Algorithm = Callable[[Instance], Assignment]

RAISE_FACTORS = (Fraction(9, 8), Fraction(3, 2), Fraction(2), Fraction(5))

DEFAULT_EPS = {
    "snc": Fraction(1, 10),
    "ptas": Fraction(9, 10),
    "fptas": Fraction(1, 4),
    "mechanism": Fraction(1, 4),
}

# algorithms with a proof of monotonicity; ssnc-multi is here only to fail
PROVEN_MONOTONE = {"snc", "snc2", "ssnc2", "round-robin", "oracle", "ptas", "mechanism"}


def golden_below(s: Fraction) -> bool:
    """s <= phi, decided exactly (phi is the positive root of x^2 = x + 1)."""
    return s * s <= s + 1


def silver_below(s: Fraction) -> bool:
    """s <= 1 + sqrt(2), decided exactly."""
    return s <= 1 or (s - 1) ** 2 <= 2


# the two crossover thresholds quoted for SNC vs SSNC on two machines
THRESHOLDS = {"phi": golden_below, "1+sqrt2": silver_below}


def make_algorithm(
    name: str,
    eps: Fraction | None = None,
    budget: int | None = None,
    rounding_base: Fraction | None = None,
) -> Algorithm:
    eps = DEFAULT_EPS.get(name) if eps is None else Fraction(eps)
    if name == "snc":
        return lambda inst: snc(inst, eps)[0]
    if name == "snc2":
        return snc2
    if name == "ssnc2":
        return ssnc2
    if name == "ssnc-multi":
        return lambda inst: ssnc_multi(inst, rounding_base)
    if name == "round-robin":
        return round_robin
    if name == "oracle":
        return lambda inst: lex_min_optimal(inst, budget or DEFAULT_BUDGET)
    if name == "ptas":
        return lambda inst: ptas(inst, eps, budget or PTAS_BUDGET)
    if name == "fptas":
        return lambda inst: fptas(inst, eps)[0]
    if name == "mechanism":
        return lambda inst: mechanism(inst, eps)
    raise KeyError(f"unknown algorithm {name!r}")


ALGORITHM_NAMES = ("snc", "snc2", "ssnc2", "ssnc-multi", "round-robin", "ptas", "fptas", "mechanism", "oracle")


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

@dataclass
class GeneratedInstance:
    instance: Instance
    family: str
    params: dict
    planted_cover: Fraction | None = None
    predicted_ratio: Fraction | None = None
    witness: Assignment | None = None
    probe: tuple[int, Fraction] | None = None  # designated (machine id, bid factor)
    rounding_base: Fraction | None = None

    def __post_init__(self):
        if self.planted_cover is not None:
            assert self.witness is not None
            assert evaluate(self.witness, self.instance).cover >= self.planted_cover


@dataclass
class RandomParams:
    m: tuple[int, int] = (1, 4)
    n: tuple[int, int] = (1, 10)
    size: tuple[int, int] = (1, 16)
    size_den: int = 1
    bid: tuple[int, int] = (1, 8)
    bid_den: int = 4
    identical: bool = False
    unit_fastest: bool = False
    planted: bool = False
    target: Fraction = Fraction(5)

    @classmethod
    def from_dict(cls, d: dict) -> "RandomParams":
        p = cls()
        for key, value in d.items():
            if key in ("m", "n", "size", "bid"):
                if isinstance(value, str) and ".." in value:
                    lo, hi = value.split("..")
                    value = (int(lo), int(hi))
                elif not isinstance(value, tuple):
                    value = (int(value), int(value))
                setattr(p, key, value)
            elif key in ("size_den", "bid_den"):
                setattr(p, key, int(value))
            elif key in ("identical", "unit_fastest", "planted"):
                setattr(p, key, str(value).lower() in ("1", "true", "yes"))
            elif key == "target":
                p.target = Fraction(value)
            else:
                raise KeyError(f"unknown generator parameter {key!r}")
        return p


def _rand_frac(rng: random.Random, num: tuple[int, int], den: int) -> Fraction:
    return Fraction(rng.randint(*num), rng.randint(1, den))


def gen_random(params: RandomParams | dict, seed: int) -> GeneratedInstance:
    p = RandomParams.from_dict(params) if isinstance(params, dict) else params
    rng = random.Random(seed)
    m = rng.randint(*p.m)
    n = rng.randint(*p.n)
    if p.identical:
        bids = [Fraction(1)] * m
    else:
        bids = [_rand_frac(rng, p.bid, p.bid_den) for _ in range(m)]
        if p.unit_fastest:
            low = min(bids)
            bids = [b / low for b in bids]
    ids = list(range(m))
    rng.shuffle(ids)
    meta = {"m": m, "n": n, "seed": seed}
    if not p.planted or n < m:
        jobs = [_rand_frac(rng, p.size, p.size_den) for _ in range(n)]
        inst = sort_canonical(jobs, bids, ids)
        planted = None
        witness = None
        if p.planted:
            witness = Assignment.all_on(n)
            planted = Fraction(0)
        return GeneratedInstance(inst, "random", meta, planted, None, witness)
    # planted: every machine gets a bundle of at least one job worth target/bid
    counts = [1] * m
    for _ in range(n - m):
        counts[rng.randrange(m)] += 1
    jobs: list[Fraction] = []
    owner: list[int] = []
    for mid in range(m):
        need = p.target / bids[mid]
        weights = [rng.randint(*p.size) for _ in range(counts[mid])]
        total = sum(weights)
        for w in weights:
            jobs.append(need * w / total)
            owner.append(mid)
    inst = sort_canonical(jobs, bids, range(m))
    pos = {mid: k for k, mid in enumerate(inst.machine_ids)}
    witness = Assignment(tuple(pos[owner[orig]] for orig in inst.job_order))
    planted = evaluate(witness, inst).cover
    return GeneratedInstance(inst, "planted", meta, planted, None, witness)


def _speeds_to_instance(jobs, speeds) -> Instance:
    return sort_canonical(jobs, [1 / Fraction(s) for s in speeds])


def _witness(inst: Instance, groups: list[list[Fraction]]) -> Assignment:
    """Assignment putting the listed job sizes on sorted positions 0, 1, ..."""
    remaining = {k: p for k, p in enumerate(inst.jobs)}
    out = [None] * inst.n
    for pos, sizes in enumerate(groups):
        for size in sizes:
            k = next(k for k, p in remaining.items() if p == size)
            del remaining[k]
            out[k] = pos
    assert not remaining
    return Assignment(tuple(out))


def gen_adversarial(family: str, params: dict | None = None) -> GeneratedInstance:
    params = {k: Fraction(v) for k, v in (params or {}).items()}
    F = Fraction
    if family == "rr_tight":
        m = int(params.get("m", 2))
        if m < 2:
            raise ValueError("rr_tight needs m >= 2")
        jobs = [F(1)] * (m - 1) + [F(1, m)] * m
        inst = sort_canonical(jobs, [F(1)] * m)
        wit = Assignment(tuple(min(k, m - 1) for k in range(inst.n)))
        return GeneratedInstance(inst, family, {"m": m}, F(1), F(m), wit)
    if family == "snc_lb1":
        s = params.get("s", F(3))
        if s <= 1:
            raise ValueError("snc_lb1 needs s > 1")
        small, other = (s - 1) / (2 * (s + 1)), 1 / (s + 1)
        inst = _speeds_to_instance([F(1, 2), small, other], [s, 1])
        wit = _witness(inst, [[F(1, 2), small], [other]])
        return GeneratedInstance(inst, family, {"s": s}, 1 / (s + 1), 2 * s / (s + 1), wit)
    if family == "snc_lb2":
        s = params.get("s", F(1))
        if not 1 <= s <= F(3, 2):
            raise ValueError("snc_lb2 needs 1 <= s <= 3/2")
        x, y = (2 * s - 1) / (3 * s + 3), (2 - s) / (3 * s + 3)
        inst = _speeds_to_instance([F(1, 3), F(1, 3), x, y], [s, 1])
        wit = _witness(inst, [[F(1, 3), x], [F(1, 3), y]])
        return GeneratedInstance(inst, family, {"s": s}, 1 / (s + 1), 3 / (s + 1), wit)
    if family == "ssnc_lb_small":
        s = params.get("s", F(1))
        eps = params.get("eps", F(1, 30))
        if not (s >= 1 and golden_below(s)):
            raise ValueError("ssnc_lb_small needs 1 <= s <= phi")
        big = s / (2 * s + 1)
        if not 0 < eps < big:
            raise ValueError("eps out of range")
        rest = 1 / (2 * s + 1) + eps
        count = params.get("count")
        if count is None:
            count = rest / eps
            if count.denominator != 1:
                raise ValueError("give count: small-job total is not a multiple of eps")
        count = int(count)
        q = rest / count
        jobs = [big, big - eps] + [q] * count
        inst = _speeds_to_instance(jobs, [s, 1])
        planted = wit = None
        target = 1 / (s + 1)
        for head in ([], [big], [big - eps]):
            k = (target - sum(head)) / q
            if k.denominator == 1 and 0 <= k <= count:
                slow = head + [q] * int(k)
                fast = list(jobs)
                for size in slow:
                    fast.remove(size)
                wit = _witness(inst, [fast, slow])
                planted = evaluate(wit, inst).cover
                break
        predicted = (1 / (s + 1)) / (1 / (2 * s + 1) + eps)
        return GeneratedInstance(inst, family, {"s": s, "eps": eps, "count": count}, planted, predicted, wit)
    if family == "ssnc_lb_large":
        s = params.get("s", F(2))
        eps = params.get("eps", F(1, 100))
        if golden_below(s):
            raise ValueError("ssnc_lb_large needs s > phi")
        jobs = [s * s / (s + 1) ** 2 - eps, 1 / (s + 1) + eps, s / (s + 1) ** 2]
        if not (eps > 0 and jobs[0] >= jobs[1] >= jobs[2] > 0):
            raise ValueError("eps too large for a sorted sequence")
        inst = _speeds_to_instance(jobs, [s, 1])
        wit = _witness(inst, [[jobs[0], jobs[2]], [jobs[1]]])
        planted = 1 / (s + 1) - eps / s
        predicted = planted / (s / (s + 1) ** 2)
        return GeneratedInstance(inst, family, {"s": s, "eps": eps}, planted, predicted, wit)
    if family == "nonmono3":
        a = params.get("a", F(3, 2))
        if a * a <= 2:
            raise ValueError("nonmono3 needs a > sqrt(2)")
        jobs = [a**3, a**3 - 1, a * a - 1, a * a - 1, F(1)]
        inst = _speeds_to_instance(jobs, [a * a, a, 1])
        return GeneratedInstance(inst, family, {"a": a}, probe=(0, a))
    if family == "round_nonmono":
        b = params.get("b", F(13, 8))
        a = params.get("a", F(2))
        eps = params.get("eps", F(1, 2))
        if golden_below(b):
            raise ValueError("round_nonmono needs b > phi")
        if not b < a < b + 1:
            raise ValueError("round_nonmono needs b < a < b + 1")
        if not 0 < eps < 1 / b:
            raise ValueError("round_nonmono needs 0 < eps < 1/b")
        jobs = [(1 + eps) * b, b, b, F(1)]
        inst = _speeds_to_instance(jobs, [a, a])
        return GeneratedInstance(inst, family, {"b": b, "a": a, "eps": eps}, probe=(1, a), rounding_base=b)
    raise KeyError(f"unknown family {family!r}")


FAMILIES = ("rr_tight", "snc_lb1", "snc_lb2", "ssnc_lb_small", "ssnc_lb_large", "nonmono3", "round_nonmono")


# ---------------------------------------------------------------------------
# monotonicity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonotonicityVerdict:
    algorithm: str
    instance: Instance
    machine: int
    old_bid: Fraction
    new_bid: Fraction
    old_work: Fraction
    new_work: Fraction

    @property
    def violated(self) -> bool:
        return self.new_work > self.old_work

    def to_json(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "instance": self.instance.to_document(),
            "machine": self.machine,
            "old_bid": fmt(self.old_bid),
            "new_bid": fmt(self.new_bid),
            "old_work": fmt(self.old_work),
            "new_work": fmt(self.new_work),
            "violated": self.violated,
        }


def check_monotone_once(alg: Algorithm, instance: Instance, machine: int, factor: Fraction, name: str = "") -> MonotonicityVerdict:
    factor = Fraction(factor)
    if factor <= 1:
        raise ValueError("bid factor must exceed 1")
    old_bid = instance.bid_of(machine)
    raised = instance.with_bid(machine, old_bid * factor)
    before = works_by_id(alg(instance), instance)[machine]
    after = works_by_id(alg(raised), raised)[machine]
    return MonotonicityVerdict(name, instance, machine, old_bid, old_bid * factor, before, after)


# instance shapes each algorithm is exercised on by default
SUITE_SHAPES = {
    "snc": dict(m=(1, 5), n=(1, 12)),
    "round-robin": dict(m=(1, 5), n=(1, 12)),
    "ssnc-multi": dict(m=(1, 3), n=(1, 8)),
    "snc2": dict(m=(2, 2), n=(1, 12)),
    "ssnc2": dict(m=(2, 2), n=(1, 12)),
    "oracle": dict(m=(1, 3), n=(1, 8)),
    "ptas": dict(m=(1, 3), n=(1, 12)),
    "fptas": dict(m=(1, 3), n=(1, 8)),
    "mechanism": dict(m=(2, 2), n=(1, 6), size=(1, 16), size_den=1),
}

# ratio runs need the exact oracle, so keep m**n within the default budget
RATIO_SHAPES = {
    "snc": dict(m=(1, 4), n=(1, 10)),
    "round-robin": dict(m=(1, 4), n=(1, 10)),
    "snc2": dict(m=(2, 2), n=(1, 12)),
    "ssnc2": dict(m=(2, 2), n=(1, 12)),
    "ptas": dict(m=(1, 3), n=(1, 12)),
}


@dataclass
class MonotoneReport:
    algorithm: str
    trials: int
    verdicts: list[MonotonicityVerdict] = field(default_factory=list)

    @property
    def violations(self) -> list[MonotonicityVerdict]:
        return [v for v in self.verdicts if v.violated]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "trials": self.trials,
            "violations": [v.to_json() for v in self.violations],
            "max_ratio": None,
            "bound": None,
            "pass": self.passed,
        }


def _trial_seed(seed: int, t: int) -> int:
    return seed * 1_000_003 + t


def monotonicity_suite(
    alg_name: str,
    trials: int,
    seed: int,
    gen_params: dict | None = None,
    eps: Fraction | None = None,
    budget: int | None = None,
) -> MonotoneReport:
    gen_params = dict(gen_params or {})
    family = gen_params.pop("family", None)
    rng = random.Random(seed)
    report = MonotoneReport(alg_name, trials)
    if family is not None:
        g = gen_adversarial(family, gen_params)
        alg = make_algorithm(alg_name, eps, budget, g.rounding_base)
        probes = [g.probe] if g.probe else []
        while len(probes) < trials:
            probes.append((rng.randrange(g.instance.m), rng.choice(RAISE_FACTORS)))
        for machine, factor in probes[:trials]:
            report.verdicts.append(check_monotone_once(alg, g.instance, machine, factor, alg_name))
        return report
    alg = make_algorithm(alg_name, eps, budget)
    shape = dict(SUITE_SHAPES.get(alg_name, {}))
    shape.update(gen_params)
    params = RandomParams.from_dict(shape)
    for t in range(trials):
        g = gen_random(params, _trial_seed(seed, t))
        machine = rng.randrange(g.instance.m)
        factor = rng.choice(RAISE_FACTORS)
        report.verdicts.append(check_monotone_once(alg, g.instance, machine, factor, alg_name))
    return report


# ---------------------------------------------------------------------------
# approximation ratios
# ---------------------------------------------------------------------------

def ratio_bound(alg_name: str, instance: Instance, eps: Fraction | None = None) -> Fraction | None:
    """Proven upper bound on OPT/cover for this instance, or None when there is none."""
    eps = DEFAULT_EPS.get(alg_name) if eps is None else Fraction(eps)
    m = instance.m
    spread = instance.bids[-1] / instance.bids[0]
    if alg_name == "oracle":
        return Fraction(1)
    if alg_name == "round-robin":
        return Fraction(m)
    if alg_name == "snc":
        return min(Fraction(m), (2 + eps) * spread)
    if alg_name == "snc2":
        s = spread
        return max(3 / (s + 1), 2 * s / (s + 1))
    if alg_name == "ssnc2":
        s = spread
        return min(1 + s / (s + 1), 1 + 1 / s)
    if alg_name == "fptas":
        return 1 / (1 - 2 * eps) if eps < Fraction(1, 2) else None
    if alg_name == "ptas":
        return 1 / (1 - 3 * eps) if eps < Fraction(1, 3) else None
    if alg_name == "mechanism":
        if eps >= Fraction(1, 2) or mechanism_detail(instance, eps).clamped:
            return None
        return (1 + eps) ** 2 / (1 - 2 * eps)
    return None


@dataclass(frozen=True)
class RatioRow:
    trial: int
    m: int
    n: int
    opt: Fraction
    cover: Fraction
    planted: bool
    bound: Fraction | None

    @property
    def ratio(self) -> Fraction | None:
        """OPT/cover; None stands for an unbounded ratio (cover 0, OPT > 0)."""
        if self.opt == 0:
            return Fraction(1)
        if self.cover == 0:
            return None
        return self.opt / self.cover

    def to_json(self) -> dict:
        r = self.ratio
        return {
            "trial": self.trial, "m": self.m, "n": self.n, "opt": fmt(self.opt), "cover": fmt(self.cover),
            "ratio": "inf" if r is None else fmt(r), "bound": None if self.bound is None else fmt(self.bound),
            "planted": self.planted,
        }

    @property
    def ok(self) -> bool:
        if self.bound is None:
            return True
        r = self.ratio
        return r is not None and r <= self.bound


@dataclass
class RatioReport:
    algorithm: str
    trials: int
    rows: list[RatioRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def max_ratio(self) -> Fraction | None:
        if any(r.ratio is None for r in self.rows):
            return None
        return max((r.ratio for r in self.rows), default=Fraction(1))

    def worst(self) -> RatioRow | None:
        """Row closest to (or furthest past) its bound."""
        bounded = [r for r in self.rows if r.bound is not None]
        if not bounded:
            return None
        return max(bounded, key=lambda r: (r.ratio is None, (r.ratio or 0) / r.bound))

    def to_json(self) -> dict:
        mr = self.max_ratio
        # bound reported is the one applying to the row attaining max_ratio
        at_max = [r for r in self.rows if r.ratio == mr]
        bounds = [r.bound for r in at_max if r.bound is not None]
        return {
            "algorithm": self.algorithm,
            "trials": self.trials,
            "violations": [r.to_json() for r in self.rows if not r.ok],
            "max_ratio": "inf" if mr is None else fmt(mr),
            "bound": fmt(min(bounds)) if bounds else None,
            "pass": self.passed,
        }

    def csv_rows(self) -> list[list[str]]:
        out = [["trial", "m", "n", "opt", "cover", "ratio", "bound", "planted", "ok"]]
        for r in self.rows:
            out.append([
                str(r.trial), str(r.m), str(r.n), fmt(r.opt), fmt(r.cover),
                "inf" if r.ratio is None else fmt(r.ratio),
                "inf" if r.bound is None else fmt(r.bound),
                str(r.planted).lower(), str(r.ok).lower(),
            ])
        return out


def ratio_suite(
    alg_name: str,
    trials: int,
    seed: int,
    gen_params: dict | None = None,
    budget: int = DEFAULT_BUDGET,
    eps: Fraction | None = None,
) -> RatioReport:
    shape = dict(RATIO_SHAPES.get(alg_name, SUITE_SHAPES.get(alg_name, {})))
    shape.update(gen_params or {})
    params = RandomParams.from_dict(shape)
    alg = make_algorithm(alg_name, eps, budget)
    report = RatioReport(alg_name, trials)
    for t in range(trials):
        g = gen_random(params, _trial_seed(seed, t))
        inst = g.instance
        cover = evaluate(alg(inst), inst).cover
        if g.planted_cover is not None:
            opt, planted = g.planted_cover, True
        else:
            opt, planted = optimal_cover(inst, budget).opt_cover, False
        report.rows.append(RatioRow(t, inst.m, inst.n, opt, cover, planted, ratio_bound(alg_name, inst, eps)))
    return report
