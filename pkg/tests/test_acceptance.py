"""Acceptance criteria 1-16.

Every comparison is exact rational arithmetic: the tolerance on every bound
is zero.  Each test prints (and records for the terminal summary) one line:

    [PASS] criterion N: <what was checked> | <measured detail>
"""

import itertools
import random
import time
from fractions import Fraction as F

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, make
from machcover.baselines import round_robin
from machcover.core import evaluate, works_by_id
from machcover.fptas import DpInput, dp_cover_test, fptas, fptas_detail, mechanism_detail
from machcover.harness import (
    RAISE_FACTORS,
    SUITE_SHAPES,
    RandomParams,
    _trial_seed,
    check_monotone_once,
    gen_adversarial,
    gen_random,
    make_algorithm,
    monotonicity_suite,
    ratio_suite,
)
from machcover.nc import next_cover, snc
from machcover.oracle import optimal_cover
from machcover.ptas import delta_for, ptas, reduce_jobs
from machcover.two_machine import ssnc2, ssnc2_split, ssnc_multi

pytestmark = pytest.mark.acceptance

BIG_BUDGET = 10**9  # m**n guard for criterion 1 (5**12 assignments)
MECH_EPS = (F(1, 4), F(1, 2))
MECH_TRIALS = 300


def report(num: int, ok: bool, what: str, detail: str):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {what} | {detail}"
    print(line)
    ACCEPTANCE_LINES.append((num, line))
    assert ok, line


def identical_params(m, n):
    return {"m": f"1..{m}", "n": f"1..{n}", "identical": "1", "size_den": 4}


def test_criterion_01_nc_half_opt():
    t0 = time.perf_counter()
    failures = 0
    for seed in range(500):
        inst = gen_random(identical_params(5, 12), 1000 + seed).instance
        opt = optimal_cover(inst, BIG_BUDGET).opt_cover
        if not next_cover(inst.jobs, inst.m, opt / 2).success:
            failures += 1
    dt = time.perf_counter() - t0
    report(1, failures == 0 and dt < 60, "NC succeeds at OPT/2 on 500 identical instances (m<=5, n<=12), < 60 s",
           f"failures={failures}, time={dt:.1f}s")


def _guess_grid(jobs, m, points):
    top = 2 * sum(jobs) / m
    return [top * t / points for t in range(1, points + 1)]


def test_criterion_02_nc_downward_closed():
    bad = 0
    flips = 0
    for seed in range(200):
        inst = gen_random({"m": "1..5", "n": "1..14", "size_den": 3}, 2000 + seed).instance
        grid = _guess_grid(inst.jobs, inst.m, 20)
        ok = [next_cover(inst.jobs, inst.m, g).success for g in grid]
        for hi in range(len(grid)):
            if ok[hi] and not all(ok[:hi]):
                bad += 1
        flips += any(ok) and not all(ok)
    report(2, bad == 0, "NC success at G implies success at all smaller grid guesses (200 x 20-point grid)",
           f"violations={bad}, instances with a success/failure flip={flips}")


def test_criterion_03_nc_gap():
    bad = 0
    pairs = 0
    for seed in range(200):
        inst = gen_random({"m": "2..5", "n": "2..14", "size_den": 3}, 3000 + seed).instance
        jobs, m = inst.jobs, inst.m
        grid = _guess_grid(jobs, m, 40)
        outcomes = [next_cover(jobs, m, g) for g in grid]
        for (g, lo), (g2, hi) in itertools.combinations(zip(grid, outcomes), 2):
            delta = g2 - g
            if not (lo.success and not hi.success and delta <= g / 3):
                continue
            pairs += 1
            sums = lo.sums(jobs)
            if not sums[-1] < m * min(sums) + delta:
                bad += 1
    report(3, bad == 0 and pairs > 0, "machine m work < m*w + delta at every success->failure grid pair with delta <= G/3",
           f"pairs checked={pairs}, violations={bad}")


def test_criterion_04_snc_ratio():
    t0 = time.perf_counter()
    rep = ratio_suite("snc", 500, 4, {"m": "1..4", "n": "1..10"}, eps=F(1, 10))
    dt = time.perf_counter() - t0
    bad = [r.trial for r in rep.rows if not r.ok]
    report(4, not bad and dt < 120, "SNC cover >= OPT/min(m,(2+eps)s1/sm), 500 instances (m<=4, n<=10, eps=1/10), < 120 s",
           f"violations={len(bad)}, max OPT/cover={rep.max_ratio}, time={dt:.1f}s")


def test_criterion_05_snc_tight_families():
    got = {}
    for family, s in (("snc_lb1", 3), ("snc_lb2", 1)):
        g = gen_adversarial(family, {"s": s})
        inst = g.instance
        opt = optimal_cover(inst).opt_cover
        cover = evaluate(snc(inst, F(1, 10))[0], inst).cover
        got[family] = opt / cover
    ok = got == {"snc_lb1": F(3, 2), "snc_lb2": F(3, 2)}
    report(5, ok, "snc_lb1(s=3) and snc_lb2(s=1) give OPT/cover exactly 3/2",
           ", ".join(f"{k}={v}" for k, v in got.items()))


def test_criterion_06_two_machine_ssnc():
    shape = RandomParams.from_dict({"m": 2, "n": "1..12", "size_den": 3})
    ratio_bad = eq_bad = 0
    worst = F(0)
    for t in range(500):
        inst = gen_random(shape, _trial_seed(6, t)).instance
        opt = optimal_cover(inst).opt_cover
        cover = evaluate(ssnc2(inst), inst).cover
        s = inst.bids[1] / inst.bids[0]
        bound = min(1 + s / (s + 1), 1 + 1 / s)
        if opt > cover * bound:
            ratio_bad += 1
        if cover:
            worst = max(worst, opt / cover / bound)
        if inst.n >= 2:
            sp = ssnc2_split(inst)
            p, i, r = inst.jobs, sp.i, sp.r
            if not (sp.sigma1 / r >= sp.sigma2 - p[i] and sp.sigma1 - p[i - 1] <= r * sp.sigma2):
                eq_bad += 1
    report(6, ratio_bad == 0 and eq_bad == 0, "SSNC2 within min(1+s/(s+1), 1+1/s) and head/tail equations hold (500 instances)",
           f"ratio violations={ratio_bad}, equation violations={eq_bad}, max (ratio/bound)={worst}")


def test_criterion_07_ssnc_lower_bound_family():
    ratios = []
    exact_opt = True
    for eps in (F(1, 30), F(1, 60), F(1, 120)):
        g = gen_adversarial("ssnc_lb_small", {"s": 1, "eps": eps})
        inst = g.instance
        cover = evaluate(ssnc2(inst), inst).cover
        # identical machines: OPT <= total/2, and the planted witness reaches it
        exact_opt &= g.planted_cover == sum(inst.jobs) / 2
        if inst.n <= 14:
            exact_opt &= optimal_cover(inst).opt_cover == g.planted_cover
        ratios.append(g.planted_cover / cover)
    increasing = all(a < b for a, b in zip(ratios, ratios[1:])) and ratios[-1] < F(3, 2)
    ok = ratios[0] == F(15, 11) and increasing and exact_opt
    report(7, ok, "ssnc_lb_small(s=1): ratio 15/11 at eps=1/30, increasing toward 3/2 over eps=1/30,1/60,1/120",
           f"ratios={[str(r) for r in ratios]}, OPT certified exact={exact_opt}")


def _mechanism_instances(eps):
    """The suite-8 mechanism instances for one eps: (instance, machine, factor)."""
    params = RandomParams.from_dict(SUITE_SHAPES["mechanism"])
    seed = 8000 + eps.denominator
    rng = random.Random(seed)
    out = []
    for t in range(MECH_TRIALS):
        inst = gen_random(params, _trial_seed(seed, t)).instance
        out.append((inst, rng.randrange(inst.m), rng.choice(RAISE_FACTORS)))
    return out


def test_criterion_08_monotonicity():
    t0 = time.perf_counter()
    counts = {}
    for name in ("snc", "snc2", "ssnc2", "round-robin"):
        counts[name] = len(monotonicity_suite(name, 1000, 80).violations)
    counts["oracle"] = len(monotonicity_suite("oracle", 300, 81, {"m": "1..3", "n": "1..8"}).violations)
    counts["ptas"] = len(monotonicity_suite("ptas", 300, 82, {"m": "1..3", "n": "1..12"}, eps=F(9, 10)).violations)
    rest = time.perf_counter() - t0
    t1 = time.perf_counter()
    for eps in MECH_EPS:
        alg = make_algorithm("mechanism", eps)
        bad = 0
        for inst, machine, factor in _mechanism_instances(eps):
            bad += check_monotone_once(alg, inst, machine, factor).violated
        counts[f"mechanism eps={eps}"] = bad
    mech = time.perf_counter() - t1
    ok = not any(counts.values()) and mech < 15 * 60
    report(8, ok, "zero monotonicity violations for snc/snc2/ssnc2/round-robin (1000), oracle/ptas/mechanism (300 each)",
           f"violations={counts}, mechanism time={mech:.0f}s, others={rest:.0f}s")


def test_criterion_09_nonmonotonicity():
    g = gen_adversarial("nonmono3", {"a": "3/2"})
    inst = g.instance
    machine, factor = g.probe
    before = works_by_id(ssnc_multi(inst), inst)[machine]
    raised = inst.with_bid(machine, inst.bid_of(machine) * factor)
    after = works_by_id(ssnc_multi(raised), raised)[machine]
    speeds = (1 / inst.bid_of(machine), 1 / raised.bid_of(machine))
    literal = (before, after) == (F(27, 8), F(29, 8)) and speeds == (F(9, 4), F(3, 2))

    r = gen_adversarial("round_nonmono", {"b": "13/8", "a": 2, "eps": "1/2"})
    rm, rf = r.probe
    rb = works_by_id(ssnc_multi(r.instance, r.rounding_base), r.instance)[rm]
    raised = r.instance.with_bid(rm, r.instance.bid_of(rm) * rf)
    ra = works_by_id(ssnc_multi(raised, r.rounding_base), raised)[rm]
    rounding_ok = rm == 1 and ra > rb

    report(9, literal and rounding_ok,
           "nonmono3(a=3/2): fastest machine work 27/8 -> 29/8 as speed 9/4 -> 3/2; round_nonmono violation on machine 2",
           f"nonmono3 work {before} -> {after} (violation={after > before}), speed {speeds[0]} -> {speeds[1]}; "
           f"round_nonmono machine {rm + 1} work {rb} -> {ra}")


def test_criterion_10_fptas_guarantee():
    t0 = time.perf_counter()
    bad = 0
    worst = F(1)
    for seed in range(300):
        inst = gen_random({"m": "1..3", "n": "1..8"}, 10000 + seed).instance
        opt = optimal_cover(inst).opt_cover
        for eps in (F(1, 4), F(1, 5)):
            cover = evaluate(fptas(inst, eps)[0], inst).cover
            if cover < (1 - 2 * eps) * opt:
                bad += 1
            if opt:
                worst = min(worst, cover / opt)
    example = make([2, 1, 1], [1, 1])
    ex = evaluate(fptas_detail(example, F(1, 4)).assignment, example).cover
    dt = time.perf_counter() - t0
    report(10, bad == 0 and ex == 2 and dt < 300, "FPTAS cover >= (1-2eps)OPT, 300 instances x eps in {1/4,1/5}; [2,1,1] gives 2",
           f"violations={bad}, min cover/OPT={worst}, example cover={ex}, time={dt:.1f}s")


def _exhaustive_reach(loads, S):
    n, m = loads.shape
    for k in range(n + 1):
        for pre in itertools.product(range(m), repeat=k):
            got = [0] * m
            for j, i in enumerate(pre):
                got[i] += int(loads[j, i])
            if all(x >= S for x in got):
                return True
    return False


def test_criterion_11_dp_soundness():
    rng = np.random.default_rng(11)
    disagree = 0
    reachable = 0
    for _ in range(100):
        m = int(rng.integers(1, 3))
        n = int(rng.integers(1, 7))
        S = int(rng.integers(1, 21))
        loads = rng.integers(1, 16, size=(n, m))
        res = dp_cover_test(DpInput(loads, S))
        truth = _exhaustive_reach(loads, S)
        reachable += truth
        if res.reachable != truth:
            disagree += 1
        elif res.reachable:
            got = [0] * m
            for j, i in enumerate(res.prefix):
                got[i] += int(loads[j, i])
            disagree += not all(x >= S for x in got)
    report(11, disagree == 0, "dp_cover_test agrees with exhaustive prefix search (100 inputs, m<=2, n<=6, S<=20)",
           f"disagreements={disagree}, reachable inputs={reachable}")


def test_criterion_12_mechanism_bound():
    bad = 0
    checked = 0
    clamped = 0
    for eps in MECH_EPS:
        factor = (1 - 2 * eps) / (1 + eps) ** 2
        for inst, _, _ in _mechanism_instances(eps):
            run = mechanism_detail(inst, eps)
            if run.clamped:
                clamped += 1
                continue
            checked += 1
            cover = evaluate(run.assignment, inst).cover
            if cover < factor * optimal_cover(inst).opt_cover:
                bad += 1
    report(12, bad == 0, "mechanism cover >= ((1-2eps)/(1+eps)^2)OPT on unclamped suite-8 instances",
           f"checked={checked}, skipped clamped={clamped}, violations={bad}")


def test_criterion_13_ptas():
    t0 = time.perf_counter()
    eps = F(9, 10)
    bad = 0
    reduced = 0
    for seed in range(100):
        g = gen_random({"m": 2, "n": 30, "planted": "1"}, 13000 + seed)
        inst = g.instance
        reduced += reduce_jobs(inst.jobs, 2, eps).case_tag != "identity"
        cover = evaluate(ptas(inst, eps), inst).cover
        bad += cover < (1 - 3 * eps) * g.planted_cover
    exact_bad = 0
    for seed in range(200):
        inst = gen_random({"m": "2..3", "n": "1..12"}, 13500 + seed).instance
        assert reduce_jobs(inst.jobs, inst.m, eps).case_tag == "identity"
        exact_bad += evaluate(ptas(inst, eps), inst).cover != optimal_cover(inst).opt_cover
    dt = time.perf_counter() - t0
    report(13, bad == 0 and exact_bad == 0 and reduced == 100 and dt < 300,
           "PTAS >= (1-3eps)planted on 100 reduced instances; = OPT on 200 identity-path instances; < 300 s",
           f"bound violations={bad} (1-3eps={1 - 3 * eps}), reduction path taken={reduced}/100, "
           f"identity mismatches={exact_bad}, time={dt:.1f}s")


def _job_set(rng):
    big = [F(rng.randint(20, 60), rng.randint(1, 3)) for _ in range(rng.randint(0, 20))]
    small = [F(rng.randint(1, 12), rng.randint(1, 4)) for _ in range(rng.randint(0, 150))]
    jobs = sorted(big + small, reverse=True)
    return jobs or [F(1)]


def test_criterion_14_reduction_invariants():
    rng = random.Random(14)
    tags = {"identity": 0, "greedy": 0, "list-scheduling": 0}
    bad = []
    for t in range(500):
        jobs = _job_set(rng)
        m = rng.randint(1, 2)
        eps = rng.choice((F(9, 10), F(3, 4), F(1, 2)))
        r = reduce_jobs(jobs, m, eps)
        tags[r.case_tag] += 1
        delta = delta_for(m, eps)
        members = list(r.kept) + [k for mj in r.mega for k in mj.members]
        total = sum((jobs[k] for k in r.kept), F(0)) + sum((mj.size for mj in r.mega), F(0))
        ok = sorted(members) == list(range(len(jobs))) and total == sum(jobs)
        ok &= all(mj.size == sum(jobs[k] for k in mj.members) for mj in r.mega)
        ok &= r.count <= 4 * delta
        if r.case_tag == "greedy":
            a = r.small_max
            ok &= all(a <= mj.size < 3 * a for mj in r.mega)
        elif r.case_tag == "list-scheduling":
            A, a = r.small_total, r.small_max
            sizes = [mj.size for mj in r.mega]
            ok &= len(sizes) == delta
            ok &= all(A / delta - a <= s <= A / delta + a for s in sizes)
            ok &= max(sizes) <= 2 * min(sizes)
        # bid-obliviousness: the reduction sees the jobs only, through any instance
        for bids in ([F(1)] * m, [F(rng.randint(1, 9), 2) for _ in range(m)]):
            inst = make(jobs, bids)
            ok &= reduce_jobs(inst.jobs, inst.m, eps) == r
        if not ok:
            bad.append(t)
    every_case = all(tags.values())
    report(14, not bad and every_case, "reduction size bounds, conservation, bid-obliviousness, count <= 4*Delta (500 job sets)",
           f"violations={len(bad)}, cases={tags}")


def test_criterion_15_round_robin():
    tight = {}
    for m in range(2, 6):
        g = gen_adversarial("rr_tight", {"m": m})
        inst = g.instance
        tight[m] = optimal_cover(inst).opt_cover / evaluate(round_robin(inst), inst).cover
    rep = ratio_suite("round-robin", 500, 15, {"m": "1..4", "n": "1..10"})
    nonincr = True
    for t in range(500):
        inst = gen_random({"m": "1..5", "n": "1..14"}, _trial_seed(151, t)).instance
        w = evaluate(round_robin(inst), inst).work
        nonincr &= all(x >= y for x, y in zip(w, w[1:]))
    ok = tight == {m: F(m) for m in range(2, 6)} and rep.passed and nonincr
    report(15, ok, "rr_tight(m) ratio exactly m for m=2..5; cover >= OPT/m on 500 instances; works non-increasing",
           f"tight ratios={ {k: str(v) for k, v in tight.items()} }, ratio violations={len(rep.rows) - sum(r.ok for r in rep.rows)}, "
           f"non-increasing={nonincr}")


def test_criterion_16_large_jobs_and_small_sum():
    c1 = c2 = 0
    for seed in range(300):
        inst = gen_random({"m": "1..4", "n": "1..10", "unit_fastest": "1", "size_den": 3}, 16000 + seed).instance
        assert inst.bids[0] == 1
        opt = optimal_cover(inst).opt_cover
        big = [p for p in inst.jobs if p > opt]
        n0 = len(big)
        if n0 > inst.m - 1:
            c1 += 1
        small = sum((p for p in inst.jobs if p <= opt), F(0))
        if n0 <= inst.m - 1 and small > 2 * opt * (inst.m - n0 - 1) + opt:
            c2 += 1
    report(16, c1 == 0 and c2 == 0, "#{p > OPT} <= m-1 and small-job sum <= 2*OPT*(m-n0-1)+OPT (300 instances, s1=1)",
           f"large-job count violations={c1}, small-sum violations={c2}")
