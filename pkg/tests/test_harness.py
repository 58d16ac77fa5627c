from fractions import Fraction as F

import pytest

from conftest import make
from machcover.core import evaluate
from machcover.harness import (
    ALGORITHM_NAMES,
    FAMILIES,
    check_monotone_once,
    gen_adversarial,
    gen_random,
    golden_below,
    make_algorithm,
    monotonicity_suite,
    ratio_suite,
    silver_below,
)
from machcover.oracle import optimal_cover
from machcover.two_machine import ssnc2


def test_gen_random_deterministic():
    params = {"m": "1..4", "n": "1..9", "size_den": 3}
    for seed in range(20):
        assert gen_random(params, seed).instance == gen_random(params, seed).instance


def test_planted_witness():
    for seed in range(30):
        g = gen_random({"m": 2, "n": "2..8", "planted": "1", "target": 5}, seed)
        assert evaluate(g.witness, g.instance).cover == g.planted_cover
        assert g.planted_cover >= 5
        assert optimal_cover(g.instance).opt_cover >= g.planted_cover


def test_gen_random_small_n():
    g = gen_random({"m": 3, "n": 2}, 0)
    assert optimal_cover(g.instance).opt_cover == 0


def test_unknown_param():
    with pytest.raises(KeyError):
        gen_random({"colour": "red"}, 0)
    with pytest.raises(KeyError):
        gen_adversarial("nope")
    with pytest.raises(KeyError):
        make_algorithm("nope")


def test_family_examples():
    g = gen_adversarial("rr_tight", {"m": 2})
    assert g.instance.jobs == (1, F(1, 2), F(1, 2))
    assert g.planted_cover == 1

    g = gen_adversarial("ssnc_lb_small", {"s": 1, "eps": "1/30"})
    assert g.instance.jobs == (F(10, 30), F(9, 30)) + (F(1, 30),) * 11
    assert g.predicted_ratio == F(15, 11)

    g = gen_adversarial("nonmono3", {"a": "3/2"})
    assert g.instance.jobs == (F(27, 8), F(19, 8), F(5, 4), F(5, 4), 1)
    assert [1 / b for b in g.instance.bids] == [F(9, 4), F(3, 2), 1]


@pytest.mark.parametrize("family", FAMILIES)
def test_every_family_builds(family):
    g = gen_adversarial(family)
    assert g.family == family
    if g.planted_cover is not None:
        assert evaluate(g.witness, g.instance).cover >= g.planted_cover


@pytest.mark.parametrize(
    "family,params",
    [
        ("rr_tight", {"m": 1}),
        ("snc_lb1", {"s": 1}),
        ("snc_lb2", {"s": 2}),
        ("ssnc_lb_small", {"s": 2}),
        ("ssnc_lb_large", {"s": "3/2"}),
        ("nonmono3", {"a": "7/5"}),
        ("round_nonmono", {"b": "3/2"}),
        ("round_nonmono", {"b": "13/8", "a": 3}),
    ],
)
def test_family_ranges(family, params):
    with pytest.raises(ValueError):
        gen_adversarial(family, params)


def test_thresholds_exact():
    assert golden_below(F(8, 5))
    assert golden_below(F(1618, 1000))
    assert not golden_below(F(1619, 1000))
    assert silver_below(F(2414, 1000))
    assert not silver_below(F(2415, 1000))


def test_check_monotone_once():
    inst = make([3, 2, 1], [1, 2], [0, 1])
    v = check_monotone_once(ssnc2, inst, 0, F(3, 2), "ssnc2")
    assert not v.violated
    assert v.new_bid == F(3, 2)
    with pytest.raises(ValueError):
        check_monotone_once(ssnc2, inst, 0, F(1))


def test_nonmono3_probe():
    g = gen_adversarial("nonmono3", {"a": "3/2"})
    machine, factor = g.probe
    v = check_monotone_once(make_algorithm("ssnc-multi"), g.instance, machine, factor)
    assert v.violated
    assert (v.old_bid, v.new_bid) == (F(4, 9), F(2, 3))
    assert (v.old_work, v.new_work) == (F(7, 2), F(29, 8))


def test_monotonicity_suite_reproducible():
    a = monotonicity_suite("snc", 30, 7)
    b = monotonicity_suite("snc", 30, 7)
    assert a.to_json() == b.to_json()
    assert a.passed


def test_monotonicity_suite_family():
    rep = monotonicity_suite("ssnc-multi", 3, 1, {"family": "nonmono3", "a": "3/2"})
    assert len(rep.violations) >= 1
    assert rep.to_json()["pass"] is False


def test_ratio_suite_reports():
    rep = ratio_suite("round-robin", 20, 1)
    assert rep.passed
    doc = rep.to_json()
    assert doc["algorithm"] == "round-robin"
    assert doc["violations"] == []
    rows = rep.csv_rows()
    assert rows[0][0] == "trial" and len(rows) == 21


def test_ratio_suite_planted():
    rep = ratio_suite("ptas", 3, 2, {"m": 2, "n": 30, "planted": "1"})
    assert all(r.planted for r in rep.rows)


def test_algorithm_names_resolve():
    for name in ALGORITHM_NAMES:
        make_algorithm(name)
