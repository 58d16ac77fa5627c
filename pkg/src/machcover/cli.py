"""Command line front end.

    machcover solve --alg snc2 --instance two.json
    machcover oracle --instance two.json
    machcover monotone --alg ssnc-multi --trials 10 --seed 1 --gen-params family=nonmono3,a=3/2
    machcover ratio --alg snc --trials 200 --seed 7 --format csv
    machcover gen --family rr_tight --params m=3 --out rr3.json

Exit codes: 0 ok, 1 expectation not met, 2 usage or parse error, 3 oracle
budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .core import InstanceError, evaluate, fmt, parse_instance, to_rational
from .fptas import check_eps, fptas_detail
from .harness import (
    ALGORITHM_NAMES,
    DEFAULT_EPS,
    FAMILIES,
    gen_adversarial,
    gen_random,
    make_algorithm,
    monotonicity_suite,
    ratio_suite,
)
from .nc import snc
from .oracle import DEFAULT_BUDGET, BudgetExceeded, optimal_cover


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except InstanceError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _kv(text: str) -> dict:
    out = {}
    if not text:
        return out
    for part in text.split(","):
        if "=" not in part:
            raise argparse.ArgumentTypeError(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _eps_for(alg: str, eps: Fraction | None) -> Fraction | None:
    if eps is None:
        return DEFAULT_EPS.get(alg)
    if alg in ("fptas", "mechanism"):
        try:
            check_eps(eps)
        except ValueError:
            raise UsageError(f"--epsilon for {alg} must be 1/k with k a positive integer (e.g. 1/4), got {eps}")
    if alg == "snc" and not 0 < eps < Fraction(1, 2):
        raise UsageError("--epsilon for snc must lie in (0, 1/2)")
    if alg == "ptas" and not 0 < eps < 1:
        raise UsageError("--epsilon for ptas must lie in (0, 1)")
    return eps


def _load_instance(path: str):
    try:
        with open(path) as fh:
            return parse_instance(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    except InstanceError as exc:
        raise UsageError(f"{path}: {exc}")


def _solution_json(alg: str, inst, assignment) -> dict:
    rep = evaluate(assignment, inst)
    by_id = sorted(range(inst.m), key=lambda pos: inst.machine_ids[pos])
    return {
        "algorithm": alg,
        "assignment": assignment.by_input_order(inst),
        "works": [fmt(rep.work[pos]) for pos in by_id],
        "loads": [fmt(rep.load[pos]) for pos in by_id],
        "cover": fmt(rep.cover),
    }


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    eps = _eps_for(args.alg, args.epsilon)
    extra = {}
    if args.alg == "snc":
        assignment, trace = snc(inst, eps)
        extra["trace"] = trace.to_json()
    elif args.alg == "fptas":
        run = fptas_detail(inst, eps)
        assignment = run.assignment
        extra["j"] = run.j
    else:
        alg = make_algorithm(args.alg, eps, args.budget, args.rounding_base)
        try:
            assignment = alg(inst)
        except ValueError as exc:
            raise UsageError(str(exc))
    out = _solution_json(args.alg, inst, assignment)
    out.update(extra)
    print(json.dumps(out))
    return 0


def cmd_oracle(args) -> int:
    inst = _load_instance(args.instance)
    res = optimal_cover(inst, args.budget or DEFAULT_BUDGET)
    out = _solution_json("oracle", inst, res.assignment)
    out["explored"] = res.explored
    print(json.dumps(out))
    return 0


def cmd_monotone(args) -> int:
    eps = _eps_for(args.alg, args.epsilon)
    try:
        report = monotonicity_suite(args.alg, args.trials, args.seed, args.gen_params, eps, args.budget)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc))
    print(json.dumps(report.to_json()))
    return 0 if report.passed else 1


def cmd_ratio(args) -> int:
    eps = _eps_for(args.alg, args.epsilon)
    try:
        report = ratio_suite(args.alg, args.trials, args.seed, args.gen_params, args.budget or DEFAULT_BUDGET, eps)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc))
    if args.format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(report.csv_rows())
        sys.stdout.write(buf.getvalue())
    else:
        print(json.dumps(report.to_json()))
    return 0 if report.passed else 1


def cmd_gen(args) -> int:
    try:
        if args.family in ("random", "planted"):
            params = dict(args.params)
            if args.family == "planted":
                params["planted"] = "1"
            g = gen_random(params, args.seed)
        else:
            g = gen_adversarial(args.family, args.params)
    except (KeyError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc))
    doc = g.instance.to_document()
    meta = {"family": g.family, "params": {k: str(v) for k, v in g.params.items()}}
    if g.planted_cover is not None:
        meta["planted_cover"] = fmt(g.planted_cover)
        meta["witness"] = g.witness.by_input_order(g.instance)
    if g.predicted_ratio is not None:
        meta["predicted_ratio"] = fmt(g.predicted_ratio)
    if g.probe is not None:
        meta["probe"] = {"machine": g.probe[0], "factor": fmt(g.probe[1])}
    if g.rounding_base is not None:
        meta["rounding_base"] = fmt(g.rounding_base)
    doc["meta"] = meta
    text = json.dumps(doc, indent=2) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="machcover", description="Machine covering on selfish related machines.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one algorithm on an instance document")
    p.add_argument("--alg", required=True, choices=ALGORITHM_NAMES)
    p.add_argument("--instance", required=True)
    p.add_argument("--epsilon", type=_rational)
    p.add_argument("--budget", type=int)
    p.add_argument("--rounding-base", type=_rational, help="ssnc-multi: round job sizes up to powers of this base")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exact optimum and lex-min optimal assignment")
    p.add_argument("--instance", required=True)
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("monotone", help="single-bid-raise monotonicity trials")
    p.add_argument("--alg", required=True, choices=ALGORITHM_NAMES)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gen-params", type=_kv, default={})
    p.add_argument("--epsilon", type=_rational)
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_monotone)

    p = sub.add_parser("ratio", help="approximation ratio against the exact optimum")
    p.add_argument("--alg", required=True, choices=ALGORITHM_NAMES)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gen-params", type=_kv, default={})
    p.add_argument("--epsilon", type=_rational)
    p.add_argument("--budget", type=int)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("gen", help="write an instance document")
    p.add_argument("--family", required=True, choices=FAMILIES + ("random", "planted"))
    p.add_argument("--params", type=_kv, default={})
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output path, or - for stdout")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"machcover: error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"machcover: budget exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
