"""Exact-arithmetic machine covering (max-min load) on related machines,
with monotone algorithms for selfish machine agents."""

from .baselines import list_schedule, lpt_identical, round_robin
from .core import (
    Assignment,
    CoverReport,
    Instance,
    InstanceError,
    evaluate,
    normalize_total,
    parse_instance,
    sort_canonical,
)
from .fptas import compute_ell, dp_cover_test, fptas, mechanism, round_bids
from .nc import next_cover, snc
from .oracle import BudgetExceeded, OracleResult, lex_min_optimal, optimal_cover
from .ptas import ptas, reduce_jobs
from .two_machine import snc2, ssnc2, ssnc_multi

__all__ = [
    "Assignment",
    "BudgetExceeded",
    "CoverReport",
    "Instance",
    "InstanceError",
    "OracleResult",
    "compute_ell",
    "dp_cover_test",
    "evaluate",
    "fptas",
    "lex_min_optimal",
    "list_schedule",
    "lpt_identical",
    "mechanism",
    "next_cover",
    "normalize_total",
    "optimal_cover",
    "parse_instance",
    "ptas",
    "reduce_jobs",
    "round_bids",
    "round_robin",
    "snc",
    "snc2",
    "sort_canonical",
    "ssnc2",
    "ssnc_multi",
]
