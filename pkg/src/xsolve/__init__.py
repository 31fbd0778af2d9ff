"""Exact-satisfiability (XSAT) solving by branch and reduce, with
measure-and-conquer analysis tools."""

from .analysis import DEFAULT_WEIGHT, catalog_eval, load_catalog, tau, weight_search
from .formula import ONE, ZERO, Formula, check_model, from_clauses, reconstruct_model
from .measure import formula_measure
from .polytime import decide_deg2, solve_deg2
from .search import choose_branch, solve
from .simplify import cascade
from .stats import SearchStats, SolveResult
from .testkit import brute_force, generate

__all__ = [
    "ONE", "ZERO", "Formula", "DEFAULT_WEIGHT", "SearchStats", "SolveResult", "brute_force",
    "cascade", "catalog_eval", "check_model", "choose_branch", "decide_deg2",
    "formula_measure", "from_clauses", "generate", "load_catalog", "reconstruct_model",
    "solve", "solve_deg2", "tau", "weight_search",
]
