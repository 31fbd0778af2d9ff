"""Search-tree statistics shared by the solver and the analysis tools."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

STATS_SCHEMA_VERSION = 1


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    max_depth: int = 0
    rule_fires: Counter = field(default_factory=Counter)
    # (parent mu, child mu) for every branch edge whose child reached a fixed point
    branch_drops: list = field(default_factory=list)
    # (mu before, mu after) for every instrumented simplification cascade
    simplify_checks: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    mu_initial: float | None = None

    def min_branch_drop(self):
        if not self.branch_drops:
            return None
        return min(p - c for p, c in self.branch_drops)

    def drop_histogram(self, bin_width=0.25):
        """Histogram of per-edge measure drops, keyed by bin lower edge."""
        hist = Counter()
        for p, c in self.branch_drops:
            hist[round((p - c) // bin_width * bin_width, 6)] += 1
        return dict(sorted(hist.items()))

    def to_json(self):
        return {
            "version": STATS_SCHEMA_VERSION,
            "nodes": self.nodes,
            "leaves": self.leaves,
            "maxDepth": self.max_depth,
            "ruleFires": {str(k): v for k, v in sorted(self.rule_fires.items(), key=lambda kv: str(kv[0]))},
            "muInitial": self.mu_initial,
            "minBranchDrop": self.min_branch_drop(),
        }


@dataclass
class SolveResult:
    sat: bool
    model: dict | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def decision(self):
        return "SAT" if self.sat else "UNSAT"
