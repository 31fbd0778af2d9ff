"""Branch-and-reduce search for exact satisfiability.

Each node is simplified to a fixed point and then handled by the first
branching rule that applies:

* line 10 - a variable in at least three 3-literal clauses;
* line 12 - two clauses sharing at least two variables (the shared
  subclause is branched on);
* line 13 - a heavy variable (degree at least 3);
* line 14 - otherwise every degree is at most 2 and the matching endgame
  decides the rest.

Lines 12 and 13 first look for a variable ``s`` outside the branching
context that sits in exactly two 3-literal clauses touching the context,
and branch on ``s`` (or on a context literal next to it) instead.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from . import simplify
from .analysis import record_branch
from .formula import Formula, apply_assign, overlap_profile, reconstruct_model
from .measure import formula_measure
from .polytime import solve_deg2
from .simplify import Status, cascade, line10_variable, shared_pairs, three_clause_counts
from .stats import SearchStats, SolveResult

MU_EPS = 1e-9


class Case21Pattern(NamedTuple):
    s: int
    branch: int        # literal to branch on
    triangles: tuple   # the two 3-literal clauses holding s
    shape: str         # "overlap", "preamble", "case2.1-s" or "case2.1-b"


@dataclass(frozen=True)
class BranchDecision:
    kind: str                 # line10-var, line10-simplify, line12-sub, line13-var, case21, poly
    literal: int | None = None
    clauses: tuple = ()
    subclause: frozenset | None = None
    pattern: Case21Pattern | None = None
    trigger: str | None = None  # line12 / line13 for case21

    @property
    def fire_key(self):
        if self.kind == "case21":
            return f"{self.trigger[4:]}-case2.1"
        return {"line10-var": "10", "line10-simplify": "10-simplify", "line12-sub": "12",
                "line13-var": "13", "poly": "14"}[self.kind]


def _literal_of(f, cid, v):
    for t in f.clauses[cid]:
        if abs(t) == v:
            return t
    raise KeyError(v)


def detect_case21(f: Formula, context):
    """Find the two-triangle pattern around a branching context.

    ``context`` is ``("overlap", c1, c2)`` for a pair of overlapping clauses
    or ``("heavy", x)`` for a heavy variable.  Returns a
    :class:`Case21Pattern` or None.
    """
    if context[0] == "overlap":
        _, a, b = context
        ctx = [a, b]
        va, vb = f.var_set(a), f.var_set(b)
        inside = va | vb
        neighbours = (va | vb) - (va & vb)
    elif context[0] == "heavy":
        x = context[1]
        ctx = f.clause_ids_of(x)
        inside = frozenset().union(*(f.var_set(c) for c in ctx))
        neighbours = inside - {x}
    else:
        raise ValueError(f"unknown context {context!r}")

    ctx_set = set(ctx)
    by_s = defaultdict(list)
    for cid in sorted(f.clauses):
        if cid in ctx_set or len(f.clauses[cid]) != 3:
            continue
        vs = f.var_set(cid)
        out = vs - inside
        if len(vs) == 3 and len(out) == 1 and len(vs & neighbours) == 2:
            by_s[next(iter(out))].append(cid)
    if not by_s:
        return None
    tri_count = three_clause_counts(f)

    for s in sorted(by_s):
        tris = by_s[s]
        if tri_count[s] != 2 or len(tris) != 2:
            continue
        nbrs = (f.var_set(tris[0]) | f.var_set(tris[1])) - {s}
        if len(nbrs) != 4:
            continue
        s_lit = _literal_of(f, tris[0], s)
        if context[0] == "overlap":
            return Case21Pattern(s, s_lit, tuple(tris), "overlap")

        owner = {}
        for c in ctx:
            for v in f.var_set(c) - {context[1]}:
                owner.setdefault(v, []).append(c)
        if any(len(owner[v]) != 1 for v in nbrs):
            continue
        if any(owner[n1] == owner[n2] for t in tris for n1, n2 in
               combinations(sorted(f.var_set(t) - {s}), 2)):
            continue
        spread = Counter(owner[v][0] for v in nbrs)
        counts = sorted(spread.values(), reverse=True)
        lengths = sorted(len(f.clauses[c]) for c in ctx)
        if counts == [2, 2]:
            if max(len(f.clauses[c]) for c in spread) >= 4:
                return Case21Pattern(s, s_lit, tuple(tris), "preamble")
        elif counts == [2, 1, 1]:
            if 3 in lengths:
                if lengths == [3, 4, 4]:
                    return Case21Pattern(s, s_lit, tuple(tris), "case2.1-s")
                continue  # the remaining shapes with a 3-literal clause branch x itself
            (double,) = [c for c, k in spread.items() if k == 2]
            b1 = min(v for v in nbrs if owner[v][0] == double)
            return Case21Pattern(s, _literal_of(f, double, b1), tuple(tris), "case2.1-b")
    return None


def _heavy_choice(f):
    best = None
    for v, occs in f.occ.items():
        if len(occs) < 3:
            continue
        key = (len(occs), sum(len(f.clauses[c]) for c in {c for c, _ in occs}), -v)
        if best is None or key > best[0]:
            best = (key, v)
    return None if best is None else best[1]


def choose_branch(f: Formula, case21=True) -> BranchDecision:
    """Pick the branching rule for a simplified, non-empty formula."""
    x = line10_variable(f)
    if x is not None:
        threes = [c for c in f.clause_ids_of(x) if len(f.clauses[c]) == 3]
        for a, b in combinations(threes, 2):
            if len(f.var_set(a) & f.var_set(b)) >= 2:
                return BranchDecision("line10-simplify", clauses=(a, b))
        return BranchDecision("line10-var", literal=x)

    pairs = shared_pairs(f)
    if pairs:
        a, b = pairs[0]
        if case21:
            pat = detect_case21(f, ("overlap", a, b))
            if pat is not None:
                return BranchDecision("case21", literal=pat.branch, clauses=(a, b),
                                      pattern=pat, trigger="line12")
        return BranchDecision("line12-sub", clauses=(a, b),
                              subclause=overlap_profile(f, a, b).shared)

    x = _heavy_choice(f)
    if x is not None:
        if case21:
            pat = detect_case21(f, ("heavy", x))
            if pat is not None:
                return BranchDecision("case21", literal=pat.branch, pattern=pat, trigger="line13")
        return BranchDecision("line13-var", literal=x)
    return BranchDecision("poly")


def _variable_children(f, lit):
    return apply_assign(f, lit, 1), apply_assign(f, lit, 0)


def _subclause_children(f, delta, c1, c2):
    delta = frozenset(delta)
    if len(delta) < 2:
        raise ValueError("subclause branching needs at least two literals")
    if not delta <= f.literal_set(c1) or not delta <= f.literal_set(c2):
        raise ValueError("subclause is not shared by both clauses")
    one, zero = f.copy(), f.copy()
    one._assign_literals_false((f.literal_set(c1) | f.literal_set(c2)) - delta)
    zero._assign_literals_false(delta)
    return one, zero


def branch_children(f: Formula, dec: BranchDecision):
    """The two unsimplified children of a branching decision, 1-side first."""
    if dec.kind == "line12-sub":
        return _subclause_children(f, dec.subclause, *dec.clauses)
    if dec.literal is None:
        raise ValueError(f"{dec.kind} is not a branching decision")
    return _variable_children(f, dec.literal)


def branch_variable(f: Formula, lit, fires=None):
    """Children ``lit = 1`` and ``lit = 0``, each simplified: ``[(Outcome, Formula)]``."""
    return [cascade(c, fires=fires) for c in _variable_children(f, lit)]


def branch_subclause(f: Formula, delta, c1, c2, fires=None):
    """Children ``delta = 1`` and ``delta = 0`` for a subclause shared by ``c1``, ``c2``."""
    return [cascade(c, fires=fires) for c in _subclause_children(f, delta, c1, c2)]


class _Search:
    def __init__(self, case21, instrument, stats):
        self.case21 = case21
        self.instrument = instrument
        self.stats = stats

    def mu(self, f):
        return formula_measure(f).mu

    def simplify(self, f, lead=None):
        """Cascade ``f``; returns ``(outcome, formula, mu)``.

        When instrumenting, every constant-free state that a rule fires
        from is compared with the fixed point the cascade ends in.
        ``lead`` is an optional ``(mu, label)`` for a step taken just before.
        """
        st = self.stats
        if not self.instrument:
            out, g = cascade(f, fires=st.rule_fires)
            return out, g, None
        checks = [] if lead is None else [lead]
        state_mu = None if f.has_constants() else self.mu(f)

        def watch(rule, g):
            nonlocal state_mu
            if state_mu is not None:
                checks.append((state_mu, rule.value))
            state_mu = None if g.has_constants() else self.mu(g)

        out, g = cascade(f, fires=st.rule_fires, observer=watch)
        if out.status is Status.UNSAT:
            return out, g, None
        mu_g = self.mu(g)
        for before, label in checks:
            st.simplify_checks.append((before, mu_g))
            if mu_g > before + MU_EPS:
                st.violations.append(
                    f"simplify: rule {label} then cascade raised mu {before:.4f} -> {mu_g:.4f}")
        return out, g, mu_g

    def run(self, f):
        st = self.stats
        st.mu_initial = self.mu(f) if self.instrument else None
        out, g, mu_g = self.simplify(f)
        st.nodes += 1
        if out.status is Status.UNSAT:
            st.leaves += 1
            return None
        return self.expand(g, 0, mu_g)

    def expand(self, g, depth, mu_g):
        st = self.stats
        st.max_depth = max(st.max_depth, depth)
        while True:
            if g.is_empty():
                st.leaves += 1
                return reconstruct_model(g.trail, {}, g.variables)
            dec = choose_branch(g, self.case21)
            st.rule_fires[dec.fire_key] += 1
            if dec.kind == "poly":
                st.leaves += 1
                return solve_deg2(g).model
            if dec.kind != "line10-simplify":
                break
            lead = None if mu_g is None else (mu_g, "10-simplify")
            out, g, mu_g = self.simplify(simplify.rewrite_1j(g, *dec.clauses), lead)
            if out.status is Status.UNSAT:
                st.leaves += 1
                return None

        live = len(g.occ)
        children = branch_children(g, dec)

        for child in children:
            out, c, mu_c = self.simplify(child)
            st.nodes += 1
            if out.status is Status.UNSAT:
                st.leaves += 1
                continue
            if self.instrument:
                record_branch(st, mu_g, [mu_c])
                if len(c.occ) >= live:
                    st.violations.append("branch: live variable count did not drop")
            model = self.expand(c, depth + 1, mu_c)
            if model is not None:
                return model
        return None


def solve(f: Formula, case21=True, instrument=False) -> SolveResult:
    """Decide exact satisfiability of ``f``.

    With ``instrument=True`` the measure is computed at every node and the
    per-edge drops and any monotonicity violations land in the stats.
    """
    stats = SearchStats()
    model = _Search(case21, instrument, stats).run(f)
    return SolveResult(model is not None, model, stats)
