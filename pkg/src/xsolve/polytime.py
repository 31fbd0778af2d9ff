"""Polynomial endgame for formulas where every variable has degree at most 2.

With no variable in both polarities, every literal is an independent
switch.  A literal shared by two clauses satisfies both when true, so the
true shared literals form a matching of the clause graph; every clause
left uncovered must take one of its private (pendant) literals.  Hence the
formula is exactly satisfiable iff some matching covers every clause
without a pendant literal.

That is decided as a perfect-matching question on two copies of the clause
graph, with each pendant-bearing clause also joined to its own copy:
clauses left unmatched in one copy pair off with their twin.
"""

from __future__ import annotations

from typing import NamedTuple

from .formula import Formula, is_const, reconstruct_model
from .matching import max_cardinality_matching
from .stats import SearchStats, SolveResult


class ClauseGraph(NamedTuple):
    vertices: list   # clause ids
    edges: list      # (clause id, clause id, shared literal)
    pendants: dict   # clause id -> literals occurring only there


def build_clause_graph(f: Formula) -> ClauseGraph:
    if f.has_constants():
        raise ValueError("clause graph needs a formula without constants")
    edges, pendants = [], {cid: [] for cid in f.clauses}
    for v in sorted(f.occ):
        occs = f.occ[v]
        if len(occs) > 2:
            raise ValueError(f"variable {v} has degree {len(occs)} > 2")
        if len({s for _, s in occs}) > 1:
            raise ValueError(f"variable {v} occurs in both polarities")
        lit = v * occs[0][1]
        if len(occs) == 2:
            a, b = occs[0][0], occs[1][0]
            if a == b:
                raise ValueError(f"literal {lit} occurs twice in clause {a}")
            edges.append((a, b, lit))
        else:
            pendants[occs[0][0]].append(lit)
    return ClauseGraph(sorted(f.clauses), edges, pendants)


def decide_deg2(f: Formula):
    """Assignment of the live variables making ``f`` exact-satisfied, or None."""
    g = build_clause_graph(f)
    index = {cid: i for i, cid in enumerate(g.vertices)}
    m = len(g.vertices)
    edge_lit, matching_edges = {}, []
    for a, b, lit in g.edges:
        i, j = sorted((index[a], index[b]))
        if (i, j) not in edge_lit:
            edge_lit[i, j] = lit
            matching_edges += [(i, j), (m + i, m + j)]
    for cid, lits in g.pendants.items():
        if lits:
            matching_edges.append((index[cid], m + index[cid]))

    mate = max_cardinality_matching(2 * m, matching_edges)
    if any(x == -1 for x in mate):
        return None

    # every literal false by default, then switch on the chosen ones
    model = {v: 0 if occs[0][1] > 0 else 1 for v, occs in f.occ.items()}

    def make_true(lit):
        model[abs(lit)] = 1 if lit > 0 else 0

    for i, cid in enumerate(g.vertices):
        j = mate[i]
        if j == m + i:
            make_true(min(g.pendants[cid], key=abs))
        elif i < j < m:
            make_true(edge_lit[i, j])
    return model


def solve_deg2(f: Formula) -> SolveResult:
    """Decide a degree-2 formula; the model covers the original variables."""
    partial = decide_deg2(f)
    stats = SearchStats(nodes=1, leaves=1)
    if partial is None:
        return SolveResult(False, None, stats)
    return SolveResult(True, reconstruct_model(f.trail, partial, f.variables), stats)


def is_deg2(f: Formula):
    return all(len(o) <= 2 for o in f.occ.values()) and not any(
        is_const(t) for c in f.clauses.values() for t in c)
