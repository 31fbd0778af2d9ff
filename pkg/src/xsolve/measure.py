"""Weighted variable measure.

A variable weighs :data:`W3` when it sits on a 3-literal clause whose
three variables share no common neighbour outside the clause, and 1
otherwise.  The measure is the sum of the weights of the variables still
occurring in the formula.  It is bookkeeping only; the solver never looks
at it.
"""

from __future__ import annotations

from typing import NamedTuple

from .formula import EliminatedVariable, Formula

W3 = 0.8823
D = 1 - W3


class MeasureReport(NamedTuple):
    weights: dict
    mu: float
    d: float = D


def neighbour_sets(f: Formula):
    """Map each live variable to the variables it shares a clause with."""
    nb = {v: set() for v in f.occ}
    for cid in f.clauses:
        vs = f.var_set(cid)
        for v in vs:
            nb[v] |= vs
    for v in nb:
        nb[v].discard(v)
    return nb


def _three_vars(f, cid):
    vs = f.var_set(cid)
    if len(f.clauses[cid]) != 3 or len(vs) != 3:
        raise ValueError(f"clause {cid} is not a 3-literal clause over 3 variables")
    return vs


def common_outside_neighbour(f: Formula, cid, neighbours=None):
    """Smallest variable outside clause ``cid`` adjacent to all three of its variables."""
    vs = _three_vars(f, cid)
    nb = neighbour_sets(f) if neighbours is None else neighbours
    a, b, c = vs
    common = (nb[a] & nb[b] & nb[c]) - vs
    return min(common) if common else None


def _is_light_clause(f, cid, nb):
    if len(f.clauses[cid]) != 3 or len(f.var_set(cid)) != 3:
        return False
    return common_outside_neighbour(f, cid, nb) is None


def variable_weight(f: Formula, x, neighbours=None):
    if x not in f.occ:
        raise EliminatedVariable(f"variable {x} does not occur in the formula")
    nb = neighbour_sets(f) if neighbours is None else neighbours
    for cid in f.clause_ids_of(x):
        if _is_light_clause(f, cid, nb):
            return W3
    return 1.0


def formula_measure(f: Formula):
    if f.has_constants():
        raise ValueError("measure is undefined while constants are present")
    nb = neighbour_sets(f)
    light = set()
    for cid in f.clauses:
        if _is_light_clause(f, cid, nb):
            light |= f.var_set(cid)
    weights = {v: (W3 if v in light else 1.0) for v in sorted(f.occ)}
    return MeasureReport(weights, sum(weights.values()))
