"""Prioritised simplification rules.

Rules are numbered by their line in the branch-and-reduce algorithm and a
lower number always wins.  Lines 1-6 look at one clause at a time, lines
7-9 and 12a at pairs of clauses sharing at least two variables, line 11
at a variable occurring in both polarities.

Line 10 is a branching rule but outranks resolution (line 11) and the
overlap rewrite (line 12a).  :func:`cascade` therefore stops before those
two rules whenever a variable occurs in three or more 3-literal clauses,
unless ``gate_line10=False``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .formula import ONE, ZERO, Formula, Resolve, is_const, overlap_profile


class Rule(str, Enum):
    L1 = "1"
    L2 = "2"
    L3 = "3"
    L4 = "4"
    L5 = "5"
    L6 = "6"
    L7 = "7"
    L8 = "8"
    L9 = "9"
    L11 = "11"
    L12A = "12a"


_CLAUSE_RULES = [Rule.L1, Rule.L2, Rule.L3, Rule.L4, Rule.L5, Rule.L6]


class Status(Enum):
    PROGRESS = "progress"
    FIXED_POINT = "fixed-point"
    UNSAT = "unsat"


@dataclass(frozen=True)
class Outcome:
    status: Status
    rule: Rule | None = None


def _polarity_counts(tokens):
    pos, neg = Counter(), Counter()
    for t in tokens:
        if not is_const(t):
            (pos if t > 0 else neg)[abs(t)] += 1
    return pos, neg


def exact_satisfiable(tokens):
    """Whether the clause on its own admits exactly one true token.

    Setting variable v contributes either its positive or its negative
    occurrence count, so the clause is satisfiable iff the forced minimum
    is at most one and, when it is zero, some variable can contribute
    exactly one.
    """
    pos, neg = _polarity_counts(tokens)
    ones = sum(1 for t in tokens if t is ONE)
    base = ones + sum(min(pos[v], neg[v]) for v in pos.keys() | neg.keys())
    if base >= 2:
        return False
    if base == 1:
        return True
    return any(max(pos[v], neg[v]) == 1 for v in pos.keys() | neg.keys())


def _complementary_var(pos, neg):
    both = sorted(v for v in pos if neg[v])
    return both[0] if both else None


@lru_cache(maxsize=1 << 16)
def clause_rule(tokens):
    """Lowest of lines 1-6 that applies to a single clause: ``(line, payload)``.

    ``line`` is 0 when none applies; the payload is the duplicated literal
    for line 6 and None otherwise.
    """
    if not exact_satisfiable(tokens):
        return 1, None
    pos, neg = _polarity_counts(tokens)
    if ONE in tokens or _complementary_var(pos, neg) is not None:
        return 2, None
    if ZERO in tokens:
        return 3, None
    if len(tokens) == 1:
        return 4, None
    if len(tokens) == 2:
        return 5, None
    dup = sorted(v for v in pos.keys() | neg.keys() if pos[v] >= 2 or neg[v] >= 2)
    if dup:
        v = dup[0]
        return 6, (v if pos[v] >= 2 else -v)
    return 0, None


def shared_pairs(f: Formula):
    """Clause-id pairs ``(a, b)``, ``a < b``, sharing at least two variables."""
    cnt = Counter()
    for occs in f.occ.values():
        cids = sorted({c for c, _ in occs})
        for x in range(len(cids)):
            for y in range(x + 1, len(cids)):
                cnt[cids[x], cids[y]] += 1
    return sorted(p for p, c in cnt.items() if c >= 2)


def three_clause_counts(f: Formula):
    cnt = Counter()
    for cid, tokens in f.clauses.items():
        if len(tokens) == 3:
            for v in f.var_set(cid):
                cnt[v] += 1
    return cnt


def line10_variable(f: Formula):
    """Smallest variable occurring in at least three 3-literal clauses."""
    hits = [v for v, c in three_clause_counts(f).items() if c >= 3]
    return min(hits) if hits else None


def _lits_by_var(lits):
    return {abs(l): l for l in lits}


def find_applicable(f: Formula, gate_line10=True):
    """Highest-priority applicable rule as ``(rule, target)``, or None."""
    best = None
    for cid in sorted(f.clauses):
        line, payload = clause_rule(f.clauses[cid])
        if line and (best is None or line < best[0]):
            best = (line, cid, payload)
            if line == 1:
                break
    if best is not None:
        line, cid, payload = best
        return _CLAUSE_RULES[line - 1], (cid, payload) if line == 6 else cid

    pairs = shared_pairs(f)
    by_var = {cid: _lits_by_var(f.literal_set(cid)) for pair in pairs for cid in pair}

    def split(a, b):
        la, lb = by_var[a], by_var[b]
        shared = sorted(la.keys() & lb.keys())
        same = [v for v in shared if la[v] == lb[v]]
        opp = [v for v in shared if la[v] != lb[v]]
        return la, same, opp

    for a, b in pairs:
        la, same, opp = split(a, b)
        if same and opp:
            return Rule.L7, (a, b, la[same[0]])
    for a, b in pairs:
        la, same, opp = split(a, b)
        if len(opp) >= 2:
            return Rule.L8, (a, b, la[opp[0]], la[opp[1]])
    for a, b in pairs:
        sa, sb = f.literal_set(a), f.literal_set(b)
        if sa <= sb:
            return Rule.L9, (a, b)
        if sb < sa:
            return Rule.L9, (b, a)

    if gate_line10 and line10_variable(f) is not None:
        return None

    for cid in sorted(f.clauses):
        for lit in sorted(f.literal_set(cid), key=abs):
            if any(s != (1 if lit > 0 else -1) for _, s in f.occ[abs(lit)]):
                x = abs(lit)
                c1 = min(c for c, s in f.occ[x] if s > 0)
                c2 = min(c for c, s in f.occ[x] if s < 0)
                return Rule.L11, (x, c1, c2)

    for a, b in pairs:
        p = overlap_profile(f, a, b)
        if p.i == 1 or p.j == 1:
            return Rule.L12A, (a, b)
    return None


# -- rule bodies (in place) ------------------------------------------------------

def _apply(g: Formula, rule, target):
    if rule is Rule.L1:
        if exact_satisfiable(g.clauses[target]):
            raise ValueError(f"line 1 does not apply to clause {target}")
        return Status.UNSAT

    if rule is Rule.L2:
        tokens = list(g.clauses[target])
        if ONE in tokens:
            tokens.remove(ONE)
        else:
            v = _complementary_var(*_polarity_counts(tokens))
            if v is None:
                raise ValueError(f"line 2 does not apply to clause {target}")
            tokens.remove(v)
            tokens.remove(-v)
        if ONE in tokens:
            raise ValueError(f"clause {target} is not exact-satisfiable")
        g._drop_clause(target)
        lits = {t for t in tokens if not is_const(t)}
        if lits:
            g._assign_literals_false(lits)
        return Status.PROGRESS

    if rule is Rule.L3:
        tokens = g.clauses[target]
        if ZERO not in tokens:
            raise ValueError(f"line 3 does not apply to clause {target}")
        # all zeros of the clause go at once; repeated single drops are equivalent
        g._set_clause(target, [t for t in tokens if t is not ZERO])
        return Status.PROGRESS

    if rule is Rule.L4:
        tokens = g.clauses[target]
        if len(tokens) != 1 or is_const(tokens[0]):
            raise ValueError(f"line 4 does not apply to clause {target}")
        g._drop_clause(target)
        lit = tokens[0]
        g._assign_many({abs(lit): 1 if lit > 0 else 0})
        return Status.PROGRESS

    if rule is Rule.L5:
        tokens = g.clauses[target]
        if len(tokens) != 2 or any(is_const(t) for t in tokens):
            raise ValueError(f"line 5 does not apply to clause {target}")
        g._drop_clause(target)
        a, b = tokens
        g._equate(a, -b)
        return Status.PROGRESS

    if rule is Rule.L6:
        cid, lit = target
        if g.clauses[cid].count(lit) < 2:
            raise ValueError(f"line 6 does not apply to clause {cid}")
        g._assign_literals_false([lit])
        return Status.PROGRESS

    if rule is Rule.L7:
        a, b, x = target
        la, lb = g.literal_set(a), g.literal_set(b)
        if x not in la or x not in lb or not any(-l in lb for l in la if l != x):
            raise ValueError(f"line 7 does not apply to clauses {a}, {b}")
        g._assign_literals_false([x])
        return Status.PROGRESS

    if rule is Rule.L8:
        a, b, x, y = target
        la, lb = g.literal_set(a), g.literal_set(b)
        if not {x, y} <= la or not {-x, -y} <= lb:
            raise ValueError(f"line 8 does not apply to clauses {a}, {b}")
        g._equate(x, -y)
        return Status.PROGRESS

    if rule is Rule.L9:
        small, big = target
        ls, lb = g.literal_set(small), g.literal_set(big)
        if not ls <= lb:
            raise ValueError(f"clause {small} is not contained in clause {big}")
        g._drop_clause(big)
        if lb - ls:
            g._assign_literals_false(lb - ls)
        return Status.PROGRESS

    if rule is Rule.L11:
        _resolve(g, *target)
        return Status.PROGRESS

    if rule is Rule.L12A:
        _rewrite_1j(g, *target)
        return Status.PROGRESS

    raise ValueError(f"unknown rule {rule!r}")


def _resolve(g: Formula, x, c1, c2):
    t1, t2 = list(g.clauses[c1]), list(g.clauses[c2])
    if x not in t1 or -x not in t2:
        raise ValueError(f"clauses {c1}, {c2} do not contain {x} and {-x}")
    t1.remove(x)
    t2.remove(-x)
    ours, partner = tuple(t1), tuple(t2)
    for cid in g.clause_ids_of(x):
        new = []
        for t in g.clauses[cid]:
            if t == x:
                new.extend(partner)
            elif t == -x:
                new.extend(ours)
            else:
                new.append(t)
        g._set_clause(cid, new)
    g.trail += (Resolve(x, tuple(t for t in ours if not is_const(t))),)
    common = {t for t in ours if not is_const(t)} & {t for t in partner if not is_const(t)}
    if common:
        g._assign_literals_false(common)


def _rewrite_1j(g: Formula, c1, c2, profile=None):
    p = profile or overlap_profile(g, c1, c2)
    if p.k < 2:
        raise ValueError(f"clauses {c1}, {c2} share fewer than two variables")
    if p.i != 1:
        if p.j != 1:
            raise ValueError(f"clauses {c1}, {c2} are not in a 1-j orientation")
        c1, c2 = c2, c1
        p = overlap_profile(g, c1, c2)
    l1, l2 = g.literal_set(c1), g.literal_set(c2)
    shared_vars = {abs(l) for l in p.shared}
    if {l for l in l2 if abs(l) in shared_vars} != set(p.shared):
        raise ValueError("shared variables appear with different signs")
    (x,) = [l for l in l1 if abs(l) not in shared_vars]
    outside = [t for t in g.clauses[c2] if is_const(t) or abs(t) not in shared_vars]
    if p.j == 1:
        g._drop_clause(max(c1, c2))
        g._equate(x, outside[0])
    else:
        g._set_clause(c2, [-x] + outside)


# -- public, value-returning wrappers -----------------------------------------------

def apply_rule(f: Formula, rule, target):
    g = f.copy()
    status = _apply(g, Rule(rule), target)
    return Outcome(status, Rule(rule)), g


def resolve(f: Formula, x, c1, c2):
    """Eliminate ``x`` given clauses ``c1 = (C or x)`` and ``c2 = (C' or -x)``."""
    g = f.copy()
    _resolve(g, x, c1, c2)
    return g


def rewrite_1j(f: Formula, c1, c2, profile=None):
    """Rewrite a pair of clauses overlapping in a 1-j orientation.

    With ``c1 = (x or delta)`` and ``c2 = (delta or R)``: if R is a single
    literal y then x and y are linked and one clause dropped, otherwise
    ``c2`` becomes ``(-x or R)``.
    """
    g = f.copy()
    _rewrite_1j(g, c1, c2, profile)
    return g


def cascade(f: Formula, gate_line10=True, fires=None, observer=None):
    """Apply rules until none applies or a clause is refuted.

    ``fires`` (a Counter) is incremented per rule application.  ``observer``
    is called as ``observer(rule, formula)`` after every application; the
    formula is the live working copy and must not be modified.
    """
    g = f.copy()
    while True:
        app = find_applicable(g, gate_line10)
        if app is None:
            return Outcome(Status.FIXED_POINT), g
        rule, target = app
        if fires is not None:
            fires[rule.value] += 1
        status = _apply(g, rule, target)
        if observer is not None:
            observer(rule, g)
        if status is Status.UNSAT:
            return Outcome(Status.UNSAT, rule), g
