"""Formula representation for exact satisfiability.

Variables are positive integers and literals are signed integers, as in
DIMACS: ``3`` is x3 and ``-3`` is its negation.  A clause is an ordered
tuple of tokens, each either a literal or one of the constants
:data:`ZERO` / :data:`ONE`.  Constants only exist between an assignment and
the next simplification fixed point.

Formulas are treated as values: the public functions return new formulas
and never modify their input.  The ``_``-prefixed methods mutate in place
and are reserved for code that owns a private copy (the simplifier).
"""

from __future__ import annotations

from typing import Iterable, NamedTuple


class Const:
    """Constant clause token."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __repr__(self):
        return str(self.value)

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __reduce__(self):
        return "ONE" if self.value else "ZERO"


ZERO = Const(0)
ONE = Const(1)


def negate(token):
    if token is ZERO:
        return ONE
    if token is ONE:
        return ZERO
    return -token


def is_const(token):
    return token is ZERO or token is ONE


class Assign(NamedTuple):
    var: int
    value: int


class Link(NamedTuple):
    """``var`` takes the value of ``literal``."""
    var: int
    literal: int


class Resolve(NamedTuple):
    """``var`` is 1 iff every literal of ``partner`` is 0."""
    var: int
    partner: tuple


class OverlapProfile(NamedTuple):
    k: int
    i: int
    j: int
    shared: frozenset  # literals of the first clause over the shared variables


class EliminatedVariable(ValueError):
    """Operation referenced a variable that is no longer in the formula."""


class Formula:
    __slots__ = ("clauses", "occ", "trail", "original", "variables", "_next_id")

    def __init__(self, clauses, original, variables, trail=(), next_id=None, occ=None):
        self.clauses = clauses        # clause id -> tuple of tokens
        self.original = original      # input clauses, tuple of tuples
        self.variables = variables    # frozenset of original variables
        self.trail = tuple(trail)
        self._next_id = max(clauses, default=-1) + 1 if next_id is None else next_id
        self.occ = self._build_occ() if occ is None else occ

    def _build_occ(self):
        occ = {}
        for cid in sorted(self.clauses):
            for t in self.clauses[cid]:
                if not is_const(t):
                    occ.setdefault(abs(t), []).append((cid, 1 if t > 0 else -1))
        return {v: tuple(lst) for v, lst in occ.items()}

    def copy(self):
        return Formula(dict(self.clauses), self.original, self.variables,
                       self.trail, self._next_id, dict(self.occ))

    def __repr__(self):
        body = ", ".join("(" + " ".join(map(repr, c)) + ")" for _, c in sorted(self.clauses.items()))
        return f"Formula[{body}]"

    # -- queries ------------------------------------------------------------

    def live_variables(self):
        """Variables that still occur in some clause."""
        return set(self.occ)

    def eliminated(self):
        return {e.var for e in self.trail}

    def inert_variables(self):
        """Original variables neither eliminated nor occurring in a clause."""
        return set(self.variables) - self.eliminated() - set(self.occ)

    def degree(self, x):
        return len(self.occ.get(x, ()))

    def literal_set(self, cid):
        return frozenset(t for t in self.clauses[cid] if not is_const(t))

    def var_set(self, cid):
        return frozenset(abs(t) for t in self.clauses[cid] if not is_const(t))

    def has_constants(self):
        return any(is_const(t) for c in self.clauses.values() for t in c)

    def clause_ids_of(self, x):
        return sorted({cid for cid, _ in self.occ.get(x, ())})

    def is_empty(self):
        return not self.clauses

    def canonical(self):
        """Sorted clause multiset, for comparisons in tests."""
        return sorted(tuple(sorted(c, key=_token_key)) for c in self.clauses.values())

    # -- in-place mutation (private) ---------------------------------------

    def _index_remove(self, cid, tokens):
        for v in {abs(t) for t in tokens if not is_const(t)}:
            rest = tuple(e for e in self.occ[v] if e[0] != cid)
            if rest:
                self.occ[v] = rest
            else:
                del self.occ[v]

    def _index_add(self, cid, tokens):
        for t in tokens:
            if not is_const(t):
                v = abs(t)
                self.occ[v] = tuple(sorted(self.occ.get(v, ()) + ((cid, 1 if t > 0 else -1),), key=_first))

    def _set_clause(self, cid, tokens):
        tokens = tuple(tokens)
        old = self.clauses.get(cid)
        if old is not None:
            self._index_remove(cid, old)
        self.clauses[cid] = tokens
        self._index_add(cid, tokens)

    def _add_clause(self, tokens):
        cid = self._next_id
        self._next_id += 1
        self._set_clause(cid, tokens)
        return cid

    def _drop_clause(self, cid):
        self._index_remove(cid, self.clauses.pop(cid))

    def _check_present(self, x):
        if x in self.occ:
            return
        if x in self.variables and x not in self.eliminated():
            return
        raise EliminatedVariable(f"variable {x} is not present in the formula")

    def _substitute(self, mapping):
        """Replace each variable ``v`` in ``mapping`` by the token ``mapping[v]``."""
        touched = set()
        for v in mapping:
            touched.update(cid for cid, _ in self.occ.get(v, ()))
        for cid in sorted(touched):
            new = []
            for t in self.clauses[cid]:
                if not is_const(t) and abs(t) in mapping:
                    r = mapping[abs(t)]
                    new.append(r if t > 0 else negate(r))
                else:
                    new.append(t)
            self._set_clause(cid, new)

    def _assign_many(self, values):
        """Assign ``{var: bit}`` and log one trail entry per variable."""
        for v in values:
            self._check_present(v)
        self._substitute({v: ONE if b else ZERO for v, b in values.items()})
        self.trail += tuple(Assign(v, int(values[v])) for v in sorted(values))

    def _assign_literals_false(self, lits):
        self._assign_many({abs(l): 0 if l > 0 else 1 for l in lits})

    def _link(self, x, lit):
        if x == abs(lit):
            raise ValueError(f"cannot link variable {x} to its own literal {lit}")
        self._check_present(x)
        self._check_present(abs(lit))
        self._substitute({x: lit})
        self.trail += (Link(x, lit),)

    def _equate(self, a, b):
        """Record that literals ``a`` and ``b`` are equal; the larger variable goes."""
        if abs(a) == abs(b):
            if a == b:
                return
            raise ValueError(f"contradictory equation {a} = {b}")
        if abs(a) > abs(b):
            self._link(abs(a), b if a > 0 else -b)
        else:
            self._link(abs(b), a if b > 0 else -a)


def _first(entry):
    return entry[0]


def _token_key(t):
    if t is ZERO:
        return (0, 0)
    if t is ONE:
        return (0, 1)
    return (1, abs(t), t)


# -- public operations -------------------------------------------------------

def from_clauses(clauses: Iterable[Iterable[int]], num_vars=None):
    """Build a formula from literal lists.

    ``num_vars`` declares variables 1..num_vars even if some never occur.
    Duplicate and degenerate clauses (including the empty clause) are kept;
    the simplifier deals with them.
    """
    cls = []
    for c in clauses:
        c = tuple(c)
        for lit in c:
            if isinstance(lit, bool) or not isinstance(lit, int) or lit == 0:
                raise ValueError(f"invalid literal {lit!r}")
        cls.append(c)
    variables = {abs(l) for c in cls for l in c}
    if num_vars is not None:
        if variables and max(variables) > num_vars:
            raise ValueError(f"literal out of range for {num_vars} variables")
        variables |= set(range(1, num_vars + 1))
    return Formula(dict(enumerate(cls)), tuple(cls), frozenset(variables))


def degree(f: Formula, x):
    return f.degree(x)


def is_heavy(f: Formula, x):
    return f.degree(x) >= 3


def overlap_profile(f: Formula, c1, c2):
    if c1 == c2:
        raise ValueError("overlap profile needs two distinct clauses")
    v1, v2 = f.var_set(c1), f.var_set(c2)
    shared = v1 & v2
    return OverlapProfile(
        k=len(shared),
        i=len(v1 - v2),
        j=len(v2 - v1),
        shared=frozenset(l for l in f.literal_set(c1) if abs(l) in shared),
    )


def apply_assign(f: Formula, lit, bit):
    """Set literal ``lit`` to ``bit``; constants are left for the simplifier."""
    g = f.copy()
    value = bit if lit > 0 else 1 - bit
    g._assign_many({abs(lit): value})
    return g


def apply_link(f: Formula, x, lit):
    """Eliminate variable ``x`` by substituting the literal ``lit`` for it."""
    g = f.copy()
    g._link(x, lit)
    return g


def lit_value(model, lit):
    v = model[abs(lit)]
    return v if lit > 0 else 1 - v


def check_model(f: Formula, model):
    """True iff ``model`` makes exactly one literal true in every original clause."""
    missing = f.variables - set(model)
    if missing:
        raise ValueError(f"model does not assign variables {sorted(missing)[:5]}")
    return all(sum(lit_value(model, l) for l in c) == 1 for c in f.original)


def reconstruct_model(trail, partial, variables=None):
    """Extend a model of a reduced formula back through ``trail``.

    ``partial`` assigns the variables still present at the leaf.  When
    ``variables`` (the original variable set) is given, variables that are
    neither eliminated nor assigned default to 0 and the result is total.
    """
    model = {}
    if variables is not None:
        eliminated = {e.var for e in trail}
        model.update({v: 0 for v in variables if v not in eliminated})
    model.update(partial)
    for entry in reversed(trail):
        try:
            if isinstance(entry, Assign):
                model[entry.var] = entry.value
            elif isinstance(entry, Link):
                model[entry.var] = lit_value(model, entry.literal)
            else:
                model[entry.var] = int(all(lit_value(model, l) == 0 for l in entry.partner))
        except KeyError as exc:
            raise ValueError(f"trail entry {entry} refers to unassigned variable {exc.args[0]}") from None
    return model
