import pytest

import xsolve.search as search
from xsolve.formula import check_model, from_clauses
from xsolve.search import (
    branch_subclause, branch_variable, choose_branch, detect_case21, solve,
)
from xsolve.simplify import Status, cascade, line10_variable, shared_pairs
from xsolve.testkit import brute_force, generate, random_suite

x, v1, v2, v3, v4, v5, v6 = range(1, 8)
THREE_3 = [(x, v1, v2), (x, v3, v4), (x, v5, v6)]


def fixed(clauses):
    out, g = cascade(from_clauses(clauses))
    assert out.status is Status.FIXED_POINT
    return g


# -- choose_branch -------------------------------------------------------------

def test_variable_in_three_three_clauses():
    d = choose_branch(fixed(THREE_3))
    assert d.kind == "line10-var" and d.literal == x


def test_two_of_them_overlap_in_two_variables():
    # (x y z), (x y w) and a third 3-clause on x
    g = fixed([(1, 2, 3), (1, 2, 4), (1, 5, 6)])
    d = choose_branch(g)
    assert d.kind == "line10-simplify" and d.clauses == (0, 1)


def test_all_degrees_at_most_two():
    assert choose_branch(fixed([(1, 2, 3), (3, 4, 5), (5, 6, 7)])).kind == "poly"


def test_overlapping_pair_branches_on_subclause():
    g = fixed([(1, 2, 3, 4, 5), (4, 5, 6, 7, 8)])
    d = choose_branch(g)
    assert d.kind == "line12-sub" and d.subclause == {4, 5}


def test_heavy_variable_branch():
    g = fixed([(1, 2, 3, 4), (1, 5, 6, 7), (1, 8, 9, 10)])
    d = choose_branch(g)
    assert d.kind == "line13-var" and d.literal == 1


def test_heavy_choice_prefers_degree_then_length():
    g = fixed([(1, 2, 3, 4), (1, 5, 6, 7), (1, 8, 9, 10),
               (11, 12, 13, 14), (11, 15, 16, 17), (11, 18, 19, 20, 21)])
    assert choose_branch(g).literal == 11


# -- two-triangle patterns -----------------------------------------------------

l1, l2, d1, d2, r1, r2, s = range(1, 8)


def test_overlap_pattern_branches_s():
    g = fixed([(l1, l2, d1, d2), (d1, d2, r1, r2), (s, l1, r1), (s, l2, r2)])
    pat = detect_case21(g, ("overlap", 0, 1))
    assert pat.s == s and pat.branch == s
    d = choose_branch(g)
    assert d.kind == "case21" and d.literal == s and d.trigger == "line12"
    assert choose_branch(g, case21=False).kind == "line12-sub"


X, a1, a2, a3, b1, b2, b3, c1, c2, c3, S = range(1, 12)
HEAVY = [(X, a1, a2, a3), (X, b1, b2, b3), (X, c1, c2, c3)]


def test_heavy_pattern_branches_paired_literal():
    g = fixed(HEAVY + [(S, a1, b1), (S, b2, c1)])
    pat = detect_case21(g, ("heavy", X))
    assert pat.s == S and pat.branch == b1
    d = choose_branch(g)
    assert d.kind == "case21" and d.literal == b1 and d.trigger == "line13"


def test_heavy_pattern_over_two_clauses_branches_s():
    g = fixed(HEAVY + [(S, a1, b1), (S, a2, b2)])
    assert detect_case21(g, ("heavy", X)).branch == S


def test_heavy_pattern_with_a_three_clause():
    g = fixed([(X, a1, a2), (X, b1, b2, b3), (X, c1, c2, c3), (S, a1, b1), (S, a2, c1)])
    assert detect_case21(g, ("heavy", X)).branch == S


def test_no_pattern():
    assert detect_case21(fixed(HEAVY), ("heavy", X)) is None
    assert detect_case21(fixed([(1, 2, 3, 4), (3, 4, 5, 6)]), ("overlap", 0, 1)) is None


def test_pattern_needs_s_in_exactly_two_three_clauses():
    g = fixed(HEAVY + [(S, a1, b1), (S, b2, c1), (S, 20, 21)])
    assert detect_case21(g, ("heavy", X)) is None


# -- children ------------------------------------------------------------------

def test_branch_variable_on_three_three_three():
    g = fixed(THREE_3)
    (o1, one), (o0, zero) = branch_variable(g, x)
    assert o1.status is o0.status is Status.FIXED_POINT
    assert one.is_empty() and one.eliminated() == {x, v1, v2, v3, v4, v5, v6}
    assert zero.is_empty() and zero.eliminated() == {x, v2, v4, v6}


def test_branch_variable_in_unsatisfiable_core():
    f = from_clauses([(1, 2, 3), (-1, 2, 3)])
    assert all(o.status is Status.UNSAT for o, _ in branch_variable(f, 1))


def test_branch_subclause_on_two_overlapping_clauses():
    a, b, c, d, e, f_, g_, h = range(1, 9)
    g = fixed([(a, b, c, d, e), (d, e, f_, g_, h)])
    (o1, one), (o0, zero) = branch_subclause(g, {d, e}, 0, 1)
    assert len(one.eliminated()) == 7 and one.is_empty()
    assert zero.eliminated() == {d, e}
    assert sorted(len(c) for c in zero.clauses.values()) == [3, 3]


def test_subclause_one_side_on_a_single_clause():
    from xsolve.formula import ZERO
    g = from_clauses([(1, 2, 3, 4)])
    one, _ = search._subclause_children(g, {1, 2, 3}, 0, 0)
    assert one.clauses[0] == (1, 2, 3, ZERO)


def test_subclause_needs_two_literals():
    with pytest.raises(ValueError):
        branch_subclause(fixed([(1, 2, 3, 4), (3, 4, 5, 6)]), {3}, 0, 1)


# -- solve -----------------------------------------------------------------------

def test_solve_small_cases():
    r = solve(from_clauses([]))
    assert r.sat and r.model == {}
    r = solve(from_clauses([(1, 2, 3)]))
    assert r.decision == "SAT" and sum(r.model.values()) == 1
    assert solve(from_clauses([(1, 2, 3), (-1, 2, 3)])).decision == "UNSAT"


def test_solve_crafted_patterns():
    cases = [
        [(l1, l2, d1, d2), (d1, d2, r1, r2), (s, l1, r1), (s, l2, r2)],
        HEAVY + [(S, a1, b1), (S, b2, c1)],
        HEAVY + [(S, a1, b1), (S, a2, b2)],
        HEAVY + [(S, a1, b1), (S, b2, c1), (-a2, b3, 12), (c2, -c3, 12)],
    ]
    for clauses in cases:
        f = from_clauses(clauses)
        want = brute_force(f).sat
        for case21 in (True, False):
            r = solve(f, case21=case21, instrument=True)
            assert r.sat == want
            if r.sat:
                assert check_model(f, r.model)


def test_stats_are_consistent():
    f = generate(next(random_suite(1, 3, (18, 18), (20, 20))))
    st = solve(f, instrument=True).stats
    assert st.leaves <= st.nodes and st.mu_initial == pytest.approx(18, abs=3)
    assert st.to_json()["version"] == 1


@pytest.mark.parametrize("seed", range(4))
def test_agrees_with_oracle(seed):
    for cfg in random_suite(250, seed, (5, 16), (3, 30), (3, 6)):
        f = generate(cfg)
        r = solve(f)
        assert r.sat == brute_force(f).sat, cfg
        if r.sat:
            assert check_model(f, r.model)


def test_models_of_satisfiable_instances():
    checked = 0
    for cfg in random_suite(3000, 21, (8, 20), (3, 9), (3, 4)):
        f = generate(cfg)
        r = solve(f)
        if r.sat:
            checked += 1
            assert check_model(f, r.model), cfg
        if checked == 1000:
            break
    assert checked == 1000


def test_priority_and_progress(monkeypatch):
    seen = []
    real = search.choose_branch

    def spy(g, case21=True):
        d = real(g, case21)
        seen.append((d, line10_variable(g) is not None, bool(shared_pairs(g))))
        return d

    monkeypatch.setattr(search, "choose_branch", spy)
    for cfg in random_suite(300, 4, (10, 20), (4, 14), (3, 5)):
        st = solve(generate(cfg), instrument=True).stats
        assert not [v for v in st.violations if v.startswith("branch: live")]
    assert seen
    for d, l10, l12 in seen:
        if d.kind == "line13-var" or d.trigger == "line13":
            assert not l10 and not l12
        if d.kind == "line12-sub" or d.trigger == "line12":
            assert not l10
