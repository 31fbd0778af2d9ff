import random
import time

import networkx as nx
import pytest

from xsolve.formula import check_model, from_clauses
from xsolve.matching import matching_size, max_cardinality_matching
from xsolve.polytime import build_clause_graph, decide_deg2, is_deg2, solve_deg2
from xsolve.testkit import brute_force, deg2_suite, generate

a, b, c, d, e, f_, g = range(1, 8)
PATH = [(a, b, c), (c, d, e), (e, f_, g)]


def test_clause_graph_of_a_path():
    cg = build_clause_graph(from_clauses(PATH))
    assert cg.vertices == [0, 1, 2]
    assert sorted(lit for _, _, lit in cg.edges) == [c, e]
    assert all(cg.pendants[v] for v in cg.vertices)


def test_clause_graph_of_empty_formula():
    cg = build_clause_graph(from_clauses([]))
    assert cg.vertices == [] and cg.edges == []


def test_clause_graph_of_a_triangle():
    x, y, z = 1, 2, 3
    cg = build_clause_graph(from_clauses([(x, z), (x, y), (y, z)]))
    assert len(cg.edges) == 3 and not any(cg.pendants.values())


@pytest.mark.parametrize("clauses", [[(1, 2), (1, 3), (1, 4)], [(1, 2), (-1, 3)], [(1, 1, 2)]])
def test_clause_graph_preconditions(clauses):
    with pytest.raises(ValueError):
        build_clause_graph(from_clauses(clauses))


def test_path_is_satisfiable():
    f = from_clauses(PATH)
    r = solve_deg2(f)
    assert r.sat and check_model(f, r.model)
    assert brute_force(f).sat


def test_triangle_is_unsatisfiable():
    f = from_clauses([(1, 3), (1, 2), (2, 3)])
    assert not solve_deg2(f).sat and not brute_force(f).sat


def test_single_literal_clause():
    r = solve_deg2(from_clauses([(1,)]))
    assert r.sat and r.model == {1: 1}


def test_negative_literals_are_atomic():
    f = from_clauses([(-1, -2, 3), (-2, 4), (-1, 5)])
    r = solve_deg2(f)
    assert r.sat == brute_force(f).sat
    assert check_model(f, r.model)


def test_is_deg2():
    assert is_deg2(from_clauses(PATH))
    assert not is_deg2(from_clauses([(1, 2), (1, 3), (1, 4)]))


@pytest.mark.parametrize("seed", range(3))
def test_agrees_with_oracle(seed):
    sat = 0
    for cfg in deg2_suite(300, seed, (5, 16), (1, 4)):
        f = generate(cfg)
        r = solve_deg2(f)
        assert r.sat == brute_force(f).sat, cfg
        if r.sat:
            sat += 1
            assert check_model(f, r.model)
    assert 0 < sat < 300


def test_runtime_grows_slower_than_quadratic():
    times = {}
    for n in (100, 300, 1000):
        fs = [generate(cfg) for cfg in deg2_suite(5, n, (n, n), (2, 4))]
        start = time.perf_counter()
        for f in fs:
            decide_deg2(f)
        times[n] = (time.perf_counter() - start) / len(fs)
    # quadratic growth would be 100x from 100 to 1000; allow generous noise
    assert times[1000] < 60 * max(times[100], 1e-3)


# -- matching ----------------------------------------------------------------------

def _nx_size(n, edges):
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(edges)
    return len(nx.max_weight_matching(G, maxcardinality=True))


@pytest.mark.parametrize("seed", range(5))
def test_matching_size_matches_networkx(seed):
    rng = random.Random(seed)
    for _ in range(200):
        n = rng.randint(1, 18)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < rng.uniform(0.05, 0.5)]
        mate = max_cardinality_matching(n, edges)
        es = set(map(frozenset, edges))
        for u, m in enumerate(mate):
            if m != -1:
                assert mate[m] == u and frozenset((u, m)) in es
        assert matching_size(mate) == _nx_size(n, edges)


def test_matching_on_odd_cycle_with_tail():
    # blossom case: a 5-cycle whose exposed vertex connects outwards
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5)]
    assert matching_size(max_cardinality_matching(6, edges)) == 3


def test_matching_rejects_self_loops():
    with pytest.raises(ValueError):
        max_cardinality_matching(2, [(1, 1)])
