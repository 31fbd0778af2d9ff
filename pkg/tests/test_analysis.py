import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import brentq

from xsolve.analysis import (
    DEFAULT_WEIGHT, catalog_eval, group_max, load_catalog, parse_catalog, record_branch,
    tau, tau_many, weight_search,
)
from xsolve.stats import SearchStats


def oracle_tau(ts):
    """Independent root: bracketed Brent solve of sum x^-t = 1."""
    return brentq(lambda x: sum(x ** -t for t in ts) - 1, 1 + 1e-15, 1e16, xtol=1e-15, rtol=1e-15)


def roots_tau(ts):
    """Integer vectors only: largest real root of x^T - sum x^(T - t)."""
    T = max(ts)
    coeffs = np.zeros(T + 1)
    coeffs[0] = 1
    for t in ts:
        coeffs[t] -= 1
    real = [r.real for r in np.roots(coeffs) if abs(r.imag) < 1e-9 and r.real > 0]
    return max(real)


def test_trivial_values():
    assert tau(1, 1) == pytest.approx(2, abs=1e-12)
    assert tau(2, 2) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert tau(7) == 1.0


def test_reference_values():
    assert tau(5, 4) == pytest.approx(1.1674, abs=1e-4)
    assert tau(13, 1) == pytest.approx(1.1632, abs=1e-4)
    assert tau([5, 4]) == tau(5, 4)


def test_rejects_non_positive():
    with pytest.raises(ValueError):
        tau(3, 0)
    with pytest.raises(ValueError):
        tau(-1, 2)
    with pytest.raises(ValueError):
        tau()


@pytest.mark.parametrize("ts", [(5, 4), (13, 1), (4, 6), (9, 2), (7, 3), (1, 1, 1), (3, 5, 8)])
def test_matches_polynomial_roots(ts):
    assert tau(ts) == pytest.approx(roots_tau(ts), abs=1e-9)


vectors = st.lists(st.floats(0.05, 30, allow_nan=False), min_size=2, max_size=5)


@settings(max_examples=300, deadline=None)
@given(vectors)
def test_residual_and_oracle(ts):
    x = tau(ts)
    assert abs(sum(x ** -t for t in ts) - 1) < 1e-12
    assert x == pytest.approx(oracle_tau(ts), rel=1e-10)


@settings(max_examples=200, deadline=None)
@given(vectors, st.randoms())
def test_permutation_invariance(ts, rnd):
    perm = list(ts)
    rnd.shuffle(perm)
    assert tau(perm) == pytest.approx(tau(ts), rel=1e-13)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.5, 20), st.floats(0.5, 20), st.floats(0.01, 5))
def test_larger_decrease_gives_smaller_factor(k, j, extra):
    assert tau(k + extra, j) < tau(k, j)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.5, 20), st.floats(0.5, 20))
def test_balanced_vector_is_best(i, j):
    alpha = (i + j) / 2
    assert tau(alpha, alpha) <= tau(i, j) + 1e-12


def test_vectorised_agrees():
    rng = np.random.default_rng(0)
    T = rng.uniform(0.1, 15, size=(3, 500))
    got = tau_many(T)
    want = [tau(T[:, k]) for k in range(T.shape[1])]
    assert np.allclose(got, want, rtol=1e-12, atol=0)
    assert np.all(tau_many(np.ones((1, 4))) == 1)


# -- catalog ----------------------------------------------------------------

def test_catalog_loads_and_is_positive():
    cat = load_catalog()
    assert len(cat) >= 40
    for e in cat:
        for w in (0.5, 0.75, DEFAULT_WEIGHT, 1.0):
            for h in e.hs():
                assert all(t > 0 for t in e.vector(w, h)), (e.name, w, h)


def test_catalog_values_against_independent_solver():
    _, rows = catalog_eval(DEFAULT_WEIGHT)
    for r in rows:
        assert r.tau == pytest.approx(oracle_tau(r.vector), abs=1e-10), r.name


def test_named_entries():
    rows = {r.name: r for r in catalog_eval(DEFAULT_WEIGHT)[1]}
    w, dd = 0.8823, 0.1177
    assert rows["L10/(3,3,3)"].tau == pytest.approx(tau(7 * w, 4 * w - 3 * dd), abs=1e-12)
    assert rows["L10/(3,3,3)"].tau == pytest.approx(1.1664, abs=1e-4)
    assert rows["L12/k4/p4/normal"].tau == pytest.approx(1.1510, abs=1e-4)


def test_odd_entry_value():
    # the reference listing prints 1.1577 for this vector; the root is 1.155640
    rows = {r.name: r for r in catalog_eval(DEFAULT_WEIGHT)[1]}
    w, dd = 0.8823, 0.1177
    value = rows["L13/(4,4,4)/case2.2"].tau
    assert value == pytest.approx(oracle_tau((9 * w + 4, 1 + 3 * dd)), abs=1e-12)
    assert value == pytest.approx(1.155640, abs=1e-6)


def test_headline_maxima():
    best, rows = catalog_eval(DEFAULT_WEIGHT)
    assert best == pytest.approx(1.1674, abs=1e-3)
    assert group_max(rows, "L13") == pytest.approx(1.1668, abs=1e-3)


def test_families_take_the_worst_h():
    rows = {r.name: r for r in catalog_eval(DEFAULT_WEIGHT)[1]}
    entry = {e.name: e for e in load_catalog()}["L12/k2/p6/case2.2"]
    values = [tau(entry.vector(DEFAULT_WEIGHT, h)) for h in entry.hs()]
    assert rows[entry.name].tau == max(values)


def test_catalog_eval_rejects_bad_weight():
    with pytest.raises(ValueError):
        catalog_eval(0)
    with pytest.raises(ValueError):
        catalog_eval(1.2)


def test_catalog_parse_errors():
    with pytest.raises(ValueError):
        parse_catalog("a | 1 ; 2 | -")
    with pytest.raises(ValueError):
        parse_catalog("a | __import__('os') | - | -")
    with pytest.raises(ValueError):
        parse_catalog("a | q + 1 | - | -")
    with pytest.raises(ValueError):
        parse_catalog("a | 1 | - | -\na | 2 | - | -")


def test_catalog_override_by_environment(tmp_path, monkeypatch):
    p = tmp_path / "one.txt"
    p.write_text("only | w ; 2 - w | - | -\n")
    monkeypatch.setenv("XSOLVE_CATALOG", str(p))
    assert [e.name for e in load_catalog()] == ["only"]


# -- weight search ------------------------------------------------------------

def test_single_entry_search_hits_boundary():
    cat = parse_catalog("only | w ; 2 - w | - | -")
    res = weight_search(0.5, 1.0, 1e-3, cat)
    assert res.best_w == pytest.approx(1.0)
    assert res.best_tau == pytest.approx(tau(1, 1))


def test_search_range_checks():
    with pytest.raises(ValueError):
        weight_search(0.9, 0.8)
    with pytest.raises(ValueError):
        weight_search(0.5, 1.0, 0)


def test_coarse_search_finds_the_valley():
    res = weight_search(0.5, 1.0, 1e-3)
    assert abs(res.best_w - DEFAULT_WEIGHT) < 0.01
    assert res.best_tau == pytest.approx(1.1674, abs=1e-3)
    assert res.best_tau == pytest.approx(res.curve[:, 1].min())


# -- record_branch --------------------------------------------------------------

def test_record_branch():
    st_ = record_branch(SearchStats(), 10, [5, 6])
    assert [p - c for p, c in st_.branch_drops] == [5, 4]
    assert st_.min_branch_drop() == 4 and not st_.violations
    record_branch(st_, 10, [10.1])
    assert st_.violations
    assert sum(st_.drop_histogram(1.0).values()) == 3
