"""Measure-and-conquer numerics.

Branching factors are roots of ``sum(x ** -t_i) = 1``; the catalog lists
the branch vectors of every case of the running-time analysis as
expressions in the weight ``w`` so the worst case can be evaluated (and the
weight re-optimised) without touching code.
"""

from __future__ import annotations

import ast
import math
import os
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .stats import SearchStats

ROOT_TOL = 1e-12
DEFAULT_WEIGHT = 0.8823


def _residual(x, ts):
    return sum(x ** -t for t in ts) - 1.0


def tau(*ts):
    """Branching factor of the branch vector ``ts``.

    Returns the unique ``x >= 1`` with ``sum(x ** -t) == 1``.  Accepts either
    ``tau(5, 4)`` or ``tau([5, 4])``.  A single child gives exactly 1.
    """
    if len(ts) == 1 and not isinstance(ts[0], (int, float)):
        ts = tuple(ts[0])
    ts = tuple(float(t) for t in ts)
    if not ts:
        raise ValueError("empty branch vector")
    if any(not t > 0 for t in ts):
        raise ValueError(f"branch vector components must be positive: {ts}")
    if len(ts) == 1:
        return 1.0

    lo, hi = 1.0, 2.0
    while _residual(hi, ts) > 0:
        lo, hi = hi, hi * 2
    x = (lo + hi) / 2
    for _ in range(200):
        f = _residual(x, ts)
        if f > 0:
            lo = x
        else:
            hi = x
        if abs(f) < ROOT_TOL * 1e-2 or hi - lo < 1e-16:
            break
        df = -sum(t * x ** (-t - 1) for t in ts)
        nx = x - f / df
        # Newton step only when it stays inside the bracket
        x = nx if lo < nx < hi else (lo + hi) / 2
    return x


def tau_many(T):
    """Vectorised :func:`tau` over columns: ``T`` has shape (r, N)."""
    T = np.asarray(T, dtype=float)
    if T.ndim != 2:
        raise ValueError("expected a 2-d array of branch vectors")
    if np.any(T <= 0):
        raise ValueError("branch vector components must be positive")
    if T.shape[0] == 1:
        return np.ones(T.shape[1])
    # sum x^-t <= r * x^-tmin, so x = r^(1/tmin) is an upper bracket
    lo = np.ones(T.shape[1])
    hi = T.shape[0] ** (1.0 / T.min(axis=0)) + 1e-9
    for _ in range(64):
        mid = (lo + hi) / 2
        f = (mid ** -T).sum(axis=0) - 1.0
        pos = f > 0
        lo = np.where(pos, mid, lo)
        hi = np.where(pos, hi, mid)
    x = (lo + hi) / 2
    for _ in range(3):
        f = (x ** -T).sum(axis=0) - 1.0
        df = -(T * x ** (-T - 1)).sum(axis=0)
        x = x - f / df
    return x


# -- catalog ---------------------------------------------------------------

_ALLOWED_NODES = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub,
                  ast.Mult, ast.USub, ast.UAdd, ast.Constant, ast.Name, ast.Load)
_SYMBOLS = {"w", "d", "h"}


def _compile_expr(text):
    tree = ast.parse(text.strip(), mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED_NODES):
            raise ValueError(f"unsupported syntax in {text!r}")
        if isinstance(node, ast.Name) and node.id not in _SYMBOLS:
            raise ValueError(f"unknown symbol {node.id!r} in {text!r}")
        if isinstance(node, ast.Constant) and not isinstance(node.value, (int, float)):
            raise ValueError(f"non-numeric constant in {text!r}")
    return compile(tree, "<catalog>", "eval")


@dataclass
class CatalogEntry:
    name: str
    exprs: list
    h_range: tuple | None = None
    expected: float | None = None
    _code: list = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._code is None:
            self._code = [_compile_expr(e) for e in self.exprs]

    @property
    def group(self):
        return self.name.split("/", 1)[0]

    def hs(self):
        if self.h_range is None:
            return [None]
        return list(range(self.h_range[0], self.h_range[1] + 1))

    def vector(self, w, h=None):
        env = {"w": w, "d": 1 - w, "h": 0 if h is None else h, "__builtins__": {}}
        return tuple(eval(c, env) for c in self._code)

    def worst(self, w):
        """Largest branching factor over the h range, with the h attaining it."""
        best = None
        for h in self.hs():
            t = tau(self.vector(w, h))
            if best is None or t > best[0]:
                best = (t, h)
        return best


def parse_catalog(text):
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 4:
            raise ValueError(f"catalog line {lineno}: expected 4 fields, got {len(parts)}")
        name, vec, hr, expected = parts
        if hr == "-":
            h_range = None
        else:
            a, b = hr.split("..")
            h_range = (int(a), int(b))
            if h_range[0] > h_range[1]:
                raise ValueError(f"catalog line {lineno}: empty h range {hr}")
        entries.append(CatalogEntry(
            name=name,
            exprs=[e for e in vec.split(";")],
            h_range=h_range,
            expected=None if expected == "-" else float(expected),
        ))
    names = [e.name for e in entries]
    if len(set(names)) != len(names):
        raise ValueError("duplicate catalog entry names")
    return entries


def load_catalog(path=None):
    """Load the branch-vector catalog.

    ``path`` wins over the ``XSOLVE_CATALOG`` environment variable, which
    wins over the packaged default.
    """
    path = path or os.environ.get("XSOLVE_CATALOG")
    if path:
        with open(path) as fh:
            return parse_catalog(fh.read())
    return parse_catalog(resources.files("xsolve").joinpath("data/catalog.txt").read_text())


@dataclass
class CatalogRow:
    name: str
    tau: float
    h: int | None
    vector: tuple
    expected: float | None


def catalog_eval(w, catalog=None):
    """Evaluate every catalog entry at weight ``w``.

    Returns ``(max_tau, rows)`` where rows are :class:`CatalogRow` in
    catalog order.
    """
    if not 0 < w <= 1:
        raise ValueError(f"weight must lie in (0, 1], got {w}")
    catalog = load_catalog() if catalog is None else catalog
    rows = []
    for entry in catalog:
        t, h = entry.worst(w)
        rows.append(CatalogRow(entry.name, t, h, entry.vector(w, h), entry.expected))
    return max(r.tau for r in rows), rows


def group_max(rows, group):
    return max(r.tau for r in rows if r.name.split("/", 1)[0] == group)


@dataclass
class WeightSearchResult:
    best_w: float
    best_tau: float
    curve: np.ndarray  # shape (N, 2): w, max tau


def _catalog_curve(ws, catalog):
    worst = np.ones_like(ws)
    for entry in catalog:
        for h in entry.hs():
            cols = [np.broadcast_to(np.asarray(v, dtype=float), ws.shape)
                    for v in entry.vector(ws, h)]
            worst = np.maximum(worst, tau_many(np.vstack(cols)))
    return worst


def weight_search(lo=0.5, hi=1.0, step=1e-4, catalog=None):
    """Grid search for the weight minimising the worst branching factor.

    Ties (the worst factor is often flat over an interval because some
    vectors do not depend on ``w``) resolve to the midpoint of the first
    minimising run of grid points.
    """
    if not (0 < lo < hi <= 1) or not step > 0:
        raise ValueError(f"degenerate search range lo={lo} hi={hi} step={step}")
    catalog = load_catalog() if catalog is None else catalog
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    ws = lo + step * np.arange(n)
    worst = _catalog_curve(ws, catalog)
    best = worst.min()
    at_min = np.flatnonzero(worst <= best + 1e-12)
    run_end = at_min[0]
    while run_end + 1 < n and worst[run_end + 1] <= best + 1e-12:
        run_end += 1
    mid = (at_min[0] + run_end) // 2
    return WeightSearchResult(float(ws[mid]), float(best), np.column_stack([ws, worst]))


def record_branch(stats: SearchStats, parent_mu, child_mus, eps=0.0):
    """Append the measure drops of one branching to ``stats``.

    A child whose measure is not strictly below the parent's is kept and
    flagged in ``stats.violations``.
    """
    for c in child_mus:
        stats.branch_drops.append((parent_mu, c))
        if not c < parent_mu - eps:
            stats.violations.append(f"branch: child mu {c:.6f} >= parent mu {parent_mu:.6f}")
    return stats
