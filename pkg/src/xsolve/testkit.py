"""Brute-force oracle and seeded instance generator.

Instances come from SplitMix64 so a config maps to the same formula on any
platform or language:

    state  <- state + 0x9E3779B97F4A7C15            (mod 2^64)
    z      <- (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z      <- (z ^ (z >> 27)) * 0x94D049BB133111EB
    output <- z ^ (z >> 31)

Integers in ``[lo, hi]`` are ``lo + (output * (hi - lo + 1)) >> 64`` and a
Bernoulli(p) draw is ``(output >> 11) * 2^-53 < p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .formula import Formula, from_clauses, is_const

MASK64 = (1 << 64) - 1
MAX_ORACLE_VARS = 26
_CHUNK_BITS = 20


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK64

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo, hi):
        return lo + ((self.next() * (hi - lo + 1)) >> 64)

    def bernoulli(self, p):
        return (self.next() >> 11) * 2.0 ** -53 < p

    def sample(self, pool, k):
        """``k`` distinct items of ``pool`` by partial Fisher-Yates."""
        pool = list(pool)
        for i in range(k):
            j = self.randint(i, len(pool) - 1)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    n_vars: int
    n_clauses: int
    length_range: tuple = (3, 6)
    neg_probability: float = 0.5
    degree_cap: int | None = None
    distinct: bool = True  # False draws clause variables with replacement


def generate_clauses(cfg: GeneratorConfig):
    lo, hi = cfg.length_range
    if cfg.n_vars < 1 or cfg.n_clauses < 0 or lo < 1 or lo > hi:
        raise ValueError(f"invalid generator config {cfg}")
    if not 0.0 <= cfg.neg_probability <= 1.0:
        raise ValueError("neg_probability must lie in [0, 1]")
    if cfg.distinct and lo > cfg.n_vars:
        raise ValueError("clause length exceeds the number of variables")
    if cfg.degree_cap is not None and (cfg.degree_cap < 1 or not cfg.distinct):
        raise ValueError("a degree cap needs distinct clause variables and cap >= 1")

    rng = SplitMix64(cfg.seed)
    variables = list(range(1, cfg.n_vars + 1))
    if cfg.degree_cap is not None:
        # one polarity per variable keeps capped instances free of x / -x pairs
        sign = {v: -1 if rng.bernoulli(cfg.neg_probability) else 1 for v in variables}
        room = {v: cfg.degree_cap for v in variables}

    clauses = []
    for _ in range(cfg.n_clauses):
        length = rng.randint(lo, min(hi, cfg.n_vars) if cfg.distinct else hi)
        if cfg.degree_cap is not None:
            pool = [v for v in variables if room[v] > 0]
            if len(pool) < length:
                raise ValueError(f"degree cap {cfg.degree_cap} exhausted; config infeasible")
            chosen = rng.sample(pool, length)
            for v in chosen:
                room[v] -= 1
            clauses.append([sign[v] * v for v in chosen])
            continue
        if cfg.distinct:
            chosen = rng.sample(variables, length)
        else:
            chosen = [rng.randint(1, cfg.n_vars) for _ in range(length)]
        clauses.append([-v if rng.bernoulli(cfg.neg_probability) else v for v in chosen])
    return clauses


def generate(cfg: GeneratorConfig) -> Formula:
    return from_clauses(generate_clauses(cfg), num_vars=cfg.n_vars)


def random_suite(count, seed, vars_range=(5, 20), clauses_range=(3, 40),
                 length_range=(3, 6), neg_probability=0.5, degree_cap=None, distinct=True):
    """Yield ``count`` generator configs with sizes drawn from a master stream."""
    master = SplitMix64(seed)
    for _ in range(count):
        yield GeneratorConfig(
            seed=master.next(),
            n_vars=master.randint(*vars_range),
            n_clauses=master.randint(*clauses_range),
            length_range=length_range,
            neg_probability=neg_probability,
            degree_cap=degree_cap,
            distinct=distinct,
        )


def deg2_suite(count, seed, vars_range=(5, 20), length_range=(2, 4), neg_probability=0.5):
    """Yield feasible degree-2 configs; clause counts stay within ``2n / max length``."""
    master = SplitMix64(seed)
    lo, hi = length_range
    for _ in range(count):
        n = master.randint(*vars_range)
        top = max(1, 2 * n // hi)
        yield GeneratorConfig(
            seed=master.next(),
            n_vars=n,
            n_clauses=master.randint(max(1, top // 2), top),
            length_range=length_range,
            neg_probability=neg_probability,
            degree_cap=2,
        )


# -- oracle ----------------------------------------------------------------------

class OracleResult(NamedTuple):
    sat: bool
    count: int
    witness: dict | None


def count_models(clauses, variables):
    """Enumerate all assignments of ``variables`` against exact-one ``clauses``.

    Assignments are processed in chunks; inside a chunk each clause filters
    the surviving assignments, so every assignment is checked until the
    first clause it violates.  Returns ``(count, first_witness)``.
    """
    variables = sorted(variables)
    n = len(variables)
    if n > MAX_ORACLE_VARS:
        raise ValueError(f"{n} variables exceed the enumeration guard of {MAX_ORACLE_VARS}")
    pos = {v: i for i, v in enumerate(variables)}
    compiled = []
    for c in clauses:
        ones = sum(1 for t in c if is_const(t) and t.value == 1)
        lits = [(pos[abs(t)], t < 0) for t in c if not is_const(t)]
        compiled.append((ones, lits))

    total = 1 << n
    chunk = 1 << min(n, _CHUNK_BITS)
    count, witness = 0, None
    for start in range(0, total, chunk):
        a = np.arange(start, min(start + chunk, total), dtype=np.int64)
        for ones, lits in compiled:
            s = np.full(a.shape, ones, dtype=np.int16)
            for bit, negative in lits:
                b = ((a >> bit) & 1).astype(np.int16)
                s += (1 - b) if negative else b
            a = a[s == 1]
            if not a.size:
                break
        count += int(a.size)
        if witness is None and a.size:
            first = int(a[0])
            witness = {v: (first >> i) & 1 for i, v in enumerate(variables)}
    return count, witness


def brute_force(f: Formula) -> OracleResult:
    """Exhaustive exact-one model count of the original clauses of ``f``."""
    count, witness = count_models(f.original, f.variables)
    return OracleResult(count > 0, count, witness)
