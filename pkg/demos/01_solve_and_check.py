"""Solve a handful of seeded random instances and check every answer.

Each instance is decided twice: once by the branch-and-reduce solver and
once by exhaustive enumeration.  Satisfiable answers come with a model,
which is checked clause by clause against the input.
"""

from xsolve import brute_force, check_model, generate, solve
from xsolve.testkit import GeneratorConfig

print("A small instance first: (x1 x2 x3) and (-x1 x2 x3) cannot both have")
print("exactly one true literal, because x2 + x3 would have to equal both")
print("1 - x1 and x1.")
from xsolve import from_clauses  # noqa: E402

pair = from_clauses([(1, 2, 3), (-1, 2, 3)])
print("  solver:", solve(pair).decision, " enumeration:", "SAT" if brute_force(pair).sat else "UNSAT")
print()

print(f"{'seed':>4} {'n':>3} {'m':>3}  {'solver':<6} {'oracle':<6} {'models':>6}  nodes  rules fired")
for seed in range(1, 13):
    cfg = GeneratorConfig(seed=seed, n_vars=14, n_clauses=4 + seed % 5, length_range=(3, 4))
    f = generate(cfg)
    res = solve(f)
    oracle = brute_force(f)
    assert res.sat == oracle.sat
    if res.sat:
        assert check_model(f, res.model)
    fired = ",".join(f"{k}x{v}" for k, v in sorted(res.stats.rule_fires.items(), key=lambda kv: kv[0]))
    print(f"{seed:>4} {cfg.n_vars:>3} {cfg.n_clauses:>3}  {res.decision:<6} "
          f"{'SAT' if oracle.sat else 'UNSAT':<6} {oracle.count:>6}  {res.stats.nodes:>5}  {fired}")

print()
print("Every decision matched the enumeration and every model checked out.")
