"""How the measure weighs variables.

A variable counts 0.8823 instead of 1 when it sits on a 3-literal clause
whose three variables have no common neighbour outside that clause.
"""

from xsolve import from_clauses
from xsolve.measure import common_outside_neighbour, formula_measure

names = "x y z a u w v r s t e f".split()
idx = {n: i + 1 for i, n in enumerate(names)}
clauses = [("x", "y", "z", "a"), ("x", "u", "w", "v"), ("x", "r", "s", "t"),
           ("a", "v", "t"), ("y", "e", "f")]
f = from_clauses([[idx[c] for c in cl] for cl in clauses])

print("clauses:", "  ".join("(" + " ".join(cl) + ")" for cl in clauses))
for cid, cl in enumerate(clauses):
    if len(cl) == 3:
        z = common_outside_neighbour(f, cid)
        print(f"  ({' '.join(cl)}): common outside neighbour =", names[z - 1] if z else "none")

rep = formula_measure(f)
light = sorted(names[v - 1] for v, w in rep.weights.items() if w < 1)
print("variables weighing 0.8823:", ", ".join(light))
print(f"mu = {rep.mu:.4f}  (9 x 1 + 3 x 0.8823)")
print()

print("The measure is not monotone under every simplification.  Rewriting a")
print("pair of clauses that overlap in a 1-j orientation can hand a 3-clause")
print("a fresh common neighbour:")
from xsolve.simplify import cascade  # noqa: E402

g = from_clauses([(-2, 1, 14), (10, -12, 1, -4), (-8, -4, -12), (-5, 14, -7),
                  (-7, -13, 1), (9, -4, -12, 10), (-8, -2, -6, 3)])
out, h = cascade(g)
print("  before:", g)
print("  after: ", h)
print(f"  mu {formula_measure(g).mu:.4f} -> {formula_measure(h).mu:.4f}")
