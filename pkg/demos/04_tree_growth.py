"""Search-tree sizes against the measure on larger random instances.

The analysis bounds the number of leaves by tau^mu with tau = 1.1674.
Random instances are far from worst case, so the observed growth rate
leaves^(1/mu) stays well below that.  The two-triangle refinement can be
switched off to compare tree sizes.
"""

import time

from xsolve import generate, solve
from xsolve.testkit import random_suite

print(f"{'n':>4} {'case2.1':>7} {'mean leaves':>11} {'max leaves':>10} {'max rate':>8} {'time':>6}")
for n in (30, 60, 90, 120):
    for case21 in (True, False):
        start = time.perf_counter()
        leaves, rate = [], 0.0
        for cfg in random_suite(15, n, (n, n), (int(0.9 * n),) * 2, (3, 3), 0.0):
            st = solve(generate(cfg), case21=case21, instrument=True).stats
            leaves.append(st.leaves)
            rate = max(rate, st.leaves ** (1 / st.mu_initial))
        print(f"{n:>4} {'on' if case21 else 'off':>7} {sum(leaves) / len(leaves):>11.1f} "
              f"{max(leaves):>10} {rate:>8.4f} {time.perf_counter() - start:>5.1f}s")
print("bound: 1.1674")
