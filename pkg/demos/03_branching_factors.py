"""Branching factors and the choice of weight.

Every branching case of the running-time analysis is stored as a branch
vector in the packaged catalog, written in terms of the weight w.  The
worst factor over all cases bounds the running time as O(tau^n).
"""

from xsolve import catalog_eval, tau, weight_search
from xsolve.analysis import group_max

print("tau(5, 4)  =", f"{tau(5, 4):.6f}")
print("tau(13, 1) =", f"{tau(13, 1):.6f}")
print()

best, rows = catalog_eval(0.8823)
print("Ten worst cases at w = 0.8823:")
for r in sorted(rows, key=lambda r: -r.tau)[:10]:
    vec = ", ".join(f"{t:.4f}" for t in r.vector)
    print(f"  {r.name:<28} tau({vec}) = {r.tau:.6f}")
print(f"worst overall: {best:.6f}; heavy-variable cases alone: {group_max(rows, 'L13'):.6f}")
print()

res = weight_search(0.5, 1.0, 1e-4)
print("Scanning w over [0.5, 1] in steps of 1e-4:")
for w, t in res.curve[::500]:
    bar = "#" * min(60, int((t - 1.16) * 2000))
    print(f"  w={w:.2f}  worst tau={t:.5f} {bar}")
flat = res.curve[abs(res.curve[:, 1] - res.best_tau) < 1e-12, 0]
print(f"minimum {res.best_tau:.6f}, flat for w in [{flat.min():.4f}, {flat.max():.4f}];"
      f" reported best w = {res.best_w:.4f}")
