"""
Where the subgroup bound fails: C7 x| C3
========================================

The non-abelian group of order 21 has subgroups of order 3, but none of
them is normal.  For a handful of sizes the coset bound kappa is then out
of reach.  Exhaustive search certifies it.
"""

# %%
import time

import numpy as np

from metakappa import build_table, exact_mu, kappa, mu_exceeds, mu_table, validate_params

G = validate_params(7, 3, 0, 2)
table = build_table(G)

# %%
# First the single cell (5, 9).  kappa is 12, from a subgroup of order 3.
prof = kappa(G, 5, 9)
print("kappa(5, 9) =", prof.kappa, "via h =", prof.kappa_argmin_h)
print("no pair reaches 12:", mu_exceeds(table, 5, 9, 12))
res = exact_mu(table, 5, 9)
print("mu(5, 9) =", res.value, res.status, f"{res.nodes_explored} nodes")

# %%
# The full table, and the cells where mu exceeds kappa.
start = time.time()
grid = mu_table(table)
mu = np.array([[grid[r, s].value for s in range(1, 22)] for r in range(1, 22)])
kap = np.array([[kappa(G, r, s).kappa for s in range(1, 22)] for r in range(1, 22)])
print(f"solved 441 cells in {time.time() - start:.1f}s")
rows, cols = np.nonzero(mu > kap)
print("mu > kappa at", [(int(r) + 1, int(s) + 1) for r, s in zip(rows, cols) if r <= s])
