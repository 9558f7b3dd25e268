"""
Sweeping the K_{m,n} family
===========================

For every K_{m,n} up to a given order, compare the exact minimum mu with the
subgroup bound kappa on the whole (r, s) grid.
"""

# %%
import sys
import time

from metakappa import OPTIMAL, build_table, kappa, kmn_params, mu_table
from metakappa.cli import kmn_family

max_order = int(sys.argv[1]) if len(sys.argv) > 1 else 16

# %%
# seed=False ignores the explicit constructions, so every value comes from
# the search itself.
total = 0
for m, n, g in kmn_family(max_order):
    params = kmn_params(m, n, g)
    start = time.time()
    grid = mu_table(build_table(params), seed=False)
    bad = [
        cell for cell, res in grid.items()
        if res.status != OPTIMAL or res.value != kappa(params, *cell).kappa
    ]
    total += len(grid)
    print(f"K({m},{n}) g={g:<2d} order {params.order:3d}: "
          f"{'mu = kappa' if not bad else bad}  ({time.time() - start:.2f}s)")
print(f"{total} cells checked")
