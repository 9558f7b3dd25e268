"""
Small product sets: bounds and explicit witnesses
=================================================

For subsets A, B of a group with |A| = r and |B| = s, the product AB has at
least mu(r, s) elements.  Unions of cosets of a subgroup of order h give
|AB| = f_h(r, s); the best such h gives kappa.
"""

# %%
import numpy as np

from metakappa import build_table, construct_witness, kappa, kmn_params, verify_witness

d9 = kmn_params(9, 1, 0)
table = build_table(d9)

# %%
# Print kappa over the whole grid.  The table is symmetric and constant once
# r + s exceeds |G|.
n = table.order
grid = np.array([[kappa(d9, r, s).kappa for s in range(1, n + 1)] for r in range(1, n + 1)])
print(grid)

# %%
# At (6, 6) the best subgroup has order 6, and none of them is normal.  The
# bound over normal subgroups alone is 9.
prof = kappa(d9, 6, 6)
print(f"kappa = {prof.kappa} (h = {prof.kappa_argmin_h}), nkappa = {prof.nkappa}")

# %%
# The construction still reaches 6: it lifts a witness from D3 = D9 / <a^3>.
pair = construct_witness(d9, 6, 6)
print("A =", pair.A.encode(table))
print("B =", pair.B.encode(table))
print("|AB| =", verify_witness(table, pair, 6, 6))
for step in pair.construction_trace:
    print("  ", step)

# %%
# A case that uses the doubling construction by b^n: K_{3,3} at (2, 2).
k33 = kmn_params(3, 3, 0)
pair = construct_witness(k33, 2, 2)
print("K33 (2,2):", pair.A.encode(build_table(k33)), "product size", pair.product_size)
