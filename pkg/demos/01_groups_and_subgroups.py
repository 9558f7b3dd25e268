"""
Metacyclic groups and their subgroup lattices
=============================================

Every group here is given by four integers (m, n_exp, g, h).  This script
builds a few of them, walks the subgroup parametrisation and checks it
against brute-force closure.
"""

# %%
# The dihedral group of order 6 is K_{3,1}: a rotation a of order 3 and a
# reflection b with b a b^-1 = a^-1.
from metakappa import build_table, kmn_params, validate_params

d3 = kmn_params(3, 1, 0)
table = build_table(d3)
print("D3 presentation", d3, "order", table.order)
print("elements in normal form a^i b^j:", [e.encode() for e in table.elements])

# %%
# Each subgroup corresponds to a triple (k, l, beta): order k, meeting <a>
# in l elements.
from metakappa import enumerate_gamma, is_normal_descriptor, psi, quotient_params

for d in enumerate_gamma(d3):
    sub = psi(d3, d)
    line = f"  (k={d.k}, l={d.l}, beta={d.beta})  {sub.elements.encode(table):24s}"
    if sub.is_normal:
        line += f" normal, quotient {quotient_params(d3, d)}"
    print(line)

# %%
# The parametrisation is complete: closure of cyclic subgroups finds the
# same sets.
from metakappa import brute_force_subgroups

brute = sorted(s.bits for s in brute_force_subgroups(table))
print("matches brute force:", brute == sorted(psi(d3, d).elements.bits for d in enumerate_gamma(d3)))

# %%
# For K_{m,n} the normal subgroup orders have a closed form: m | k, or k has
# fewer factors of 2 than 2mn.  D9 has no normal subgroups of order 2 or 6.
from metakappa import kmn_normal_order, normal_orders

d9 = kmn_params(9, 1, 0)
print("N(D9) =", sorted(normal_orders(d9)))
print("predicate:", {k: kmn_normal_order(9, 1, 0, k) for k in (1, 2, 3, 6, 9, 18)})

# %%
# The group C7 x| C3 lies outside the K family.  Its only normal subgroups
# have orders 1, 7 and 21.
c7c3 = validate_params(7, 3, 0, 2)
print("N(C7 x| C3) =", sorted(normal_orders(c7c3)))
