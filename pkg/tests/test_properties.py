"""Structural properties of mu; runnable on its own with ``pytest tests/test_properties.py``."""

import numpy as np
import pytest

from conftest import omega_tuples
from metakappa.bounds import kappa
from metakappa.presentation import build_table, kmn_params, validate_params
from metakappa.solver import OPTIMAL, automorphisms, brute_force_mu_grid, exact_mu, mu_table

GROUPS = [
    kmn_params(3, 1, 0),
    kmn_params(4, 1, 2),
    kmn_params(3, 2, 0),
    kmn_params(5, 1, 0),
    kmn_params(6, 1, 3),
    validate_params(7, 3, 0, 2),
    validate_params(8, 2, 0, 3),
    validate_params(9, 2, 0, 1),
]
IDS = [str(p) for p in GROUPS]
PAIRS_PER_GROUP = 10_000


def test_sandwich_on_every_optimal_cell():
    checked = 0
    for params in omega_tuples(16):
        table = build_table(params)
        for (r, s), res in mu_table(table).items():
            if res.status != OPTIMAL:
                continue
            prof = kappa(params, r, s)
            assert prof.dkappa <= res.value <= prof.nkappa, (params, r, s)
            checked += 1
    assert checked > 3000


@pytest.mark.parametrize("params", GROUPS[:6], ids=IDS[:6])
def test_symmetry_and_monotonicity(params):
    # every cell solved independently, no neighbour bounds
    table = build_table(params)
    n = table.order
    mu = np.zeros((n + 2, n + 2), dtype=int)
    for r in range(1, n + 1):
        for s in range(1, n + 1):
            res = exact_mu(table, r, s)
            assert res.status == OPTIMAL
            mu[r, s] = res.value
    body = mu[1:n + 1, 1:n + 1]
    assert (body == body.T).all()
    assert (np.diff(body, axis=0) >= 0).all() and (np.diff(body, axis=1) >= 0).all()
    assert body[n - 1, n - 1] == n and body[0, 0] == 1


def test_brute_force_symmetric():
    for params in omega_tuples(10):
        grid = brute_force_mu_grid(build_table(params))
        assert (grid == grid.T).all()


@pytest.mark.parametrize("params", GROUPS, ids=IDS)
def test_translation_and_automorphism_invariance(params):
    table = build_table(params)
    n = table.order
    rng = np.random.default_rng(params.order * 1009 + params.m)
    auts = automorphisms(table)
    masks = rng.integers(1, 1 << n, size=(PAIRS_PER_GROUP, 2), dtype=np.int64)
    shifts = rng.integers(0, n, size=(PAIRS_PER_GROUP, 3))
    picks = rng.integers(0, len(auts), size=PAIRS_PER_GROUP)
    rows, inv = table.left_rows, table.inverse
    for (a, b), (x, y, z), k in zip(masks.tolist(), shifts.tolist(), picks.tolist()):
        size = table.product_bits(a, b).bit_count()
        # x A B y has the size of A B
        xa = table.left_translate(x, a)
        by = table.right_translate(b, y)
        assert table.product_bits(xa, by).bit_count() == size
        # A z z^-1 B = A B
        az = table.right_translate(a, z)
        zb = table.left_translate(inv[z], b)
        assert table.product_bits(az, zb) == table.product_bits(a, b)
        # automorphic images
        phi = auts[k]
        pa = sum(1 << phi[e] for e in range(n) if a >> e & 1)
        pb = sum(1 << phi[e] for e in range(n) if b >> e & 1)
        assert table.product_bits(pa, pb).bit_count() == size
        # (A B)^-1 = B^-1 A^-1
        assert table.product_bits(table.inverse_bits(b), table.inverse_bits(a)) == table.inverse_bits(
            table.product_bits(a, b)
        )
    assert rows[0] == tuple(range(n))
