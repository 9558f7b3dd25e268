import pytest
from hypothesis import given, settings, strategies as st

from conftest import omega_tuples
from metakappa.bounds import f_h, kappa
from metakappa.errors import PreconditionViolation, RangeViolation, SizeMismatch, UnsupportedGroup
from metakappa.lattice import SubgroupDescriptor as D, psi
from metakappa.presentation import (
    ElementSet,
    GroupElement,
    build_table,
    cyclic_params,
    kmn_params,
    mul,
    validate_params,
)
from metakappa.witness import (
    WitnessPair,
    build_kx,
    build_segments,
    construct_cyclic,
    construct_f2,
    construct_lift,
    construct_nkappa,
    construct_progression,
    construct_witness,
    verify_witness,
)

D3 = kmn_params(3, 1, 0)
D9 = kmn_params(9, 1, 0)
K33 = kmn_params(3, 3, 0)
C7xC3 = validate_params(7, 3, 0, 2)


def slow_product_size(table, pair):
    """|AB| from normal-form arithmetic, bypassing the table."""
    els = table.elements
    return len({mul(table.params, els[x], els[y]) for x in pair.A for y in pair.B})


def elems(table, *codes):
    return ElementSet.from_indices([table.index(GroupElement(i, j)) for i, j in codes], table.order)


def test_segments_and_kx():
    assert len(build_segments(K33, 0)) == 0
    t = build_table(K33)
    assert build_segments(K33, 1).bits == t.a_subgroup_bits()
    assert len(build_segments(K33, 3)) == 9
    with pytest.raises(RangeViolation):
        build_segments(K33, 4)
    with pytest.raises(UnsupportedGroup):
        build_segments(C7xC3, 1)
    assert len(build_kx(K33, 0)) == 0 and len(build_kx(K33, -2)) == 0
    assert build_kx(K33, 1).indices() == [0]
    z7 = cyclic_params(7)
    assert len(build_table(z7).product(build_kx(z7, 3), build_kx(z7, 4))) == 6


def test_segment_products_add():
    # I(p) I(q) = I(p + q - 1)
    t = build_table(kmn_params(4, 5, 2))
    for p in range(1, 6):
        for q in range(1, 6 - p + 1):
            prod = t.product(build_segments(t.params, p), build_segments(t.params, q))
            assert prod == build_segments(t.params, p + q - 1)


class TestF2:
    def test_k33_small(self):
        pair = construct_f2(3, 3, 0, 2, 2)
        t = build_table(K33)
        b3 = elems(t, (0, 0), (0, 3))
        assert pair.A == b3 and pair.B == b3 and pair.product_size == 2

    def test_k33_8_8_outside_kappa_argmin(self):
        # kappa(8, 8) = 9 comes from h = 3, so f_2 = 14 is the target here
        assert kappa(K33, 8, 8).kappa == 9
        pair = construct_f2(3, 3, 0, 8, 8, strict=False)
        assert verify_witness(build_table(K33), pair, 8, 8) <= 14 == f_h(2, 8, 8)

    def test_k53(self):
        pair = construct_f2(5, 3, 0, 2, 4)
        assert verify_witness(build_table(kmn_params(5, 3, 0)), pair, 2, 4) <= 4

    def test_all_cells_reach_f2(self):
        for m, n, g in ((3, 1, 0), (5, 1, 0), (3, 3, 0), (5, 3, 0), (7, 1, 0), (3, 5, 0), (9, 1, 0)):
            t = build_table(kmn_params(m, n, g))
            for r in range(2, t.order + 1, 2):
                for s in range(2, t.order + 1, 2):
                    pair = construct_f2(m, n, g, r, s, strict=False)
                    size = verify_witness(t, pair, r, s)
                    assert size == slow_product_size(t, pair) <= f_h(2, r, s), (m, n, r, s)


class TestCyclic:
    def test_examples(self):
        z7 = construct_cyclic(7, 3, 4)
        assert z7.A.indices() == [0, 1, 2] and z7.B.indices() == [0, 1, 2, 3]
        assert z7.product_size == 6
        z6 = construct_cyclic(6, 2, 3)
        assert z6.product_size == 3 and z6.certificate_h == 3
        full = construct_cyclic(11, 11, 11)
        assert len(full.A) == 11 and full.product_size == 11

    @pytest.mark.parametrize("N", [1, 4, 6, 8, 12, 15])
    def test_grid(self, N):
        t = build_table(cyclic_params(N))
        for r in range(1, N + 1):
            for s in range(1, N + 1):
                pair = construct_cyclic(N, r, s)
                assert verify_witness(t, pair, r, s) <= kappa(t.params, r, s).kappa


class TestLift:
    def test_d9_through_a3(self):
        d3 = build_table(D3)
        inner = WitnessPair(elems(d3, (0, 0), (0, 1)), elems(d3, (0, 0), (0, 1)), 2, 2)
        pair = construct_lift(D9, D(3, 3, 0), inner, 6, 6)
        t = build_table(D9)
        expected = elems(t, (0, 0), (3, 0), (6, 0), (0, 1), (3, 1), (6, 1))
        assert pair.A == expected == pair.B and pair.product_size == 6

    def test_k33_lift_arithmetic(self):
        z6 = build_table(validate_params(1, 6, 0, 0))
        inner = WitnessPair(elems(z6, (0, 0), (0, 1)), elems(z6, (0, 0), (0, 1)), 3, 1)
        pair = construct_lift(K33, D(3, 3, 0), inner, 6, 6)
        assert pair.product_size == 9 == 3 * inner.product_size

    def test_whole_group(self):
        one = ElementSet.from_indices([0], 1)
        pair = construct_lift(C7xC3, D(21, 7, 0), WitnessPair(one, one, 1, 1), 5, 9)
        assert (len(pair.A), len(pair.B)) == (5, 9) and pair.product_size <= 21


class TestDispatch:
    def test_examples(self):
        pair = construct_witness(D9, 6, 6)
        assert pair.product_size == 6 and kappa(D9, 6, 6).nkappa == 9
        assert pair.A == pair.B == psi(D9, D(6, 3, 0)).elements
        q8 = kmn_params(4, 1, 2)
        pair = construct_witness(q8, 2, 2)
        assert pair.product_size == 2 and pair.A.indices() == [0, 2]
        pair = construct_witness(K33, 2, 2)
        assert pair.A == pair.B == elems(build_table(K33), (0, 0), (0, 3))

    def test_unsupported(self):
        with pytest.raises(UnsupportedGroup):
            construct_witness(C7xC3, 5, 9)

    def test_sweep_small(self):
        for params in omega_tuples(20):
            if not (params.is_abelian or (params.n_exp % 2 == 0 and params.h == params.m - 1)):
                continue
            t = build_table(params)
            for r in range(1, t.order + 1):
                for s in range(1, t.order + 1):
                    pair = construct_witness(params, r, s)
                    size = verify_witness(t, pair, r, s)
                    assert size == pair.product_size <= kappa(params, r, s).kappa

    def test_nkappa_any_group(self):
        for params in omega_tuples(16):
            t = build_table(params)
            for r in range(1, t.order + 1):
                for s in range(1, t.order + 1):
                    pair = construct_nkappa(params, r, s)
                    assert verify_witness(t, pair, r, s) <= kappa(params, r, s).nkappa


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 1, 0), (4, 3, 2), (6, 2, 0), (9, 2, 0), (10, 1, 5), (5, 4, 0)]), st.data())
def test_witness_product_matches_slow_product(mng, data):
    params = kmn_params(*mng)
    t = build_table(params)
    r = data.draw(st.integers(1, t.order))
    s = data.draw(st.integers(1, t.order))
    pair = construct_witness(params, r, s)
    assert slow_product_size(t, pair) == pair.product_size
    assert slow_product_size(t, pair.transposed(t)) == pair.product_size


class TestVerify:
    def test_examples(self):
        t = build_table(D3)
        one = ElementSet.from_indices([0], 6)
        assert verify_witness(t, WitnessPair(one, one, 1, 1), 1, 1) == 1
        h = psi(D3, D(3, 3, 0)).elements
        assert verify_witness(t, WitnessPair(h, h, 3, 3), 3, 3) == 3
        a, b = elems(t, (0, 0), (0, 1)), elems(t, (0, 0), (1, 0))
        assert verify_witness(t, WitnessPair(a, b, 4, 1), 2, 2) == 4

    def test_odd_sizes_refused(self):
        with pytest.raises(PreconditionViolation):
            construct_f2(3, 1, 0, 3, 2)
        with pytest.raises(PreconditionViolation):
            construct_f2(4, 1, 0, 2, 2)

    def test_size_mismatch(self):
        t = build_table(D3)
        one = ElementSet.from_indices([0], 6)
        with pytest.raises(SizeMismatch):
            verify_witness(t, WitnessPair(one, one, 1, 1), 2, 1)


def test_progression_any_group():
    for params in (C7xC3, validate_params(8, 2, 0, 3), validate_params(9, 3, 3, 4)):
        t = build_table(params)
        for r in range(1, t.order + 1):
            for s in range(1, t.order + 1):
                assert verify_witness(t, construct_progression(params, r, s), r, s) <= min(r + s - 1, t.order)
