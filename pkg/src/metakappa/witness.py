"""Explicit set pairs whose product set meets the kappa bound.

For K_{m,n} (and the cyclic and abelian groups met on the way down through
quotients) :func:`construct_witness` returns ``(A, B)`` with ``|A| = r``,
``|B| = s`` and ``|AB| <= kappa(r, s)``.  Since ``kappa`` is also a lower
bound for these groups, every verified witness pins down ``mu`` exactly.

Building blocks:

* a two-level progression (whole cosets of ``<a>`` followed by a run of
  ``a``-powers) giving ``|AB| <= r + s - 1`` in any metacyclic group;
* lifting a witness through a normal subgroup of order ``k``, which
  multiplies the product size by ``k``;
* for m, n odd, the doubled coset-segment pair attaining
  ``f_2(r, s) = r + s - 2`` although no normal subgroup of order 2 exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .bounds import check_query, f_h, kappa, min_f
from .errors import (
    ConstructionFailed,
    PreconditionViolation,
    RangeViolation,
    SizeMismatch,
    UnsupportedGroup,
)
from .lattice import (
    SubgroupDescriptor,
    divisors,
    least_normal_descriptor,
    normal_orders,
    quotient_map,
)
from .presentation import (
    ElementSet,
    GroupTable,
    PresentationParams,
    build_table,
    cyclic_params,
    iter_bits,
    kmn_params,
)


@dataclass(frozen=True)
class WitnessPair:
    A: ElementSet
    B: ElementSet
    product_size: int
    certificate_h: int
    construction_trace: tuple[str, ...] = field(default=(), compare=False)

    def transposed(self, table: GroupTable) -> "WitnessPair":
        """``(B^-1, A^-1)``: same product size, sizes swapped."""
        return WitnessPair(
            ElementSet(table.inverse_bits(self.B.bits), table.order),
            ElementSet(table.inverse_bits(self.A.bits), table.order),
            self.product_size,
            self.certificate_h,
            self.construction_trace + ("transpose (A, B) -> (B^-1, A^-1)",),
        )


@dataclass(frozen=True)
class SegmentPlan:
    r1: int
    s1: int
    p: int
    q: int
    x: int
    y: int


@dataclass(frozen=True)
class LiftPlan:
    descriptor: SubgroupDescriptor
    w: int
    z: int
    quotient_params: PresentationParams


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _row(m: int, j: int) -> int:
    return ((1 << m) - 1) << (j * m)


def _pair(table: GroupTable, a_bits: int, b_bits: int, h: int, trace) -> WitnessPair:
    size = table.product_bits(a_bits, b_bits).bit_count()
    return WitnessPair(
        ElementSet(a_bits, table.order), ElementSet(b_bits, table.order), size, h, tuple(trace)
    )


def verify_witness(table: GroupTable, pair: WitnessPair, r: int, s: int) -> int:
    """Exact ``|A B|``, recomputed from the table."""
    if len(pair.A) != r or len(pair.B) != s:
        raise SizeMismatch(f"witness has sizes ({len(pair.A)}, {len(pair.B)}), expected ({r}, {s})")
    if pair.A.bits >> table.order or pair.B.bits >> table.order:
        raise SizeMismatch("witness contains indices outside the group")
    return table.product_bits(pair.A.bits, pair.B.bits).bit_count()


def _require_kmn(params: PresentationParams) -> int:
    if params.n_exp % 2 or params.h != (params.m - 1) % params.m:
        raise UnsupportedGroup(f"{params} is not a K_{{m,n}} presentation")
    return params.n_exp // 2


def build_segments(params: PresentationParams, q: int) -> ElementSet:
    """Union of the first ``q`` cosets ``b^(2i) <a>`` of K_{m,n}."""
    n = _require_kmn(params)
    if not 0 <= q <= n:
        raise RangeViolation(f"segment count {q} outside [0, {n}]")
    bits = 0
    for i in range(q):
        bits |= _row(params.m, 2 * i)
    return ElementSet(bits, params.order)


def build_kx(params: PresentationParams, x: int) -> ElementSet:
    """``{1, a, ..., a^(x-1)}``; empty when ``x <= 0``."""
    if x > params.m:
        raise RangeViolation(f"run length {x} exceeds m={params.m}")
    return ElementSet((1 << max(x, 0)) - 1, params.order)


def plan_segments(m: int, r: int, s: int) -> SegmentPlan:
    r1, s1 = r // 2, s // 2
    p, x = divmod(r1, m)
    q, y = divmod(s1, m)
    return SegmentPlan(r1, s1, p, q, x, y)


def construct_progression(params: PresentationParams, r: int, s: int) -> WitnessPair:
    """``|AB| <= r + s - 1`` in any metacyclic group.

    ``A`` is ``p`` whole cosets ``b^j <a>`` followed by ``b^p {1, a, ..., a^(x-1)}``,
    ``B`` is ``q`` whole cosets followed by ``{1, ..., a^(y-1)} b^q``.
    """
    table = build_table(params)
    check_query(table.order, r, s)
    m = params.m
    p, x = divmod(r, m)
    q, y = divmod(s, m)
    a_bits = sum(_row(m, j) for j in range(p))
    coeff = pow(params.h, p, m)
    for i in range(x):
        a_bits |= 1 << (p * m + (i * coeff) % m)
    b_bits = sum(_row(m, j) for j in range(q))
    for i in range(y):
        b_bits |= 1 << (q * m + i)
    pair = _pair(table, a_bits, b_bits, 1, [f"progression r={r}={p}*{m}+{x}, s={s}={q}*{m}+{y}"])
    if pair.product_size > r + s - 1:
        raise ConstructionFailed(f"{params} progression ({r}, {s}) gave {pair.product_size}")
    return pair


def construct_cyclic(N: int, r: int, s: int) -> WitnessPair:
    """Coset runs of the subgroup of order h (the kappa argmin) in Z_N."""
    params = cyclic_params(N)
    table = build_table(params)
    check_query(N, r, s)
    value, h = min_f(divisors(N), r, s)
    step = N // h

    def runs(size: int) -> int:
        full, rest = divmod(size, h)
        count = full if rest == 0 else full + 1
        last = h if rest == 0 else rest
        bits = 0
        for c in range(count):
            for i in range(h if c < count - 1 else last):
                bits |= 1 << (c + step * i)
        return bits

    pair = _pair(table, runs(r), runs(s), h, [f"cyclic Z_{N} runs of cosets of order {h}"])
    if pair.product_size > value:
        raise ConstructionFailed(f"Z_{N} ({r}, {s}) gave {pair.product_size} > {value}")
    return pair


def construct_lift(
    params: PresentationParams,
    descriptor: SubgroupDescriptor,
    quotient_witness: WitnessPair,
    r: int,
    s: int,
    certificate_h: int | None = None,
) -> WitnessPair:
    """Pull a quotient witness back to full cosets, then trim to sizes ``(r, s)``."""
    qmap = quotient_map(params, descriptor)
    table = build_table(params)
    k = descriptor.k
    s_bits = qmap.preimage_bits(quotient_witness.A.bits)
    t_bits = qmap.preimage_bits(quotient_witness.B.bits)
    if s_bits.bit_count() < r or t_bits.bit_count() < s:
        raise SizeMismatch(
            f"lifted sets have {s_bits.bit_count()}, {t_bits.bit_count()} elements; need {r}, {s}"
        )
    st = table.product_bits(s_bits, t_bits).bit_count()
    assert st == k * quotient_witness.product_size, (st, k, quotient_witness.product_size)

    def trim(bits: int, size: int) -> int:
        # keep whole cosets in quotient-index order; the last one is cut short
        ordered = sorted(iter_bits(bits), key=lambda x: (qmap.images[x], x))
        return sum(1 << x for x in ordered[:size])

    trace = quotient_witness.construction_trace + (
        f"lift through normal {descriptor} onto {qmap.quotient}: |ST| = {k}*{quotient_witness.product_size}",
    )
    h = certificate_h if certificate_h is not None else k * quotient_witness.certificate_h
    return _pair(table, trim(s_bits, r), trim(t_bits, s), h, trace)


def construct_f2(m: int, n: int, g: int, r: int, s: int, strict: bool = True) -> WitnessPair:
    """``|AB| <= r + s - 2`` in K_{m,n} for m, n odd and r, s even.

    Half-size sets ``A'``, ``B'`` live in the abelian subgroup ``<a, b^2>`` and
    are doubled by ``b^n``, an involution that inverts ``a``.  With ``strict``
    the call is refused unless ``f_2`` is the kappa value; the construction
    itself reaches ``f_2`` either way.
    """
    params = kmn_params(m, n, g)
    if m % 2 == 0 or n % 2 == 0:
        raise PreconditionViolation(f"construct_f2 needs m, n odd, got m={m}, n={n}")
    if r % 2 or s % 2:
        raise PreconditionViolation(f"construct_f2 needs r, s even, got ({r}, {s})")
    profile = kappa(params, r, s)
    f2 = f_h(2, r, s)
    if strict and profile.kappa != f2:
        raise PreconditionViolation(f"kappa({r}, {s}) = {profile.kappa} differs from f_2 = {f2}")
    table = build_table(params)
    plan = plan_segments(m, r, s)
    if plan.p > plan.q:
        return construct_f2(m, n, g, s, r, strict).transposed(table)

    p, q, x, y = plan.p, plan.q, plan.x, plan.y

    def segments(count: int, first: int = 0) -> int:
        return sum(_row(m, 2 * ((first + i) % n)) for i in range(count))

    if p == q and p < n:
        a_half = segments(p, 1) | (1 << x) - 1
        b_half = segments(p, 1) | (1 << y) - 1
        case = f"p=q={p}: A'=I(p)b^2+K_{x}, B'=I(p)b^2+K_{y}"
    else:
        a_half = segments(p) | (((1 << x) - 1) << (2 * (p % n) * m) if x else 0)
        b_half = segments(q) | (((1 << y) - 1) << (2 * (q % n) * m) if y else 0)
        case = f"p={p}<=q={q}: A'=I(p)+b^(2p)K_{x}, B'=I(q)+K_{y}b^(2q)"

    b_n = n * m
    candidates = [((y - 1) % m, "a^(y-1) b^n")]
    if x != y:
        candidates.append(((x - 1) % m, "a^(x-1) b^n"))
    for shift, label in candidates:
        u = b_n + shift
        a_bits = a_half | table.right_translate(a_half, u)
        b_bits = b_half | table.right_translate(b_half, b_n)
        trace = [
            f"f2 segments {plan}",
            case,
            f"double: A = A' + A' {label}, B = B' + B' b^n",
        ]
        pair = _pair(table, a_bits, b_bits, 2, trace)
        if len(pair.A) == r and len(pair.B) == s and pair.product_size <= f2:
            return pair
    raise ConstructionFailed(f"K_({m},{n}) g={g}: f2 construction missed bound for ({r}, {s})")


def _family(params: PresentationParams) -> str:
    if params.is_abelian:
        return "abelian"
    if params.n_exp % 2 == 0 and params.h == params.m - 1:
        return "kmn"
    raise UnsupportedGroup(f"{params} is neither abelian nor of the form K_{{m,n}}")


def construct_witness(params: PresentationParams, r: int, s: int) -> WitnessPair:
    """Witness with ``|AB| <= kappa(r, s)`` for K_{m,n} and abelian presentations."""
    return _construct_witness(params, r, s)


@lru_cache(maxsize=1 << 16)
def _construct_witness(params: PresentationParams, r: int, s: int) -> WitnessPair:
    family = _family(params)
    profile = kappa(params, r, s)
    h = profile.kappa_argmin_h

    if h == 1:
        pair = construct_progression(params, r, s)
    elif family == "abelian" or h in normal_orders(params):
        d = least_normal_descriptor(params, h)
        quotient = quotient_map(params, d).quotient
        _check_measure(params, quotient)
        inner = _construct_witness(quotient, _ceil_div(r, h), _ceil_div(s, h))
        pair = construct_lift(params, d, inner, r, s, certificate_h=h)
    elif h == 2:
        pair = construct_f2(params.m, params.n_exp // 2, params.g, r, s)
    else:
        k = h // 2
        d = least_normal_descriptor(params, k)
        qmap = quotient_map(params, d)
        plan = LiftPlan(d, _ceil_div(r, h), _ceil_div(s, h), qmap.quotient)
        _check_measure(params, plan.quotient_params)
        inner = _construct_witness(plan.quotient_params, 2 * plan.w, 2 * plan.z)
        if inner.product_size > f_h(2, 2 * plan.w, 2 * plan.z):
            raise ConstructionFailed(f"quotient witness for {plan} exceeds f_2")
        pair = construct_lift(params, d, inner, r, s, certificate_h=h)

    table = build_table(params)
    size = verify_witness(table, pair, r, s)
    if size != pair.product_size or size > profile.kappa:
        raise ConstructionFailed(
            f"{params} ({r}, {s}): witness product {size} exceeds kappa {profile.kappa}"
        )
    return pair


def _check_measure(params: PresentationParams, quotient: PresentationParams) -> None:
    if quotient.m + quotient.n_exp >= params.m + params.n_exp:
        raise ConstructionFailed(f"recursion from {params} to {quotient} does not shrink")


def construct_nkappa(params: PresentationParams, r: int, s: int) -> WitnessPair:
    """Witness with ``|AB| <= nkappa(r, s)`` in any metacyclic group."""
    profile = kappa(params, r, s)
    h = profile.nkappa_argmin_h
    if h == 1:
        pair = construct_progression(params, r, s)
    else:
        d = least_normal_descriptor(params, h)
        quotient = quotient_map(params, d).quotient
        inner = construct_progression(quotient, _ceil_div(r, h), _ceil_div(s, h))
        pair = construct_lift(params, d, inner, r, s, certificate_h=h)
    if pair.product_size > profile.nkappa:
        raise ConstructionFailed(f"{params} ({r}, {s}): normal lift exceeds nkappa")
    return pair
