"""Subgroup lattice of a metacyclic group.

Subgroups are parameterised by triples ``(k, l, beta)``: ``k`` is the order,
``l`` the order of the intersection with ``<a>``, and the subgroup is
generated by ``a^(m/l)`` and ``a^beta b^(n_exp*l/k)``.  Every subgroup arises
from exactly one admissible triple.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    ClosureMismatch,
    IsomorphismCheckFailed,
    LagrangeConverseViolation,
    NotADivisor,
    NotNormal,
    TooLarge,
)
from .presentation import (
    ElementSet,
    GroupElement,
    GroupTable,
    PresentationParams,
    build_table,
    iter_bits,
    kmn_params,
    mul,
    power,
    validate_params,
)


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def v2(x: int) -> int:
    """2-adic valuation of a positive integer."""
    if x < 1:
        raise ValueError(f"v2 needs a positive integer, got {x}")
    return (x & -x).bit_length() - 1


@dataclass(frozen=True, order=True)
class SubgroupDescriptor:
    k: int
    l: int
    beta: int


@dataclass(frozen=True)
class Subgroup:
    descriptor: SubgroupDescriptor
    elements: ElementSet
    is_normal: bool
    generators: tuple[GroupElement, GroupElement]


@dataclass(frozen=True)
class QuotientMap:
    """Concrete projection onto a quotient presentation.

    ``images[x]`` is the index, in the quotient's own table, of the image of
    element ``x``.
    """

    params: PresentationParams
    kernel: SubgroupDescriptor
    quotient: PresentationParams
    images: tuple[int, ...]

    def preimage_bits(self, bits: int) -> int:
        out = 0
        for x, y in enumerate(self.images):
            if bits >> y & 1:
                out |= 1 << x
        return out


def _gamma_sum(params: PresentationParams, k: int, l: int) -> int:
    modulus = params.m // l
    step = params.n_exp * l // k
    return sum(pow(params.h, step * j, modulus) for j in range(k // l)) % modulus


def in_gamma(params: PresentationParams, d: SubgroupDescriptor) -> bool:
    m, n = params.m, params.n_exp
    k, l, beta = d.k, d.l, d.beta
    if k < 1 or l < 1 or m % l or k % l or (n * l) % k:
        return False
    modulus = m // l
    if not 0 <= beta < modulus:
        return False
    return (beta * _gamma_sum(params, k, l) + params.g) % modulus == 0


@lru_cache(maxsize=1024)
def _gamma(params: PresentationParams) -> tuple[SubgroupDescriptor, ...]:
    m, n = params.m, params.n_exp
    found = []
    for l in divisors(m):
        modulus = m // l
        for k in divisors(n * l):
            if k % l:
                continue
            total = _gamma_sum(params, k, l)
            for beta in range(modulus):
                if (beta * total + params.g) % modulus == 0:
                    found.append(SubgroupDescriptor(k, l, beta))
    return tuple(sorted(found))


def enumerate_gamma(params: PresentationParams) -> list[SubgroupDescriptor]:
    """All admissible triples, in lexicographic ``(k, l, beta)`` order."""
    return list(_gamma(params))


def descriptor_generators(
    params: PresentationParams, d: SubgroupDescriptor
) -> tuple[GroupElement, GroupElement]:
    m, n = params.m, params.n_exp
    first = GroupElement((m // d.l) % m, 0)
    j = n * d.l // d.k
    if j == n:
        # b^n_exp = a^g
        second = GroupElement((d.beta + params.g) % m, 0)
    else:
        second = GroupElement(d.beta % m, j)
    return first, second


def closure(table: GroupTable, generators) -> int:
    """Bits of the subgroup generated by the given element indices."""
    gens = [x for x in dict.fromkeys(generators) if x != 0]
    rows = table.left_rows
    bits = 1
    queue = deque([0])
    while queue:
        x = queue.popleft()
        row = rows[x]
        for y in gens:
            z = row[y]
            if not bits >> z & 1:
                bits |= 1 << z
                queue.append(z)
    return bits


def is_normal_descriptor(params: PresentationParams, d: SubgroupDescriptor) -> bool:
    modulus = params.m // d.l
    return (d.beta * (params.h - 1)) % modulus == 0 and pow(
        params.h, params.n_exp * d.l // d.k, modulus
    ) == 1 % modulus


@lru_cache(maxsize=8192)
def psi(params: PresentationParams, d: SubgroupDescriptor) -> Subgroup:
    table = build_table(params)
    gens = descriptor_generators(params, d)
    bits = closure(table, [table.index(x) for x in gens])
    size = bits.bit_count()
    meet = (bits & table.a_subgroup_bits()).bit_count()
    if size != d.k or meet != d.l:
        raise ClosureMismatch(
            f"{params}: descriptor {d} generates {size} elements "
            f"({meet} in <a>), expected {d.k} ({d.l})"
        )
    return Subgroup(d, ElementSet(bits, table.order), is_normal_descriptor(params, d), gens)


def is_normal_by_conjugation(table: GroupTable, bits: int) -> bool:
    """Test ``x H x^-1 == H`` for every x; independent of the triple criterion."""
    members = list(iter_bits(bits))
    rows, inverse = table.left_rows, table.inverse
    for x in range(table.order):
        xi = inverse[x]
        for y in members:
            if not bits >> rows[rows[x][y]][xi] & 1:
                return False
    return True


@lru_cache(maxsize=4096)
def quotient_map(params: PresentationParams, d: SubgroupDescriptor) -> QuotientMap:
    """Project onto the presentation of ``G / psi(d)`` and check the result."""
    if not is_normal_descriptor(params, d):
        raise NotNormal(f"{d} is not normal in {params}")
    modulus = params.m // d.l
    quotient = validate_params(
        modulus,
        params.n_exp * d.l // d.k,
        (-d.beta) % modulus,
        params.h % modulus,
    )
    qt = build_table(quotient)
    x = GroupElement(1 % quotient.m, 0)
    y = GroupElement(0, 1 % quotient.n_exp) if quotient.n_exp > 1 else GroupElement(quotient.g, 0)

    # relations of G must hold for the images of a and b
    if power(quotient, x, params.m) != (0, 0):
        raise IsomorphismCheckFailed(f"{quotient}: image of a^m is not trivial")
    if power(quotient, y, params.n_exp) != power(quotient, x, params.g):
        raise IsomorphismCheckFailed(f"{quotient}: image of b^n_exp differs from a^g")
    conj = mul(quotient, mul(quotient, y, x), power(quotient, y, -1))
    if conj != power(quotient, x, params.h):
        raise IsomorphismCheckFailed(f"{quotient}: image of b a b^-1 differs from a^h")

    x_pows = [qt.index(power(quotient, x, i)) for i in range(params.m)]
    y_pows = [qt.index(power(quotient, y, j)) for j in range(params.n_exp)]
    table = build_table(params)
    images = tuple(qt.left_rows[x_pows[e.i]][y_pows[e.j]] for e in table.elements)

    kernel = sum(1 << k for k, img in enumerate(images) if img == 0)
    if kernel != psi(params, d).elements.bits:
        raise IsomorphismCheckFailed(f"{params}: kernel of projection is not psi{d}")
    if len(set(images)) != qt.order or qt.order * d.k != params.order:
        raise IsomorphismCheckFailed(f"{params}: projection onto {quotient} is not onto")
    return QuotientMap(params, d, quotient, images)


def quotient_params(params: PresentationParams, d: SubgroupDescriptor) -> PresentationParams:
    return quotient_map(params, d).quotient


@lru_cache(maxsize=1024)
def _normal_orders(params: PresentationParams) -> frozenset[int]:
    return frozenset(d.k for d in _gamma(params) if is_normal_descriptor(params, d))


@lru_cache(maxsize=1024)
def _subgroup_orders(params: PresentationParams) -> frozenset[int]:
    orders = frozenset(d.k for d in _gamma(params))
    if orders != frozenset(divisors(params.order)):
        raise LagrangeConverseViolation(
            f"{params}: subgroup orders {sorted(orders)} differ from divisors of {params.order}"
        )
    return orders


def normal_orders(params: PresentationParams) -> set[int]:
    return set(_normal_orders(params))


def subgroup_orders(params: PresentationParams) -> set[int]:
    return set(_subgroup_orders(params))


@lru_cache(maxsize=1024)
def normal_descriptors(params: PresentationParams) -> tuple[SubgroupDescriptor, ...]:
    return tuple(d for d in _gamma(params) if is_normal_descriptor(params, d))


def least_normal_descriptor(params: PresentationParams, k: int) -> SubgroupDescriptor:
    for d in normal_descriptors(params):
        if d.k == k:
            return d
    raise NotNormal(f"{params} has no normal subgroup of order {k}")


def kmn_normal_order(m: int, n: int, g: int, k: int) -> bool:
    """Whether K_{m,n} has a normal subgroup of order ``k``.

    Closed form: ``m | k`` or ``v2(k) < v2(2mn)``.
    """
    kmn_params(m, n, g)
    order = 2 * m * n
    if k < 1 or order % k:
        raise NotADivisor(f"{k} does not divide {order}")
    return k % m == 0 or v2(k) < v2(order)


def brute_force_subgroups(table: GroupTable, max_order: int = 64) -> list[ElementSet]:
    """All subgroups, found by closing cyclic subgroups under joins.

    Makes no use of the triple parameterisation; serves as its oracle.
    """
    if table.order > max_order:
        raise TooLarge(f"order {table.order} exceeds brute-force limit {max_order}")
    cyclic: dict[int, int] = {}
    for x in range(table.order):
        cyclic.setdefault(closure(table, [x]), x)
    gens: dict[int, tuple[int, ...]] = {bits: (x,) for bits, x in cyclic.items()}
    frontier = list(gens)
    while frontier:
        fresh = []
        for bits in frontier:
            for cbits, x in cyclic.items():
                if cbits & ~bits == 0:
                    continue
                joined = closure(table, gens[bits] + (x,))
                if joined not in gens:
                    gens[joined] = gens[bits] + (x,)
                    fresh.append(joined)
        frontier = fresh
    return [ElementSet(b, table.order) for b in sorted(gens, key=lambda b: (b.bit_count(), b))]
