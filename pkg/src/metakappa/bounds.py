"""Arithmetic bounds for the minimal product set size.

``f_h(r, s) = ceil_h(r) + ceil_h(s) - h`` is the size of a product of two
unions of cosets of a subgroup of order ``h``.  Minimising it over subgroup
orders gives kappa, over all divisors of |G| gives dkappa, and over normal
subgroup orders gives nkappa.  For solvable groups
``dkappa <= mu <= nkappa``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InvalidQuery
from .lattice import divisors, normal_orders, subgroup_orders
from .presentation import PresentationParams


def ceil_mult(r: int, h: int) -> int:
    """Least multiple of ``h`` that is at least ``r``."""
    return -(-r // h) * h


def f_h(h: int, r: int, s: int) -> int:
    value = ceil_mult(r, h) + ceil_mult(s, h) - h
    assert value == h * (-(-r // h) + -(-s // h) - 1)
    return value


def min_f(orders: Iterable[int], r: int, s: int) -> tuple[int, int]:
    """Minimum of ``f_h`` over ``orders`` and the smallest ``h`` attaining it."""
    best = None
    for h in sorted(orders):
        v = f_h(h, r, s)
        if best is None or v < best[0]:
            best = (v, h)
    if best is None:
        raise ValueError("empty order set")
    return best


def dkappa(order: int, r: int, s: int) -> int:
    return min_f(divisors(order), r, s)[0]


@dataclass(frozen=True)
class SizeQuery:
    r: int
    s: int


@dataclass(frozen=True)
class BoundsProfile:
    query: SizeQuery
    kappa: int
    dkappa: int
    nkappa: int
    kappa_argmin_h: int
    nkappa_argmin_h: int


def check_query(order: int, r: int, s: int) -> SizeQuery:
    if not (1 <= r <= order and 1 <= s <= order):
        raise InvalidQuery(f"(r, s) = ({r}, {s}) outside [1, {order}]")
    return SizeQuery(r, s)


def kappa(params: PresentationParams, r: int, s: int) -> BoundsProfile:
    query = check_query(params.order, r, s)
    k, kh = min_f(subgroup_orders(params), r, s)
    dk, _ = min_f(divisors(params.order), r, s)
    nk, nh = min_f(normal_orders(params), r, s)
    # metacyclic groups have subgroups of every divisor order
    assert k == dk, (params, r, s, k, dk)
    return BoundsProfile(query, k, dk, nk, kh, nh)
