"""Exact minimal product set sizes by branch and bound.

The decision problem "is there ``|A| = r``, ``|B| = s`` with ``|AB| <= t``"
is solved for increasing ``t`` starting at a valid lower bound.  Two
reductions keep the tree small:

* ``|g phi(A) c . c^-1 phi(B) k| = |AB|`` for group elements ``g, c, k`` and
  automorphisms ``phi``, so ``A`` ranges over one representative per orbit
  of r-subsets under ``x -> phi(x) c`` (each representative contains the
  identity) and ``B`` may be assumed to contain the identity;
* with ``A`` fixed, ``B`` is grown by a depth-first search over right
  translates ``A b`` held as bit masks, discarding translates that would push
  the union past ``t``.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from .bounds import check_query, dkappa, f_h
from .errors import UnsupportedGroup
from .lattice import divisors
from .presentation import ElementSet, GroupTable
from .witness import WitnessPair, construct_nkappa, construct_witness, verify_witness

OPTIMAL = "optimal"
UPPER_BOUND_ONLY = "upper_bound_only"

# numpy masks are int64
_CANON_MAX_ORDER = 62


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 10**9
    max_time: float = 1800.0
    lower_bound_mode: str = "dkappa"

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_time <= 0:
            raise ValueError("budget limits must be positive")
        if self.lower_bound_mode not in ("dkappa", "trivial"):
            raise ValueError(f"unknown lower_bound_mode {self.lower_bound_mode!r}")


@dataclass(frozen=True)
class SearchResult:
    value: int
    witness: WitnessPair
    status: str
    nodes_explored: int
    elapsed: float


class _Exhausted(Exception):
    pass


class _Counter:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.start = time.perf_counter()

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes >= self.budget.max_nodes:
            raise _Exhausted
        if not self.nodes & 0xFFF and time.perf_counter() - self.start > self.budget.max_time:
            raise _Exhausted

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start


def automorphisms(table: GroupTable) -> list[tuple[int, ...]]:
    """Automorphisms as index permutations, via images of the generators."""
    return list(_automorphisms(table))


@lru_cache(maxsize=64)
def _automorphisms(table: GroupTable) -> tuple[tuple[int, ...], ...]:
    m, n, g, h = table.params.key
    rows, order = table.left_rows, table.order

    def powers(x: int, e: int) -> list[int]:
        out = [0]
        for _ in range(e):
            out.append(rows[out[-1]][x])
        return out

    found = []
    for x in range(order):
        xp = powers(x, m)
        if xp[m] != 0:
            continue
        for y in range(order):
            yp = powers(y, n)
            if yp[n] != xp[g]:
                continue
            if rows[rows[y][x]][table.inverse[y]] != xp[h % m]:
                continue
            image = tuple(rows[xp[e.i]][yp[e.j]] for e in table.elements)
            if len(set(image)) == order:
                found.append(image)
    return tuple(found)


@lru_cache(maxsize=64)
def _symmetry_array(table: GroupTable) -> np.ndarray:
    perms = set()
    rows = table.left_rows
    for phi in _automorphisms(table):
        for c in range(table.order):
            perms.add(tuple(rows[phi[x]][c] for x in range(table.order)))
    return np.array(sorted(perms), dtype=np.int64)


def subset_orbit_representatives(table: GroupTable, r: int) -> Iterator[int]:
    """Yield one r-subset (as bits) per orbit under ``x -> phi(x) c``.

    The representative is the orbit member whose sorted index tuple is
    lexicographically least; it always contains the identity (index 0).
    """
    order = table.order
    combos = itertools.combinations(range(1, order), r - 1)
    if order > _CANON_MAX_ORDER:
        for c in combos:
            yield sum(1 << x for x in c) | 1
        return
    # bit order - 1 - x stands for element x, so the lexicographically least
    # tuple is the numerically largest mask
    flipped = order - 1 - _symmetry_array(table)
    chunk = max(1, 4_000_000 // (len(flipped) * r))
    one = np.int64(1)
    while True:
        block = list(itertools.islice(combos, chunk))
        if not block:
            return
        idx = np.zeros((len(block), r), dtype=np.int64)
        if r > 1:
            idx[:, 1:] = np.array(block, dtype=np.int64).reshape(len(block), r - 1)
        own = np.bitwise_or.reduce(one << (order - 1 - idx), axis=1)
        images = np.bitwise_or.reduce(one << flipped[:, idx], axis=2)
        keep = images.max(axis=0) == own
        for row in idx[keep]:
            yield sum(1 << int(x) for x in row)


def _search_b(cols: list[int], s: int, t: int, counter: _Counter) -> Optional[list[int]]:
    """Find ``B`` containing the identity with ``|B| = s`` and ``|A B| <= t``.

    ``cols[b]`` holds the bits of ``A b``.  Two dominance rules are used:
    translates already inside the running union are taken for free, and a
    branch is abandoned once an element excluded earlier becomes free, since
    swapping it in reproduces a branch already searched.
    """

    def dfs(union: int, need: int, cand: list[int], excluded: list[int]):
        counter.tick()
        if need == 0:
            return []
        for e in excluded:
            if not cols[e] & ~union:
                return None
        room = t - union.bit_count()
        free, keep = [], []
        for b in cand:
            inc = (cols[b] & ~union).bit_count()
            if inc == 0:
                free.append(b)
            elif inc <= room:
                keep.append((inc, b))
        if len(free) >= need:
            return free[:need]
        need -= len(free)
        if len(keep) < need:
            return None
        keep.sort()
        later = [b for _, b in keep]
        skipped = list(excluded)
        for pos in range(len(later) - need + 1):
            b = later[pos]
            found = dfs(union | cols[b], need - 1, later[pos + 1 :], skipped)
            if found is not None:
                return free + [b] + found
            skipped.append(b)
        return None

    found = dfs(cols[0], s - 1, list(range(1, len(cols))), [])
    return None if found is None else [0] + found


def _decide(table: GroupTable, r: int, s: int, t: int, counter: _Counter) -> Optional[tuple[int, int]]:
    """A pair ``(A, B)`` of bit masks with ``|AB| <= t``, or None if none exists."""
    if r > s:
        found = _decide(table, s, r, t, counter)
        if found is None:
            return None
        a_bits, b_bits = found
        return table.inverse_bits(b_bits), table.inverse_bits(a_bits)
    order = table.order
    if t >= order:
        return (1 << r) - 1, (1 << s) - 1
    if max(r, s) > t:
        return None
    for a_bits in subset_orbit_representatives(table, r):
        counter.tick()
        cols = [table.right_translate(a_bits, b) for b in range(order)]
        found = _search_b(cols, s, t, counter)
        if found is not None:
            return a_bits, sum(1 << b for b in found)
    return None


def _certificate(order: int, r: int, s: int, size: int) -> int:
    """Smallest-value divisor bound that covers ``size``."""
    best = None
    for h in divisors(order):
        v = f_h(h, r, s)
        if v >= size and (best is None or v < best[0]):
            best = (v, h)
    return best[1]


def _incumbent(table: GroupTable, r: int, s: int, seed: bool) -> WitnessPair:
    if seed:
        try:
            return construct_witness(table.params, r, s)
        except UnsupportedGroup:
            return construct_nkappa(table.params, r, s)
    a_bits, b_bits = (1 << r) - 1, (1 << s) - 1
    size = table.product_bits(a_bits, b_bits).bit_count()
    return WitnessPair(
        ElementSet(a_bits, table.order),
        ElementSet(b_bits, table.order),
        size,
        _certificate(table.order, r, s, size),
        ("initial segments",),
    )


def lower_bound(table: GroupTable, r: int, s: int, mode: str) -> int:
    bound = max(r, s)
    if mode == "dkappa":
        bound = max(bound, dkappa(table.order, r, s))
    return bound


def exact_mu(
    table: GroupTable,
    r: int,
    s: int,
    budget: Optional[SearchBudget] = None,
    *,
    seed: bool = True,
    known_lower: int = 0,
) -> SearchResult:
    """Minimum of ``|AB|`` over ``|A| = r``, ``|B| = s``.

    ``seed`` starts from the constructive witness (or the normal-subgroup lift
    for groups outside the K_{m,n} family).  ``known_lower`` lets callers pass
    a bound they have already proved, e.g. from a neighbouring cell.
    """
    check_query(table.order, r, s)
    budget = budget or SearchBudget()
    counter = _Counter(budget)
    best = _incumbent(table, r, s, seed)
    if verify_witness(table, best, r, s) != best.product_size:
        raise AssertionError("incumbent witness does not verify")
    lb = max(lower_bound(table, r, s, budget.lower_bound_mode), known_lower)

    t = lb
    try:
        while t < best.product_size:
            found = _decide(table, r, s, t, counter)
            if found is not None:
                a_bits, b_bits = found
                size = table.product_bits(a_bits, b_bits).bit_count()
                best = WitnessPair(
                    ElementSet(a_bits, table.order),
                    ElementSet(b_bits, table.order),
                    size,
                    _certificate(table.order, r, s, size),
                    ("branch and bound",),
                )
                break
            t += 1
    except _Exhausted:
        return SearchResult(best.product_size, best, UPPER_BOUND_ONLY, counter.nodes, counter.elapsed)
    return SearchResult(best.product_size, best, OPTIMAL, counter.nodes, counter.elapsed)


def mu_exceeds(
    table: GroupTable, r: int, s: int, t: int, budget: Optional[SearchBudget] = None
) -> Optional[bool]:
    """True if no pair reaches ``|AB| <= t``; False if one does; None if out of budget."""
    check_query(table.order, r, s)
    counter = _Counter(budget or SearchBudget())
    try:
        return _decide(table, r, s, t, counter) is None
    except _Exhausted:
        return None


def mu_table(
    table: GroupTable, budget: Optional[SearchBudget] = None, *, seed: bool = True
) -> dict[tuple[int, int], SearchResult]:
    """Every cell ``(r, s)``; only ``r <= s`` is searched, the rest is transposed."""
    grid: dict[tuple[int, int], SearchResult] = {}
    n = table.order
    for r in range(1, n + 1):
        for s in range(r, n + 1):
            known = 0
            for prev in ((r - 1, s), (r, s - 1)):
                cell = grid.get(prev) if min(prev) >= 1 else None
                if cell is not None and cell.status == OPTIMAL:
                    known = max(known, cell.value)
            res = exact_mu(table, r, s, budget, seed=seed, known_lower=known)
            grid[(r, s)] = res
            if s != r:
                grid[(s, r)] = SearchResult(
                    res.value, res.witness.transposed(table), res.status, 0, 0.0
                )
    return grid


def brute_force_mu_grid(table: GroupTable, max_order: int = 12) -> np.ndarray:
    """``mu`` for every ``(r, s)`` by evaluating all pairs of subsets.

    No normalisation and no pruning; returns an ``(n+1, n+1)`` array whose
    row and column 0 are unused.
    """
    n = table.order
    if n > max_order:
        raise ValueError(f"order {n} too large for exhaustive enumeration (max {max_order})")
    size = 1 << n
    subsets = np.arange(size, dtype=np.int64)
    popcount = np.zeros(size, dtype=np.int64)
    for x in range(n):
        popcount += (subsets >> x) & 1
    translate = np.zeros((n, size), dtype=np.int64)
    for a in range(n):
        for x in range(n):
            translate[a] |= ((subsets >> x) & 1) << table.left_rows[a][x]
    by_size = np.argsort(popcount, kind="stable")
    starts = np.searchsorted(popcount[by_size], np.arange(n + 1))

    grid = np.full((n + 1, n + 1), n + 1, dtype=np.int64)

    def extend(count: int, prod: np.ndarray, start: int) -> None:
        for x in range(start, n):
            child = prod | translate[x]
            row = np.minimum.reduceat(popcount[child][by_size], starts)
            grid[count + 1] = np.minimum(grid[count + 1], row)
            extend(count + 1, child, x + 1)

    extend(0, np.zeros(size, dtype=np.int64), 0)
    grid[0, :] = 0
    grid[:, 0] = 0
    return grid
