"""Metacyclic presentations and dense element arithmetic.

A presentation is a tuple ``(m, n_exp, g, h)`` standing for the group

    < a, b | a^m = 1, b^n_exp = a^g, b a b^-1 = a^h >

Every element has a unique normal form ``a^i b^j`` with ``0 <= i < m`` and
``0 <= j < n_exp``.  Elements are indexed ``j * m + i`` so that each coset
``b^j <a>`` is a contiguous run of bits in an :class:`ElementSet`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from .errors import CongruenceViolation, InvalidG, NonPositive, RangeViolation, TooLarge

DEFAULT_MAX_ORDER = 256


@dataclass(frozen=True)
class PresentationParams:
    m: int
    n_exp: int
    g: int
    h: int

    @property
    def order(self) -> int:
        return self.m * self.n_exp

    @property
    def is_abelian(self) -> bool:
        return self.h % self.m == 1 % self.m

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.m, self.n_exp, self.g, self.h)

    def __str__(self) -> str:
        return f"({self.m}, {self.n_exp}, {self.g}, {self.h})"


class GroupElement(NamedTuple):
    """Normal form ``a^i b^j``."""

    i: int
    j: int

    def encode(self) -> str:
        return f"{self.i}.{self.j}"


def validate_params(m: int, n_exp: int, g: int, h: int) -> PresentationParams:
    """Check the four defining conditions and return the frozen tuple."""
    for name, value in (("m", m), ("n_exp", n_exp), ("g", g), ("h", h)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise TypeError(f"{name} must be an integer, got {value!r}")
    if m < 1 or n_exp < 1:
        raise NonPositive(f"m and n_exp must be >= 1, got m={m}, n_exp={n_exp}")
    if not 0 <= g < m:
        raise RangeViolation(f"g={g} outside [0, {m})")
    if not 0 <= h < m:
        raise RangeViolation(f"h={h} outside [0, {m})")
    if (g * (h - 1)) % m:
        raise CongruenceViolation(f"g*(h-1) = {g * (h - 1)} is not 0 mod {m}")
    if pow(h, n_exp, m) != 1 % m:
        raise CongruenceViolation(f"h^n_exp = {h}^{n_exp} is not 1 mod {m}")
    return PresentationParams(m, n_exp, g, h)


def kmn_params(m: int, n: int, g: int) -> PresentationParams:
    """Presentation of K_{m,n} = <a, b | a^m = 1, b^(2n) = a^g, b a b^-1 = a^-1>.

    The group has order 2mn.  ``g`` must be 0, or ``m // 2`` when m is even.
    Groups with m <= 2 are abelian; they are returned with ``is_abelian`` set.
    """
    if not isinstance(m, int) or not isinstance(n, int) or m < 1 or n < 1:
        raise NonPositive(f"K_{{m,n}} needs m, n >= 1, got m={m}, n={n}")
    allowed = {0, m // 2} if m % 2 == 0 else {0}
    if g not in allowed:
        raise InvalidG(f"g={g} not in {sorted(allowed)} for m={m}")
    return validate_params(m, 2 * n, g, (m - 1) % m)


def cyclic_params(order: int) -> PresentationParams:
    """The cyclic group of the given order as ``(order, 1, 0, 1)``."""
    return validate_params(order, 1, 0, 1 % order)


def _conj_coeff(params: PresentationParams, j: int) -> int:
    return pow(params.h, j, params.m)


def mul(params: PresentationParams, x: GroupElement, y: GroupElement) -> GroupElement:
    i, j = x
    r, s = y
    m, n = params.m, params.n_exp
    q, js = divmod(j + s, n)
    return GroupElement((i + r * _conj_coeff(params, j) + params.g * q) % m, js)


def identity() -> GroupElement:
    return GroupElement(0, 0)


def inv(params: PresentationParams, x: GroupElement) -> GroupElement:
    i, j = x
    m, n = params.m, params.n_exp
    if j == 0:
        return GroupElement((-i) % m, 0)
    jj = n - j
    # x * (i', jj) = a^(i + i' h^j + g) b^0 must be the identity
    h_inv_j = pow(params.h, n - j, m)
    return GroupElement((-(i + params.g) * h_inv_j) % m, jj)


def power(params: PresentationParams, x: GroupElement, e: int) -> GroupElement:
    if e < 0:
        x, e = inv(params, x), -e
    result = identity()
    while e:
        if e & 1:
            result = mul(params, result, x)
        x = mul(params, x, x)
        e >>= 1
    return result


def element_order(params: PresentationParams, x: GroupElement) -> int:
    t, y = 1, x
    while y != (0, 0):
        y = mul(params, y, x)
        t += 1
    return t


@dataclass(frozen=True)
class ElementSet:
    """Subset of a group of order ``order`` as a bit vector.

    Bit ``k`` is set when the element with index ``k`` belongs to the set.
    """

    bits: int
    order: int

    @classmethod
    def from_indices(cls, indices: Iterable[int], order: int) -> "ElementSet":
        bits = 0
        for k in indices:
            if not 0 <= k < order:
                raise IndexError(f"element index {k} outside [0, {order})")
            bits |= 1 << k
        return cls(bits, order)

    @classmethod
    def empty(cls, order: int) -> "ElementSet":
        return cls(0, order)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __contains__(self, k: object) -> bool:
        return isinstance(k, int) and k >= 0 and bool(self.bits >> k & 1)

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.bits | other.bits, self.order)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.bits & other.bits, self.order)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.bits & ~other.bits, self.order)

    def issubset(self, other: "ElementSet") -> bool:
        return self.bits & ~other.bits == 0

    def indices(self) -> list[int]:
        return list(iter_bits(self.bits))

    def encode(self, table: "GroupTable") -> str:
        """Comma-separated ``i.j`` codes, ascending by element index."""
        return ",".join(table.elements[k].encode() for k in self)


def iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True, eq=False)
class GroupTable:
    """Dense Cayley data for a validated presentation.

    ``left_rows[x][y]`` is the index of ``x * y``.  Index 0 is the identity.
    """

    params: PresentationParams
    order: int
    elements: tuple[GroupElement, ...]
    left_rows: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    _chunks: dict = field(default_factory=dict, repr=False, compare=False)

    identity: int = 0

    def index(self, x: GroupElement) -> int:
        return x.j * self.params.m + x.i

    def mul(self, x: int, y: int) -> int:
        return self.left_rows[x][y]

    def inv(self, x: int) -> int:
        return self.inverse[x]

    def full(self) -> ElementSet:
        return ElementSet((1 << self.order) - 1, self.order)

    def a_subgroup_bits(self) -> int:
        """Bits of the cyclic normal subgroup generated by ``a``."""
        return (1 << self.params.m) - 1

    def _left_chunks(self, x: int) -> list[list[int]]:
        chunks = self._chunks.get(x)
        if chunks is None:
            row = self.left_rows[x]
            chunks = []
            for base in range(0, self.order, 8):
                width = min(8, self.order - base)
                lut = [0] * 256
                for byte in range(1, 1 << width):
                    low = byte & -byte
                    lut[byte] = lut[byte ^ low] | 1 << row[base + low.bit_length() - 1]
                chunks.append(lut)
            self._chunks[x] = chunks
        return chunks

    def left_translate(self, x: int, bits: int) -> int:
        """Bits of ``x * S`` for the set ``S`` given by ``bits``."""
        out = 0
        for lut in self._left_chunks(x):
            if bits & 0xFF:
                out |= lut[bits & 0xFF]
            bits >>= 8
            if not bits:
                break
        return out

    def right_translate(self, bits: int, y: int) -> int:
        """Bits of ``S * y``."""
        out = 0
        rows = self.left_rows
        for k in iter_bits(bits):
            out |= 1 << rows[k][y]
        return out

    def product_bits(self, a_bits: int, b_bits: int) -> int:
        out = 0
        for x in iter_bits(a_bits):
            out |= self.left_translate(x, b_bits)
        return out

    def product(self, a: ElementSet, b: ElementSet) -> ElementSet:
        return ElementSet(self.product_bits(a.bits, b.bits), self.order)

    def inverse_bits(self, bits: int) -> int:
        out = 0
        for k in iter_bits(bits):
            out |= 1 << self.inverse[k]
        return out

    def decode(self, text: str) -> ElementSet:
        """Inverse of :meth:`ElementSet.encode`."""
        idx = []
        for code in filter(None, text.split(",")):
            i, j = (int(v) for v in code.split("."))
            if not (0 <= i < self.params.m and 0 <= j < self.params.n_exp):
                raise ValueError(f"element code {code!r} out of range")
            idx.append(j * self.params.m + i)
        return ElementSet.from_indices(idx, self.order)


def build_table(params: PresentationParams, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    if params.order > max_order:
        raise TooLarge(f"group order {params.order} exceeds maximum {max_order}")
    return _build_table(params)


@lru_cache(maxsize=512)
def _build_table(params: PresentationParams) -> GroupTable:
    m, n = params.m, params.n_exp
    elements = tuple(GroupElement(i, j) for j in range(n) for i in range(m))
    coeff = [pow(params.h, j, m) for j in range(n)]
    rows = []
    for i, j in elements:
        row = []
        for r, s in elements:
            q, js = divmod(j + s, n)
            row.append(js * m + (i + r * coeff[j] + params.g * q) % m)
        rows.append(tuple(row))
    inverse = [0] * len(elements)
    for x, row in enumerate(rows):
        inverse[x] = row.index(0)
    return GroupTable(params, m * n, elements, tuple(rows), tuple(inverse))
