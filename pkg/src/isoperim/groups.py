"""Exact arithmetic and dense-bitset set machinery for finite abelian groups.

A group is described as a direct sum of cyclic factors C_m1 + ... + C_mn.
Every element gets a mixed-radix index in [0, |G|): factor i contributes the
stride m1*...*m_{i-1}, so ``index(g) = sum_i g_i * stride_i`` is a bijection
onto the index range.  Subsets are stored as dense bitmasks over these
indices, which gives O(1) membership and cheap whole-set operations; all of
the exhaustive enumeration in this package rests on that representation.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_MAX_ORDER = 1 << 24
MAX_ORDER_ENV = "ISOPERIM_MAX_GROUP"

# Byte-wise translation tables pay off only while they fit comfortably in memory.
_BYTE_TABLE_LIMIT = 1 << 12


class SpecMismatchError(ValueError):
    """Operands belong to different groups."""


class NotASubgroupError(ValueError):
    """A set that must be a subgroup is not closed."""


def max_order_cap() -> int:
    """Configured bound on |G|; the ISOPERIM_MAX_GROUP env var overrides 2**24."""
    raw = os.environ.get(MAX_ORDER_ENV, "")
    return int(raw) if raw else DEFAULT_MAX_ORDER


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        lsb = mask & -mask
        yield lsb.bit_length() - 1
        mask ^= lsb


def translate_mask(mask: int, perm: Sequence[int]) -> int:
    """Image of a bitmask under an index permutation (bit-by-bit)."""
    out = 0
    while mask:
        lsb = mask & -mask
        out |= 1 << perm[lsb.bit_length() - 1]
        mask ^= lsb
    return out


class Shifter:
    """Applies one fixed index permutation to set bitmasks.

    For small groups the permutation is compiled into per-byte lookup tables,
    so applying it costs O(|G|/8) table reads instead of one bit at a time.
    This is the hot path of boundary counting.
    """

    __slots__ = ("perm", "_tables")

    def __init__(self, perm: Sequence[int], use_tables: bool):
        self.perm = perm
        self._tables: list[list[int]] | None = None
        if use_tables:
            nbits = len(perm)
            tables = []
            for base in range(0, nbits, 8):
                width = min(8, nbits - base)
                row = [0] * 256
                for v in range(1, 256):
                    lsb = v & -v
                    k = lsb.bit_length() - 1
                    rest = row[v ^ lsb]
                    row[v] = rest | (1 << perm[base + k]) if k < width else rest
                tables.append(row)
            self._tables = tables

    def apply(self, mask: int) -> int:
        tables = self._tables
        if tables is None:
            return translate_mask(mask, self.perm)
        out = 0
        i = 0
        while mask:
            b = mask & 255
            if b:
                out |= tables[i][b]
            mask >>= 8
            i += 1
        return out


class GroupSpec:
    """A finite abelian group C_m1 + ... + C_mn with mixed-radix element indexing.

    Immutable after construction (the internal permutation caches are
    write-once and invisible to callers), so instances are safe to share
    across parallel workers.
    """

    __slots__ = ("moduli", "order", "exponent", "strides", "_perm_cache", "_shift_cache")

    def __init__(self, moduli: Sequence[int], max_order: int | None = None):
        mods = tuple(int(m) for m in moduli)
        if not mods:
            raise ValueError("a group needs at least one cyclic factor")
        if any(m < 2 for m in mods):
            raise ValueError(f"cyclic factor sizes must be at least 2, got {mods}")
        cap = max_order_cap() if max_order is None else int(max_order)
        order = prod(mods)
        if order > cap:
            raise ValueError(f"group order {order} exceeds the configured cap {cap}")
        strides = []
        acc = 1
        for m in mods:
            strides.append(acc)
            acc *= m
        self.moduli = mods
        self.order = order
        self.exponent = lcm(*mods)
        self.strides = tuple(strides)
        self._perm_cache: dict[int, list[int]] = {}
        self._shift_cache: dict[int, Shifter] = {}

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupSpec) and self.moduli == other.moduli

    def __hash__(self) -> int:
        return hash(self.moduli)

    def __repr__(self) -> str:
        return "C" + "xC".join(str(m) for m in self.moduli)

    # -- structure --------------------------------------------------------

    @property
    def n_factors(self) -> int:
        return len(self.moduli)

    @property
    def is_homocyclic(self) -> bool:
        return len(set(self.moduli)) == 1

    @property
    def rank(self) -> int:
        """Number of cyclic factors; defined here only for homocyclic groups."""
        if not self.is_homocyclic:
            raise ValueError(f"rank requested for non-homocyclic group {self!r}")
        return len(self.moduli)

    # -- elements ---------------------------------------------------------

    def element(self, coords: Sequence[int]) -> Element:
        """Element with the given coordinates, reduced modulo the factor sizes."""
        if len(coords) != len(self.moduli):
            raise ValueError(f"expected {len(self.moduli)} coordinates, got {len(coords)}")
        return Element(self, tuple(int(c) % m for c, m in zip(coords, self.moduli)))

    def zero(self) -> Element:
        return Element(self, (0,) * len(self.moduli))

    def standard_basis(self) -> GeneratorSeq:
        """The unit vectors e_1, ..., e_n as an ordered generating sequence."""
        n = len(self.moduli)
        elems = tuple(
            Element(self, tuple(1 if j == i else 0 for j in range(n))) for i in range(n)
        )
        return GeneratorSeq(self, elems)

    def index_of(self, g: Element) -> int:
        if g.spec != self:
            raise SpecMismatchError(f"element of {g.spec!r} indexed in {self!r}")
        return sum(c * s for c, s in zip(g.coords, self.strides))

    def element_at(self, index: int) -> Element:
        if not 0 <= index < self.order:
            raise ValueError(f"index {index} outside [0, {self.order})")
        coords = []
        r = index
        for m in self.moduli:
            r, c = divmod(r, m)
            coords.append(c)
        return Element(self, tuple(coords))

    def elements(self) -> Iterator[Element]:
        for r in range(self.order):
            yield self.element_at(r)

    # -- index permutations -------------------------------------------------

    def add_perm(self, g: Element) -> list[int]:
        """Permutation of element indices induced by x -> x + g (cached)."""
        key = self.index_of(g)
        perm = self._perm_cache.get(key)
        if perm is None:
            rr = np.arange(self.order, dtype=np.int64)
            tgt = np.zeros(self.order, dtype=np.int64)
            for stride, m, gi in zip(self.strides, self.moduli, g.coords):
                tgt += ((rr // stride + gi) % m) * stride
            perm = tgt.tolist()
            self._perm_cache[key] = perm
        return perm

    def shift_table(self, g: Element) -> Shifter:
        """Mask translator for x -> x + g (cached)."""
        key = self.index_of(g)
        shifter = self._shift_cache.get(key)
        if shifter is None:
            shifter = Shifter(self.add_perm(g), self.order <= _BYTE_TABLE_LIMIT)
            self._shift_cache[key] = shifter
        return shifter

    # -- serialization ------------------------------------------------------

    def to_obj(self) -> dict:
        return {"moduli": list(self.moduli)}

    @classmethod
    def from_obj(cls, obj: dict) -> GroupSpec:
        return cls(obj["moduli"])


@dataclass(frozen=True)
class Element:
    """A group element as a reduced coordinate vector."""

    spec: GroupSpec
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != len(self.spec.moduli):
            raise ValueError("coordinate count does not match the group")
        if any(not 0 <= c < m for c, m in zip(self.coords, self.spec.moduli)):
            raise ValueError(f"coordinates {self.coords} not reduced modulo {self.spec.moduli}")

    def __add__(self, other: Element) -> Element:
        if self.spec != other.spec:
            raise SpecMismatchError("cannot add elements of different groups")
        return Element(
            self.spec,
            tuple((a + b) % m for a, b, m in zip(self.coords, other.coords, self.spec.moduli)),
        )

    def __neg__(self) -> Element:
        return Element(self.spec, tuple((-c) % m for c, m in zip(self.coords, self.spec.moduli)))

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def index(self) -> int:
        return self.spec.index_of(self)

    def __repr__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


class GroupSet:
    """A subset of a group, stored as a dense bitmask over element indices.

    Treat instances as immutable: all operations return new sets.
    """

    __slots__ = ("spec", "mask")

    def __init__(self, spec: GroupSpec, mask: int):
        if not 0 <= mask < (1 << spec.order):
            raise ValueError("bitmask has bits outside the element index range")
        self.spec = spec
        self.mask = mask

    # -- constructors -------------------------------------------------------

    @classmethod
    def empty(cls, spec: GroupSpec) -> GroupSet:
        return cls(spec, 0)

    @classmethod
    def full(cls, spec: GroupSpec) -> GroupSet:
        return cls(spec, (1 << spec.order) - 1)

    @classmethod
    def from_elements(cls, spec: GroupSpec, elems: Iterable[Element]) -> GroupSet:
        mask = 0
        for g in elems:
            mask |= 1 << spec.index_of(g)
        return cls(spec, mask)

    @classmethod
    def from_indices(cls, spec: GroupSpec, indices: Iterable[int]) -> GroupSet:
        mask = 0
        for r in indices:
            if not 0 <= r < spec.order:
                raise ValueError(f"element index {r} outside [0, {spec.order})")
            mask |= 1 << r
        return cls(spec, mask)

    # -- basic queries -------------------------------------------------------

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, g: Element) -> bool:
        return (self.mask >> self.spec.index_of(g)) & 1 == 1

    def has_index(self, r: int) -> bool:
        return (self.mask >> r) & 1 == 1

    def indices(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def elements(self) -> list[Element]:
        return [self.spec.element_at(r) for r in self.indices()]

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupSet) and self.spec == other.spec and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.spec, self.mask))

    def __repr__(self) -> str:
        return f"GroupSet({self.spec!r}, {{{', '.join(map(repr, self.elements()))}}})"

    # -- set algebra ---------------------------------------------------------

    def _check(self, other: GroupSet) -> None:
        if self.spec != other.spec:
            raise SpecMismatchError("sets live in different groups")

    def __and__(self, other: GroupSet) -> GroupSet:
        self._check(other)
        return GroupSet(self.spec, self.mask & other.mask)

    def __or__(self, other: GroupSet) -> GroupSet:
        self._check(other)
        return GroupSet(self.spec, self.mask | other.mask)

    def __sub__(self, other: GroupSet) -> GroupSet:
        self._check(other)
        return GroupSet(self.spec, self.mask & ~other.mask)

    def __xor__(self, other: GroupSet) -> GroupSet:
        self._check(other)
        return GroupSet(self.spec, self.mask ^ other.mask)

    def issubset(self, other: GroupSet) -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    __le__ = issubset

    # -- group actions ---------------------------------------------------------

    def translate(self, g: Element) -> GroupSet:
        """The shifted set {a + g : a in A}."""
        return GroupSet(self.spec, self.spec.shift_table(g).apply(self.mask))

    def negate(self) -> GroupSet:
        """The reflected set {-a : a in A}."""
        spec = self.spec
        mask = 0
        for r in self.indices():
            mask |= 1 << spec.index_of(-spec.element_at(r))
        return GroupSet(spec, mask)

    # -- serialization ---------------------------------------------------------

    def to_obj(self) -> dict:
        return {
            "group": self.spec.to_obj(),
            "elements": [list(g.coords) for g in self.elements()],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> GroupSet:
        spec = GroupSpec.from_obj(obj["group"])
        return cls.from_elements(spec, (spec.element(c) for c in obj["elements"]))


class GeneratorSeq:
    """An ordered sequence of pairwise-distinct group elements.

    Order matters: compression is applied in sequence order.
    """

    __slots__ = ("spec", "elements")

    def __init__(self, spec: GroupSpec, elements: Sequence[Element]):
        elems = tuple(elements)
        for g in elems:
            if g.spec != spec:
                raise SpecMismatchError("generator from a different group")
        if len({g.coords for g in elems}) != len(elems):
            raise ValueError("generator sequence contains duplicates")
        self.spec = spec
        self.elements = elems

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __getitem__(self, i: int) -> Element:
        return self.elements[i]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GeneratorSeq)
            and self.spec == other.spec
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash((self.spec, self.elements))

    def __repr__(self) -> str:
        return f"GeneratorSeq({self.spec!r}, [{', '.join(map(repr, self.elements))}])"

    def drop(self, i: int) -> GeneratorSeq:
        """The sequence with the i-th generator removed (may be empty)."""
        return GeneratorSeq(self.spec, self.elements[:i] + self.elements[i + 1:])

    def as_set(self) -> GroupSet:
        return GroupSet.from_elements(self.spec, self.elements)

    def to_obj(self) -> dict:
        return {"group": self.spec.to_obj(), "elements": [list(g.coords) for g in self.elements]}

    @classmethod
    def from_obj(cls, obj: dict) -> GeneratorSeq:
        spec = GroupSpec.from_obj(obj["group"])
        return cls(spec, tuple(spec.element(c) for c in obj["elements"]))


# -- operations ----------------------------------------------------------------


def add(g: Element, h: Element) -> Element:
    """Coordinate-wise sum modulo the factor sizes."""
    return g + h


def order_of(g: Element) -> int:
    """Least k >= 1 with k*g = 0."""
    return lcm(*(m // gcd(c, m) for c, m in zip(g.coords, g.spec.moduli)))


def span(gens: GeneratorSeq) -> GroupSet:
    """The subgroup generated by the sequence, via breadth-first closure."""
    spec = gens.spec
    seen = 1  # the zero element has index 0
    frontier = [0]
    perms = [spec.add_perm(s) for s in gens]
    while frontier:
        nxt = []
        for r in frontier:
            for p in perms:
                q = p[r]
                if not (seen >> q) & 1:
                    seen |= 1 << q
                    nxt.append(q)
        frontier = nxt
    return GroupSet(spec, seen)


def is_independent(gens: GeneratorSeq) -> bool:
    """True iff the cyclic subgroups generated by the entries sum directly.

    For finite groups this is equivalent to |span(S)| = prod(ord(s)).
    """
    return len(span(gens)) == prod(order_of(s) for s in gens)


def _least_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return p
        p += 2
    return n


def min_nonzero_order(spec: GroupSpec) -> int:
    """Smallest order of a non-zero element: the least prime dividing any factor."""
    if spec.order <= 1:
        raise ValueError("the trivial group has no non-zero element")
    return min(_least_prime_factor(m) for m in spec.moduli)


def _require_subgroup(H: GroupSet) -> None:
    spec = H.spec
    if not H.has_index(0):
        raise NotASubgroupError("subgroup must contain 0")
    for r in H.indices():
        perm = spec.add_perm(spec.element_at(r))
        if translate_mask(H.mask, perm) != H.mask:
            raise NotASubgroupError(f"set is not closed under adding {spec.element_at(r)!r}")


def coset_decompose(A: GroupSet, H: GroupSet) -> list[tuple[Element, GroupSet]]:
    """Partition of A by the cosets of the subgroup H.

    Each part's representative is its least-index member, so translating the
    part by the negated representative lands inside H.  Raises
    NotASubgroupError if H is not closed.
    """
    if A.spec != H.spec:
        raise SpecMismatchError("set and subgroup live in different groups")
    _require_subgroup(H)
    spec = A.spec
    parts: list[tuple[Element, GroupSet]] = []
    remaining = A.mask
    while remaining:
        r = (remaining & -remaining).bit_length() - 1
        rep = spec.element_at(r)
        coset = spec.shift_table(rep).apply(H.mask)
        part = remaining & coset
        parts.append((rep, GroupSet(spec, part)))
        remaining &= ~part
    return parts
