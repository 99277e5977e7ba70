"""Downsets in the non-negative integer lattice: weights, projections, bounds.

A downset is closed under coordinate-wise domination from below.  The central
estimate is that the average number of non-zero coordinates over a non-empty
downset A is at most (1/2) log2 |A|; all log-flavoured inequalities here are
decided by clearing the logarithms into big-integer power comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Iterator, Sequence


class LatticeSet:
    """A finite subset of Z^n with non-negative coordinates (immutable)."""

    __slots__ = ("dim", "points")

    def __init__(self, dim: int, points: Iterable[Sequence[int]]):
        if dim < 1:
            raise ValueError("lattice dimension must be at least 1")
        pts = frozenset(tuple(int(c) for c in p) for p in points)
        for p in pts:
            if len(p) != dim:
                raise ValueError(f"point {p} does not have dimension {dim}")
            if any(c < 0 for c in p):
                raise ValueError(f"point {p} has a negative coordinate")
        self.dim = dim
        self.points = pts

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p: tuple[int, ...]) -> bool:
        return tuple(p) in self.points

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(sorted(self.points))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LatticeSet) and self.dim == other.dim and self.points == other.points

    def __hash__(self) -> int:
        return hash((self.dim, self.points))

    def __repr__(self) -> str:
        return f"LatticeSet(dim={self.dim}, {sorted(self.points)})"

    def to_obj(self) -> dict:
        return {"dim": self.dim, "points": [list(p) for p in sorted(self.points)]}

    @classmethod
    def from_obj(cls, obj: dict) -> LatticeSet:
        return cls(obj["dim"], obj["points"])


def weight(z: Sequence[int]) -> int:
    """Number of non-zero coordinates."""
    return sum(1 for c in z if c != 0)


def is_downset(A: LatticeSet) -> bool:
    """True iff A contains every point dominated by one of its points.

    Checking one-step predecessors a - e_i suffices: iterating single steps
    reaches every dominated point.
    """
    pts = A.points
    for a in pts:
        for i, c in enumerate(a):
            if c > 0 and a[:i] + (c - 1,) + a[i + 1:] not in pts:
                return False
    return True


@dataclass(frozen=True)
class WeightStats:
    """Total and mean coordinate weight of a set, with the exact bound verdict.

    The bound (1/2) log2 |A| is never evaluated in floating point; the verdict
    fields come from the big-integer comparison 4**total vs size**size.
    """

    size: int
    total_weight: int
    mean_weight: Fraction
    bound_holds: bool
    is_equality: bool


def weight_stats(A: LatticeSet) -> WeightStats:
    if len(A) == 0:
        raise ValueError("weight statistics are undefined for the empty set")
    total = sum(weight(a) for a in A.points)
    size = len(A)
    lhs = 4**total
    rhs = size**size
    return WeightStats(size, total, Fraction(total, size), lhs <= rhs, lhs == rhs)


def avg_weight_bound_holds(A: LatticeSet) -> bool:
    """Mean weight <= (1/2) log2 |A| for a non-empty downset, decided exactly."""
    if len(A) == 0:
        raise ValueError("the bound requires a non-empty set")
    if not is_downset(A):
        raise ValueError("the bound applies to downsets only")
    return weight_stats(A).bound_holds


def projection_sizes(A: LatticeSet) -> tuple[int, ...]:
    """|pi_i(A)| for each i, where pi_i zeroes coordinate i."""
    out = []
    for i in range(A.dim):
        out.append(len({a[:i] + (0,) + a[i + 1:] for a in A.points}))
    return tuple(out)


def lw_plus_feasible(dim: int, size: int, projections: Sequence[int]) -> bool:
    """Exact form of n|A| <= sum|pi_i(A)| + (1/2)|A| log2 |A| on raw counts."""
    if size < 1:
        raise ValueError("size must be positive")
    return 4 ** (dim * size) <= 4 ** sum(projections) * size**size


def lw_plus_holds(A: LatticeSet) -> bool:
    """The projection-sum inequality for any finite non-empty set (downset not required)."""
    if len(A) == 0:
        raise ValueError("the inequality requires a non-empty set")
    return lw_plus_feasible(A.dim, len(A), projection_sizes(A))


def loomis_whitney_feasible(size: int, projections: Sequence[int]) -> bool:
    """Exact form of prod|pi_i(A)| >= |A|**(n-1) on raw counts."""
    if size < 1:
        raise ValueError("size must be positive")
    return prod(projections) >= size ** (len(projections) - 1)


def loomis_whitney_holds(A: LatticeSet) -> bool:
    if len(A) == 0:
        raise ValueError("the inequality requires a non-empty set")
    return loomis_whitney_feasible(len(A), projection_sizes(A))


def lattice_compress_along(A: LatticeSet, i: int) -> LatticeSet:
    """Restack A inside every line parallel to e_i onto positions 0..count-1.

    Preserves cardinality and never increases any projection size; downsets
    are fixed points.
    """
    if not 0 <= i < A.dim:
        raise IndexError(f"axis {i} outside [0, {A.dim})")
    lines: dict[tuple[int, ...], int] = {}
    for a in A.points:
        key = a[:i] + a[i + 1:]
        lines[key] = lines.get(key, 0) + 1
    pts = []
    for key, count in lines.items():
        for k in range(count):
            pts.append(key[:i] + (k,) + key[i:])
    return LatticeSet(A.dim, pts)


@dataclass(frozen=True)
class MultisetFamilyView:
    """A downset read as a monotonic family of multisets over the ground set [n].

    Each lattice point is the multiplicity function of one multiset; the
    number of non-zero coordinates is the support size, so the average-weight
    bound says the mean support size is at most (1/2) log2 of the family size.
    """

    ground_size: int
    family_size: int
    support_total: int
    mean_support: Fraction
    bound_holds: bool


def multiset_view(A: LatticeSet) -> MultisetFamilyView:
    if len(A) == 0:
        raise ValueError("the family view requires a non-empty set")
    if not is_downset(A):
        raise ValueError("only downsets correspond to monotonic families")
    stats = weight_stats(A)
    return MultisetFamilyView(
        ground_size=A.dim,
        family_size=stats.size,
        support_total=stats.total_weight,
        mean_support=stats.mean_weight,
        bound_holds=stats.bound_holds,
    )


def split_inequality_holds(tau: Fraction) -> bool:
    """Exact check of 1 + (tau/2) log2 tau <= ((tau+1)/2) log2 (tau+1) for tau >= 1.

    With tau = a/b this clears to 4**b * a**a * b**b <= (a+b)**(a+b).
    """
    if tau < 1:
        raise ValueError("the inequality is stated for tau >= 1")
    a, b = tau.numerator, tau.denominator
    return 4**b * a**a * b**b <= (a + b) ** (a + b)
