"""Edge boundaries in directed abelian Cayley graphs and the size bounds they force.

The edge boundary of A with respect to S counts pairs (a, s) in A x S with
a + s outside A.  Every bound here is decided by cross-multiplied big-integer
comparisons: a verdict near an equality case must never flip because of
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .groups import (
    GeneratorSeq,
    GroupSet,
    SpecMismatchError,
    is_independent,
    order_of,
    span,
)


class Verdict(NamedTuple):
    """Outcome of one exact bound check."""

    ok: bool
    vacuous: bool
    equality: bool


@dataclass(frozen=True)
class BoundaryStats:
    """Exact edge-boundary counts for one (A, S) pair.

    ``gamma`` is the slack 1 - boundary/(|S||A|); ``gamma_rank`` uses a
    caller-supplied rank in place of |S| and is None when no rank was given.
    """

    total: int
    per_generator: tuple[int, ...]
    size: int
    gen_count: int
    gamma: Fraction
    gamma_rank: Fraction | None = None

    def to_obj(self) -> dict:
        return {
            "total": self.total,
            "per_generator": list(self.per_generator),
            "size": self.size,
            "gen_count": self.gen_count,
            "gamma": str(self.gamma),
            "gamma_rank": None if self.gamma_rank is None else str(self.gamma_rank),
        }


def boundary_counts(A: GroupSet, S: GeneratorSeq) -> tuple[int, ...]:
    """Per-generator counts |{a in A : a + s not in A}| via mask translation."""
    if A.spec != S.spec:
        raise SpecMismatchError("set and generators live in different groups")
    spec = A.spec
    mask = A.mask
    size = mask.bit_count()
    counts = []
    for s in S:
        # a + s in A  <=>  a in A - s, so intersect with the (-s)-translate.
        back = spec.shift_table(-s).apply(mask)
        counts.append(size - (mask & back).bit_count())
    return tuple(counts)


def edge_boundary(A: GroupSet, S: GeneratorSeq, rank: int | None = None) -> BoundaryStats:
    """Exact boundary statistics; raises on empty A (gamma is undefined there)."""
    if len(A) == 0:
        raise ValueError("edge boundary slack is undefined for the empty set")
    if len(S) == 0:
        raise ValueError("at least one generator is required")
    if rank is not None and rank < 1:
        raise ValueError("rank must be positive")
    counts = boundary_counts(A, S)
    total = sum(counts)
    size = len(A)
    gamma = 1 - Fraction(total, len(S) * size)
    gamma_rank = None if rank is None else 1 - Fraction(total, rank * size)
    return BoundaryStats(total, counts, size, len(S), gamma, gamma_rank)


def gamma_star(boundary: int, n: int, size: int) -> Fraction:
    """Maximal slack admitted by the counts: 1 - boundary/(n*size)."""
    return 1 - Fraction(boundary, n * size)


# -- exact verdict kernels ------------------------------------------------------
#
# The kernels work on plain integers so that exhaustive sweeps can tabulate
# them; the *_holds wrappers below add the hypothesis checks.


@lru_cache(maxsize=None)
def classify_log_lower_bound(m: int, order: int, size: int, boundary: int) -> Verdict:
    """boundary >= size * log_m(order/size), cleared of logarithms."""
    lhs = m**boundary * size**size
    rhs = order**size
    return Verdict(lhs >= rhs, False, lhs == rhs)


@lru_cache(maxsize=None)
def classify_small_exponent(order: int, rank: int, size: int, boundary: int) -> Verdict:
    """size >= order**g for the maximal admissible slack g (vacuous if g <= 0)."""
    num = rank * size - boundary
    if num <= 0:
        return Verdict(True, True, False)
    g = Fraction(num, rank * size)
    lhs = size**g.denominator
    rhs = order**g.numerator
    return Verdict(lhs >= rhs, False, lhs == rhs)


@lru_cache(maxsize=None)
def classify_independence_bound(d: int, n: int, size: int, boundary: int) -> Verdict:
    """size >= 4**((1 - 1/d) * g * n) with g the maximal admissible slack."""
    num = n * size - boundary
    if num <= 0:
        return Verdict(True, True, False)
    exponent = Fraction(d - 1, d) * Fraction(num, n * size) * n
    lhs = size**exponent.denominator
    rhs = 4**exponent.numerator
    return Verdict(lhs >= rhs, False, lhs == rhs)


@lru_cache(maxsize=None)
def classify_subgroup_bound(h_order: int, h_rank: int, size: int, boundary: int) -> Verdict:
    """size >= h_order**g where g is the slack measured against rank(H)."""
    if h_order == 1:
        # S = {0}: the spanned subgroup is trivial and the bound is immediate.
        return Verdict(True, False, size == 1)
    num = h_rank * size - boundary
    if num <= 0:
        return Verdict(True, True, False)
    g = Fraction(num, h_rank * size)
    lhs = size**g.denominator
    rhs = h_order**g.numerator
    return Verdict(lhs >= rhs, False, lhs == rhs)


# -- hypothesis-checked predicates ------------------------------------------------


def _require_small_exponent_group(A: GroupSet, S: GeneratorSeq, exponents: tuple[int, ...]):
    spec = A.spec
    if A.spec != S.spec:
        raise SpecMismatchError("set and generators live in different groups")
    if not spec.is_homocyclic or spec.exponent not in exponents:
        raise ValueError(f"group must be homocyclic of exponent in {exponents}, got {spec!r}")


def _require_generating(S: GeneratorSeq) -> None:
    if len(span(S)) != S.spec.order:
        raise ValueError("generator sequence does not generate the group")


def log_lower_bound_holds(A: GroupSet, S: GeneratorSeq) -> bool:
    """Exact check of boundary >= |A| log_m(|G|/|A|) for generating S, exp(G) <= 4."""
    _require_small_exponent_group(A, S, (2, 3, 4))
    _require_generating(S)
    if len(A) == 0:
        raise ValueError("bound is undefined for the empty set")
    total = sum(boundary_counts(A, S))
    spec = A.spec
    return classify_log_lower_bound(spec.exponent, spec.order, len(A), total).ok


def small_exponent_bound_holds(A: GroupSet, S: GeneratorSeq) -> bool:
    """|A| >= |G|**g for homocyclic G of exponent 2, 3 or 4 and generating S.

    g is the largest slack compatible with the measured boundary; when the
    boundary is too large for any positive slack the check is vacuously true.
    """
    _require_small_exponent_group(A, S, (2, 3, 4))
    _require_generating(S)
    if len(A) == 0:
        raise ValueError("bound is undefined for the empty set")
    spec = A.spec
    total = sum(boundary_counts(A, S))
    return classify_small_exponent(spec.order, spec.rank, len(A), total).ok


def independence_bound_holds(A: GroupSet, S: GeneratorSeq) -> bool:
    """|A| >= 4**((1-1/d) g n) for independent S, n = |S|, d = min order in S."""
    if not is_independent(S):
        raise ValueError("generator sequence is not independent")
    if len(A) == 0:
        raise ValueError("bound is undefined for the empty set")
    d = min(order_of(s) for s in S)
    total = sum(boundary_counts(A, S))
    return classify_independence_bound(d, len(S), len(A), total).ok


def subgroup_rank(h_order: int, p: int) -> int:
    """Rank of a subgroup of order h_order in a group of prime exponent p."""
    r = 0
    o = h_order
    while o > 1:
        if o % p:
            raise ValueError(f"order {h_order} is not a power of {p}")
        o //= p
        r += 1
    return r


def subgroup_bound_holds(A: GroupSet, S: GeneratorSeq) -> bool:
    """|A| >= |span(S)|**g for groups of exponent 2 or 3 and arbitrary non-empty S."""
    spec = A.spec
    if A.spec != S.spec:
        raise SpecMismatchError("set and generators live in different groups")
    if spec.exponent not in (2, 3):
        raise ValueError(f"group exponent must be 2 or 3, got {spec.exponent}")
    if len(A) == 0 or len(S) == 0:
        raise ValueError("both the set and the generator sequence must be non-empty")
    H = span(S)
    h_order = len(H)
    h_rank = subgroup_rank(h_order, spec.exponent)
    total = sum(boundary_counts(A, S))
    return classify_subgroup_bound(h_order, h_rank, len(A), total).ok
