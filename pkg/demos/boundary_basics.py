"""Edge boundaries in abelian Cayley graphs, step by step.

Builds a few groups and sets, counts boundary edges exactly, and shows how
the slack parameter gamma controls the guaranteed size of a set.

Run:  python3 demos/boundary_basics.py
"""

from fractions import Fraction

from isoperim import (
    GeneratorSeq,
    GroupSet,
    GroupSpec,
    edge_boundary,
    independence_bound_holds,
    log_lower_bound_holds,
    small_exponent_bound_holds,
    span,
)

print("=" * 70)
print("1. A first boundary count")
print("=" * 70)

spec = GroupSpec([3, 3])
basis = spec.standard_basis()
corner = GroupSet.from_elements(spec, [spec.element(c) for c in [(0, 0), (0, 1), (1, 0), (1, 1)]])

stats = edge_boundary(corner, basis)
print(f"group {spec!r}, set {sorted(g.coords for g in corner)}")
print(f"boundary edges per generator: {stats.per_generator}, total {stats.total}")
print(f"gamma = 1 - {stats.total}/({stats.gen_count}*{stats.size}) = {stats.gamma}")

# The 2x2 box in C_3^2 is the t=2 box example: boundary n * t**(n-1) = 4.
assert stats.total == 2 * 2

print()
print("=" * 70)
print("2. Extremes: the whole group and a single point")
print("=" * 70)

whole = edge_boundary(GroupSet.full(spec), basis)
single = edge_boundary(GroupSet.from_indices(spec, [0]), basis)
print(f"whole group: total {whole.total}, gamma {whole.gamma} (no edge leaves the group)")
print(f"single point: total {single.total}, gamma {single.gamma} (every step exits)")

print()
print("=" * 70)
print("3. Small boundary forces a large set")
print("=" * 70)

# In homocyclic groups of exponent <= 4 the guarantee is |A| >= |G|**gamma.
spec = GroupSpec([2, 2, 2])
basis = spec.standard_basis()
sub = span(GeneratorSeq(spec, basis.elements[:2]))
stats = edge_boundary(sub, basis, rank=spec.rank)
print(f"A = a 4-element subgroup of C2^3, boundary {stats.total}, gamma(rank) {stats.gamma_rank}")
print(f"guarantee |A| >= |G|**gamma = 8**{stats.gamma_rank} -> |A| >= {8 ** float(stats.gamma_rank):.3g}")
print(f"small-exponent bound holds: {small_exponent_bound_holds(sub, basis)}")
print(f"logarithmic lower bound holds: {log_lower_bound_holds(sub, basis)}")

print()
print("=" * 70)
print("4. Independent generators in any finite abelian group")
print("=" * 70)

# For independent S the guarantee is |A| >= 4**((1-1/d) * gamma * n).
spec = GroupSpec([2, 4, 4])
basis = spec.standard_basis()
box = GroupSet.from_elements(
    spec, (spec.element((a, b, c)) for a in range(2) for b in range(2) for c in range(2))
)
stats = edge_boundary(box, basis)
d = 2  # the smallest generator order here
exponent = Fraction(1, 2) * stats.gamma * 3
print(f"A = the 2x2x2 box in {spec!r}: boundary {stats.total}, gamma {stats.gamma}")
print(f"bound 4**((1-1/{d}) * {stats.gamma} * 3) = 4**{exponent} <= |A| = {len(box)}")
print(f"independence bound holds: {independence_bound_holds(box, basis)}")

print()
print("All boundary demos passed.")
