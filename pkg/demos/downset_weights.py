"""Downsets in the integer lattice: weights, projections, and two inequalities.

The headline estimate: over a non-empty downset, the average number of
non-zero coordinates is at most (1/2) log2 of the size, with equality exactly
on small boxes.  A byproduct relates the size to the projection sums and is
strictly stronger than the Loomis-Whitney product bound in one famous case.

Run:  python3 demos/downset_weights.py
"""

from itertools import product

from isoperim import (
    LatticeSet,
    enumerate_downsets,
    is_downset,
    lattice_compress_along,
    loomis_whitney_feasible,
    lw_plus_feasible,
    projection_sizes,
    weight_stats,
)

print("=" * 70)
print("1. The average-weight bound, and where it is tight")
print("=" * 70)

for n in (1, 2, 3, 4):
    cube = LatticeSet(n, list(product((0, 1), repeat=n)))
    stats = weight_stats(cube)
    print(
        f"  {{0,1}}^{n}: size {stats.size}, mean weight {stats.mean_weight}"
        f" = n/2 -> equality: {stats.is_equality}"
    )

staircase = LatticeSet(2, [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)])
stats = weight_stats(staircase)
print(f"  a staircase of size {stats.size}: mean weight {stats.mean_weight}, "
      f"bound holds: {stats.bound_holds}, equality: {stats.is_equality}")

print()
print("=" * 70)
print("2. Every downset in a box, enumerated without filtering")
print("=" * 70)

count = equalities = 0
for A in enumerate_downsets((2, 2, 2)):
    count += 1
    if len(A) and weight_stats(A).is_equality:
        equalities += 1
print(f"  downsets inside [0,2]^3: {count} (including the empty one)")
print(f"  equality witnesses: {equalities} -- exactly the boxes with sides in {{0,1}}")

print()
print("=" * 70)
print("3. Projections: the sum bound beats the product bound")
print("=" * 70)

# Could a 5-point set in Z^3 have all three projections of size 3?
size, proj = 5, (3, 3, 3)
print(f"  candidate: |A| = {size}, projections {proj}")
print(f"  Loomis-Whitney 27 >= 25 allows it: {loomis_whitney_feasible(size, proj)}")
print(f"  projection-sum bound 4**6 = {4**6} vs 5**5 = {5**5} forbids it: "
      f"{not lw_plus_feasible(3, size, proj)}")

print()
print("=" * 70)
print("4. Compression on the lattice side only shrinks projections")
print("=" * 70)

ragged = LatticeSet(2, [(0, 3), (2, 1), (2, 2), (1, 0)])
print(f"  start {sorted(ragged)}: projections {projection_sizes(ragged)}, downset: {is_downset(ragged)}")
step = lattice_compress_along(ragged, 1)
print(f"  stack axis 1 -> {sorted(step)}: projections {projection_sizes(step)}")
step = lattice_compress_along(step, 0)
print(f"  stack axis 0 -> {sorted(step)}: projections {projection_sizes(step)}, "
      f"downset: {is_downset(step)}")

print()
print("All downset demos passed.")
