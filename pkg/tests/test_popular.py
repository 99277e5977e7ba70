"""Difference spectra, popular differences, and certified dimension searches."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest

from isoperim import (
    GeneratorSeq,
    GroupSet,
    GroupSpec,
    build_example,
    diff_spectrum,
    dim_dissociated,
    dim_independent,
    edge_boundary,
    is_dissociated,
    is_independent,
    popular_diffs,
    popular_dim_bound_holds,
    span,
)
from isoperim.prng import SplitMix64


def brute_force_spectrum(A):
    """Oracle: literal double loop over ordered pairs."""
    counts: dict[tuple, int] = {}
    for a in A:
        for b in A:
            g = (a - b).coords
            counts[g] = counts.get(g, 0) + 1
    return counts


def brute_force_dissociated(B):
    """Oracle: materialize all subset sums and compare multiset sizes."""
    elems = B.elements()
    sums = set()
    total = 0
    for r in range(len(elems) + 1):
        for combo in combinations(elems, r):
            acc = B.spec.zero()
            for g in combo:
                acc = acc + g
            sums.add(acc.coords)
            total += 1
    return len(sums) == total


def test_spectrum_singleton():
    spec = GroupSpec([2, 2])
    sp = diff_spectrum(GroupSet.from_indices(spec, [0]))
    assert sp.counts[0] == 1 and sum(sp.counts) == 1


def test_spectrum_of_subgroup():
    spec = GroupSpec([2, 4])
    H = span(GeneratorSeq(spec, (spec.element([0, 1]),)))
    sp = diff_spectrum(H)
    for r in range(spec.order):
        expected = len(H) if H.has_index(r) else 0
        assert sp.counts[r] == expected


def test_spectrum_matches_brute_force():
    rng = SplitMix64(31)
    for moduli in [(2, 4), (3, 3), (2, 2, 2)]:
        spec = GroupSpec(moduli)
        for _ in range(20):
            A = GroupSet(spec, rng.nonempty_mask(spec.order))
            sp = diff_spectrum(A)
            oracle = brute_force_spectrum(A)
            for r in range(spec.order):
                assert sp.counts[r] == oracle.get(spec.element_at(r).coords, 0)


def test_spectrum_invariants():
    rng = SplitMix64(37)
    spec = GroupSpec([2, 4])
    for _ in range(30):
        A = GroupSet(spec, rng.nonempty_mask(spec.order))
        sp = diff_spectrum(A)
        assert sp.counts[0] == len(A)
        assert sum(sp.counts) == len(A) ** 2
        for r in range(spec.order):
            neg = spec.index_of(-spec.element_at(r))
            assert sp.counts[r] == sp.counts[neg]
        g = spec.element_at(rng.below(spec.order))
        assert diff_spectrum(A.translate(g)).counts == sp.counts


def test_popular_diffs_examples():
    spec = GroupSpec([2, 2])
    A = GroupSet.from_elements(spec, [spec.element([0, 0]), spec.element([1, 0])])
    P = popular_diffs(A, Fraction(1))
    assert sorted(g.coords for g in P) == [(0, 0), (1, 0)]
    assert spec.zero() in popular_diffs(A, Fraction(1, 2))


def test_popular_diffs_monotone_and_symmetric():
    rng = SplitMix64(41)
    spec = GroupSpec([3, 3])
    gammas = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]
    for _ in range(20):
        A = GroupSet(spec, rng.nonempty_mask(spec.order))
        sets = [popular_diffs(A, g) for g in gammas]
        for small, big in zip(sets, sets[1:]):
            assert big.issubset(small)
        for P in sets:
            assert spec.zero() in P
            assert P.negate() == P


def test_popular_diffs_range_check():
    spec = GroupSpec([2, 2])
    A = GroupSet.full(spec)
    with pytest.raises(ValueError):
        popular_diffs(A, Fraction(0))
    with pytest.raises(ValueError):
        popular_diffs(A, Fraction(3, 2))


def test_example4_spectrum_and_popular_set():
    inst = build_example("ex4", m=2, n=4, k=2)
    sp = diff_spectrum(inst.subset)
    for r in inst.subset.indices():
        if r != 0:
            assert sp.counts[r] == 4
    gamma = Fraction(4, len(inst.subset))
    assert inst.subset.issubset(popular_diffs(inst.subset, gamma))


def test_is_dissociated_examples():
    spec = GroupSpec([2, 2])
    e1, e2 = spec.standard_basis()
    assert is_dissociated(GroupSet.from_elements(spec, [e1]))
    assert not is_dissociated(GroupSet.from_elements(spec, [e1, e2, e1 + e2]))
    assert not is_dissociated(GroupSet.from_indices(spec, [0]))  # 0 collides with the empty sum


def test_is_dissociated_matches_brute_force():
    for moduli in [(2, 2, 2), (3, 3)]:
        spec = GroupSpec(moduli)
        for mask in range(1, 1 << spec.order):
            B = GroupSet(spec, mask)
            if len(B) > 5:
                continue
            assert is_dissociated(B) == brute_force_dissociated(B)


def test_independent_implies_dissociated():
    for moduli in [(2, 2, 2), (3, 3)]:
        spec = GroupSpec(moduli)
        elems = [g for g in spec.elements() if not g.is_zero]
        for size in (1, 2, 3):
            for combo in combinations(elems, size):
                if is_independent(GeneratorSeq(spec, combo)):
                    assert is_dissociated(GroupSet.from_elements(spec, combo))


def test_is_dissociated_cap():
    spec = GroupSpec([2, 2, 2])
    with pytest.raises(ValueError):
        is_dissociated(GroupSet.full(spec), cap=4)


def brute_force_dim(P, predicate):
    """Oracle: scan all subsets of the candidate pool."""
    elems = [g for g in P if not g.is_zero]
    best = 0
    for r in range(1, len(elems) + 1):
        for combo in combinations(elems, r):
            if predicate(combo):
                best = max(best, r)
    return best


def test_dim_examples():
    spec = GroupSpec([2, 2])
    zero_only = GroupSet.from_indices(spec, [0])
    assert dim_independent(zero_only).value == 0
    assert dim_dissociated(zero_only).value == 0

    punctured = GroupSet.full(spec) - zero_only
    assert dim_independent(punctured).value == 2

    spec24 = GroupSpec([2, 4])
    res = dim_independent(GroupSet.full(spec24))
    assert res.value == 2
    assert is_independent(GeneratorSeq(spec24, tuple(res.witness.elements())))


def test_dim_search_matches_enumeration():
    spec = GroupSpec([2, 4])
    rng = SplitMix64(43)

    def indep(combo):
        return is_independent(GeneratorSeq(spec, combo))

    def dissoc(combo):
        return is_dissociated(GroupSet.from_elements(spec, combo))

    for mask in range(1, 1 << spec.order):
        P = GroupSet(spec, mask)
        assert dim_independent(P).value == brute_force_dim(P, indep)
        assert dim_dissociated(P).value == brute_force_dim(P, dissoc)

    spec33 = GroupSpec([3, 3])

    def indep33(combo):
        return is_independent(GeneratorSeq(spec33, combo))

    for _ in range(30):
        P = GroupSet(spec33, rng.nonempty_mask(spec33.order))
        assert dim_independent(P).value == brute_force_dim(P, indep33)


def test_dim_witnesses_pass_their_predicates():
    rng = SplitMix64(47)
    spec = GroupSpec([4, 4])
    for _ in range(50):
        P = GroupSet(spec, rng.nonempty_mask(spec.order))
        ri = dim_independent(P)
        rd = dim_dissociated(P)
        assert ri.witness.issubset(P) and rd.witness.issubset(P)
        assert len(ri.witness) == ri.value and len(rd.witness) == rd.value
        if ri.value:
            assert is_independent(GeneratorSeq(spec, tuple(ri.witness.elements())))
        if rd.value:
            assert is_dissociated(rd.witness)
        assert ri.value <= rd.value


def test_dim_cap_enforced():
    spec = GroupSpec([2, 2, 2, 2, 2])
    with pytest.raises(ValueError):
        dim_independent(GroupSet.full(spec), cap=16)


def test_dimensions_coincide_for_small_exponent():
    spec = GroupSpec([2, 2, 2])
    for mask in range(1, 1 << spec.order):
        P = GroupSet(spec, mask)
        assert dim_independent(P).value == dim_dissociated(P).value


def test_popular_dim_bound_trivial_set():
    spec = GroupSpec([2, 2])
    assert popular_dim_bound_holds(GroupSet.from_indices(spec, [0]), Fraction(1, 2))


def test_popular_dim_bound_example4():
    inst = build_example("ex4", m=2, n=4, k=2)
    gamma = Fraction(4, 7)
    P = popular_diffs(inst.subset, gamma)
    assert dim_independent(P, cap=32).value == 4
    assert popular_dim_bound_holds(inst.subset, gamma, cap=32)


def test_popular_dim_bound_random():
    rng = SplitMix64(53)
    for moduli in [(2, 2, 2), (3, 3)]:
        spec = GroupSpec(moduli)
        for _ in range(20):
            A = GroupSet(spec, rng.nonempty_mask(spec.order))
            for gamma in (Fraction(1, 4), Fraction(1, 2), Fraction(1)):
                assert popular_dim_bound_holds(A, gamma, cap=32)


def test_popular_dim_bound_gamma_range():
    spec = GroupSpec([2, 2])
    with pytest.raises(ValueError):
        popular_dim_bound_holds(GroupSet.full(spec), Fraction(0))


def test_popular_witness_gives_small_boundary():
    # independent S inside the gamma-popular set forces a small edge boundary
    rng = SplitMix64(59)
    spec = GroupSpec([2, 2, 2, 2])
    gamma = Fraction(1, 2)
    for _ in range(30):
        A = GroupSet(spec, rng.nonempty_mask(spec.order))
        P = popular_diffs(A, gamma)
        res = dim_independent(P, cap=32)
        if res.value == 0:
            continue
        S = GeneratorSeq(spec, tuple(res.witness.elements()))
        sp = diff_spectrum(A)
        assert all(sp.count_of(s) * gamma.denominator >= gamma.numerator * len(A) for s in S)
        stats = edge_boundary(A, S)
        assert stats.total * gamma.denominator <= (gamma.denominator - gamma.numerator) * len(S) * len(A)
