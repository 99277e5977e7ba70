"""Verification plans, sweeps, sampling, example builders, reports."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest

from isoperim import (
    GeneratorSeq,
    GroupSet,
    GroupSpec,
    SplitMix64,
    VerifyPlan,
    build_example,
    draw_generating_seq,
    emit_report,
    enumerate_downsets,
    gray_subset_sweep,
    is_downset,
    is_independent,
    replay_witness,
    run_verify,
    span,
)
from isoperim.harness import GeneratorPolicy


def test_splitmix64_reference_vectors():
    # canonical first outputs for seed 0
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]


def test_splitmix64_determinism_and_masks():
    a, b = SplitMix64(42), SplitMix64(42)
    assert [a.next_u64() for _ in range(5)] == [b.next_u64() for _ in range(5)]

    rng = SplitMix64(7)
    mask = rng.mask_bits(100)
    assert 0 <= mask < (1 << 100)
    # first word fills the low 64 bits
    check = SplitMix64(7)
    w0 = check.next_u64()
    w1 = check.next_u64()
    assert mask == (w0 | (w1 << 64)) & ((1 << 100) - 1)
    assert SplitMix64(7).mask_bits(100) == mask

    assert SplitMix64(3).nonempty_mask(9) != 0


def test_splitmix64_below_rejects_bad_bound():
    with pytest.raises(ValueError):
        SplitMix64(0).below(0)


def test_gray_sweep_visits_every_nonempty_subset_once():
    spec = GroupSpec([2, 4])
    seen = set()
    for mask, size, dtot, d in gray_subset_sweep(spec, spec.standard_basis()):
        assert mask not in seen
        seen.add(mask)
        assert size == mask.bit_count()
    assert len(seen) == 2**spec.order - 1


def test_gray_sweep_boundary_counts_match_direct_recount():
    from isoperim.boundary import boundary_counts

    spec = GroupSpec([2, 4])
    gens = GeneratorSeq(spec, (spec.element([1, 0]), spec.element([0, 1]), spec.element([1, 2])))
    for mask, size, dtot, d in gray_subset_sweep(spec, gens):
        direct = boundary_counts(GroupSet(spec, mask), gens)
        assert tuple(d) == direct
        assert dtot == sum(direct)


def test_gray_sweep_handles_zero_generator():
    spec = GroupSpec([2, 2])
    gens = GeneratorSeq(spec, (spec.zero(), spec.element([1, 0])))
    for mask, size, dtot, d in gray_subset_sweep(spec, gens):
        assert d[0] == 0


def test_enumerate_downsets_counts():
    assert sum(1 for _ in enumerate_downsets((1,))) == 3
    assert sum(1 for _ in enumerate_downsets((1, 1))) == 6
    assert sum(1 for _ in enumerate_downsets((2, 2))) == 20


def test_enumerate_downsets_contract():
    seen = set()
    for A in enumerate_downsets((2, 1)):
        assert is_downset(A) or len(A) == 0
        assert A not in seen
        seen.add(A)
    assert len(seen) == sum(1 for _ in enumerate_downsets((2, 1)))


def test_enumerate_downsets_budget():
    with pytest.raises(ValueError):
        list(enumerate_downsets((1,) * 21))
    with pytest.raises(ValueError):
        list(enumerate_downsets(()))


def test_draw_generating_seq():
    spec = GroupSpec([4, 4])
    rng = SplitMix64(5)
    for _ in range(10):
        seq = draw_generating_seq(spec, rng, 2)
        assert len(span(seq)) == spec.order
    seq = draw_generating_seq(spec, rng, 2, independent=True)
    assert is_independent(seq)
    # same seed, same draws
    again = draw_generating_seq(GroupSpec([4, 4]), SplitMix64(5), 2)
    first = draw_generating_seq(GroupSpec([4, 4]), SplitMix64(5), 2)
    assert again == first


def test_run_verify_exp234_exhaustive_case_count():
    plan = VerifyPlan(theorem="exp234", moduli=(2, 2, 2), mode="exhaustive")
    report = run_verify(plan)
    assert report.cases_checked == 255
    assert report.passed
    assert report.classes[0]["label"] == "standard-basis"


def test_run_verify_claims_compression_small():
    plan = VerifyPlan(theorem="claims-compression", moduli=(2, 2), mode="exhaustive")
    report = run_verify(plan)
    assert report.passed and report.cases_checked == 15


def test_run_verify_rejects_trivial_group():
    plan = VerifyPlan(theorem="exp234", moduli=(), mode="exhaustive")
    with pytest.raises(ValueError):
        run_verify(plan)


def test_run_verify_rejects_unknown_theorem():
    with pytest.raises(ValueError):
        run_verify(VerifyPlan(theorem="nonsense", moduli=(2, 2)))


def test_run_verify_exhaustive_cap():
    plan = VerifyPlan(theorem="exp234", moduli=(2,) * 5, mode="exhaustive")
    with pytest.raises(ValueError):
        run_verify(plan)


def test_run_verify_hypothesis_validation():
    # exp234 requires exponent <= 4; generalcase requires independence
    with pytest.raises(ValueError):
        run_verify(VerifyPlan(theorem="exp234", moduli=(5,), mode="exhaustive"))
    bad = VerifyPlan(
        theorem="generalcase",
        moduli=(2, 2),
        mode="exhaustive",
        generators=GeneratorPolicy(kind="fixed-list", elements=((1, 0), (0, 1), (1, 1))),
    )
    with pytest.raises(ValueError):
        run_verify(bad)


def test_reports_are_deterministic():
    plan = VerifyPlan(
        theorem="bl-bound",
        moduli=(3, 3),
        mode="exhaustive",
        generators=GeneratorPolicy(kind="random-generating", count=2, sets=3),
        seed=1234,
    )
    a = run_verify(plan).to_obj()
    b = run_verify(plan).to_obj()
    a.pop("wall_time")
    b.pop("wall_time")
    assert json.dumps(a) == json.dumps(b)


def test_sample_mode_is_seeded():
    plan = VerifyPlan(theorem="generalcase", moduli=(2, 4), mode="sample", sample_size=200, seed=9)
    a = run_verify(plan).to_obj()
    b = run_verify(plan).to_obj()
    a.pop("wall_time")
    b.pop("wall_time")
    assert a == b
    assert a["cases_checked"] == 200


def test_equality_witnesses_replay():
    plan = VerifyPlan(theorem="bl-bound", moduli=(2, 2, 2), mode="exhaustive")
    report = run_verify(plan)
    assert report.equality_witnesses
    for w in report.equality_witnesses:
        # replay must work from the serialized form alone
        assert replay_witness(json.loads(json.dumps(w)))
    # a corrupted witness must fail replay
    broken = dict(report.equality_witnesses[0])
    broken["boundary"] += 1
    assert not replay_witness(broken)


def test_avweight_plan_details():
    plan = VerifyPlan(theorem="avweight", box=(1, 1))
    report = run_verify(plan)
    assert report.passed
    assert report.details["downsets_enumerated"] == 6
    assert report.details["downsets_checked"] == 5
    for w in report.equality_witnesses:
        assert replay_witness(w)


def test_lwplus_plan():
    plan = VerifyPlan(theorem="lwplus", box=(2, 2), mode="sample", sample_size=50, seed=4)
    report = run_verify(plan)
    assert report.passed and report.cases_checked == 50


def test_repa_plan_equality_replay():
    plan = VerifyPlan(
        theorem="repa",
        moduli=(2, 2),
        mode="exhaustive",
        gammas=(Fraction(1, 2), Fraction(1)),
        dim_cap=16,
    )
    report = run_verify(plan)
    assert report.passed
    for w in report.violations + report.equality_witnesses:
        assert replay_witness(w)


def test_plan_json_roundtrip():
    plan = VerifyPlan(
        theorem="generalcase",
        moduli=(2, 4, 4),
        mode="sample",
        sample_size=1000,
        seed=77,
        generators=GeneratorPolicy(kind="fixed-list", elements=((1, 0, 0), (0, 1, 0), (0, 0, 1))),
        gammas=(Fraction(1, 2),),
    )
    again = VerifyPlan.from_obj(plan.to_obj())
    assert again == plan

    rnd = VerifyPlan(
        theorem="exp234",
        moduli=(3, 3),
        generators=GeneratorPolicy(kind="random-generating", count=2, sets=5),
        seed=3,
    )
    assert VerifyPlan.from_obj(rnd.to_obj()) == rnd


def test_emit_report_formats():
    plan = VerifyPlan(theorem="exp234", moduli=(2, 2), mode="exhaustive")
    report = run_verify(plan)
    text = emit_report(report, "text")
    assert text.startswith("PASS")
    tsv = emit_report(report, "tsv")
    lines = tsv.strip().splitlines()
    assert lines[0].split("\t") == ["theorem", "class", "cases", "vacuous", "violations", "equalities"]
    assert len(lines) == 1 + len(report.classes)
    obj = json.loads(emit_report(report, "json"))
    assert obj["status"] == "PASS"
    with pytest.raises(ValueError):
        emit_report(report, "yaml")


def test_all_subsets_policy_guard():
    plan = VerifyPlan(
        theorem="cosetdecomp",
        moduli=(2, 2, 2, 2),
        mode="exhaustive",
        generators=GeneratorPolicy(kind="all-subsets"),
    )
    with pytest.raises(ValueError):
        run_verify(plan)


# -- worked examples -----------------------------------------------------------------


def test_example_subgroup_times_basis():
    inst = build_example("ex1", m=2, k=2, n=6)
    assert inst.computed["gen_count"] == 8
    assert inst.computed["boundary"] == 16
    assert inst.computed["gamma"] == Fraction(1, 2)


def test_example_union_of_subgroups():
    inst = build_example("ex2", m=2, n=4, k=2)
    assert inst.computed["set_size"] == 7
    assert inst.computed["boundary"] == 12
    inst = build_example("ex2", m=3, n=4, k=2)
    assert inst.computed["set_size"] == 17
    assert inst.computed["boundary"] == 32


def test_example_box():
    inst = build_example("ex3", m=5, t=2, n=3)
    assert inst.computed["set_size"] == 8
    assert inst.computed["boundary"] == 12
    assert inst.computed["gamma"] == Fraction(1, 2)


def test_example_popular_family():
    inst = build_example("ex4", m=2, n=4, k=2)
    assert inst.computed["r_nonzero"] == {4}
    assert inst.computed["gamma"] == Fraction(4, 7)
    assert inst.computed["popular_contains_set"]


def test_example_validation():
    with pytest.raises(ValueError):
        build_example("ex9", m=2, n=2, k=1)
    with pytest.raises(ValueError):
        build_example("ex2", m=2, n=5, k=2)  # k does not divide n
    with pytest.raises(ValueError):
        build_example("ex3", m=3, t=3, n=2)  # t must stay below m
