"""Driving the verification harness: plans in, reports out.

A plan is a JSON-serializable description of one sweep; the harness runs it
with exact arithmetic and returns counts, equality witnesses and (never, one
hopes) violation witnesses, each of which can be replayed from its
serialization alone.

Run:  python3 demos/verification_runs.py
"""

import json
from fractions import Fraction

from isoperim import VerifyPlan, emit_report, replay_witness, run_verify
from isoperim.harness import GeneratorPolicy

print("=" * 70)
print("1. An exhaustive sweep (every non-empty subset of C2^3)")
print("=" * 70)

plan = VerifyPlan(theorem="exp234", moduli=(2, 2, 2), mode="exhaustive")
report = run_verify(plan)
print(emit_report(report, "text"))

print("=" * 70)
print("2. Seeded sampling (reproducible across runs and machines)")
print("=" * 70)

plan = VerifyPlan(theorem="generalcase", moduli=(2, 4, 4), mode="sample", sample_size=5000, seed=2024)
first = run_verify(plan)
second = run_verify(plan)
print(emit_report(first, "tsv"))
same = json.dumps({**first.to_obj(), "wall_time": 0}) == json.dumps({**second.to_obj(), "wall_time": 0})
print(f"two runs of the same plan agree byte-for-byte (modulo wall time): {same}")

print()
print("=" * 70)
print("3. Random generating sets, drawn by rejection")
print("=" * 70)

plan = VerifyPlan(
    theorem="bl-bound",
    moduli=(3, 3),
    mode="exhaustive",
    generators=GeneratorPolicy(kind="random-generating", count=2, sets=5),
    seed=7,
)
report = run_verify(plan)
print(emit_report(report, "text"))

print("=" * 70)
print("4. Equality witnesses replay from their serialization")
print("=" * 70)

w = report.equality_witnesses[0]
print("witness:", json.dumps(w))
print("replays cleanly:", replay_witness(w))
broken = dict(w)
broken["boundary"] += 1
print("a corrupted copy is rejected:", not replay_witness(broken))

print()
print("=" * 70)
print("5. Plans serialize, so runs can be scripted from files")
print("=" * 70)

plan = VerifyPlan(
    theorem="repa",
    moduli=(3, 3),
    mode="sample",
    sample_size=50,
    seed=11,
    gammas=(Fraction(1, 2), Fraction(1)),
    dim_cap=32,
)
blob = json.dumps(plan.to_obj(), indent=2)
print(blob)
report = run_verify(VerifyPlan.from_obj(json.loads(blob)))
print(emit_report(report, "text"))

print("The same plans run from the command line:")
print("  isoperim verify --plan plan.json --format text")
print("  isoperim enumerate-downsets --box 2,2,2")
print("  isoperim example --id ex3 --params m=5,t=2,n=3")
