"""Command-line interface.

Subcommands: boundary, compress, downset-check, popdiff, verify, example,
enumerate-downsets.  Exit codes: 0 on success/PASS, 1 when a verification
finds violations (or a checked inequality fails), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .boundary import edge_boundary
from .compression import CompressionContext, compress_along, full_compress
from .groups import GeneratorSeq, GroupSet, GroupSpec
from .harness import VerifyPlan, build_example, emit_report, enumerate_downsets, run_verify
from .lattice import LatticeSet, avg_weight_bound_holds, loomis_whitney_holds, lw_plus_holds, weight_stats, projection_sizes
from .popular import diff_spectrum, dim_dissociated, dim_independent


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def _parse_params(text: str) -> dict[str, int]:
    out = {}
    for part in text.split(","):
        if not part:
            continue
        key, _, value = part.partition("=")
        if not value:
            raise ValueError(f"parameter {part!r} is not of the form key=value")
        out[key.strip()] = int(value)
    return out


def _cmd_boundary(args: argparse.Namespace) -> int:
    spec = GroupSpec.from_obj(_load_json(args.group))
    A = GroupSet.from_obj(_load_json(args.set))
    S = GeneratorSeq.from_obj(_load_json(args.gens))
    if A.spec != spec or S.spec != spec:
        raise ValueError("set/generator files disagree with the group file")
    stats = edge_boundary(A, S, rank=args.rank)
    print(json.dumps(stats.to_obj(), indent=2))
    return 0


def _cmd_compress(args: argparse.Namespace) -> int:
    spec = GroupSpec.from_obj(_load_json(args.group))
    S = GeneratorSeq.from_obj(_load_json(args.gens))
    A = GroupSet.from_obj(_load_json(args.set))
    if A.spec != spec or S.spec != spec:
        raise ValueError("set/generator files disagree with the group file")
    ctx = CompressionContext(S)
    before = edge_boundary(A, S)
    out = compress_along(A, ctx, args.step) if args.step is not None else full_compress(A, ctx)
    after = edge_boundary(out, S)
    print(
        json.dumps(
            {"set": out.to_obj()["elements"], "before": before.to_obj(), "after": after.to_obj()},
            indent=2,
        )
    )
    return 0


def _cmd_downset_check(args: argparse.Namespace) -> int:
    A = LatticeSet.from_obj(_load_json(args.set))
    if args.check == "avg-weight":
        holds = avg_weight_bound_holds(A)
        stats = weight_stats(A)
        payload = {
            "check": args.check,
            "holds": holds,
            "size": stats.size,
            "total_weight": stats.total_weight,
            "mean_weight": str(stats.mean_weight),
            "equality": stats.is_equality,
        }
    else:
        holds = lw_plus_holds(A) if args.check == "lw-plus" else loomis_whitney_holds(A)
        payload = {
            "check": args.check,
            "holds": holds,
            "size": len(A),
            "projections": list(projection_sizes(A)),
        }
    print(json.dumps(payload, indent=2))
    return 0 if holds else 1


def _cmd_popdiff(args: argparse.Namespace) -> int:
    spec = GroupSpec.from_obj(_load_json(args.group))
    A = GroupSet.from_obj(_load_json(args.set))
    if A.spec != spec:
        raise ValueError("set file disagrees with the group file")
    gamma = _parse_fraction(args.gamma)
    spectrum = diff_spectrum(A)
    P = spectrum.popular(gamma)
    payload: dict = {
        "size": len(A),
        "gamma": str(gamma),
        "popular": P.to_obj()["elements"],
        "popular_size": len(P),
        "spectrum_max_nonzero": max(
            (c for r, c in enumerate(spectrum.counts) if r != 0), default=0
        ),
    }
    if args.dim:
        search = dim_independent if args.dim == "independent" else dim_dissociated
        result = search(P, cap=args.cap)
        payload["dimension"] = {
            "kind": result.kind,
            "value": result.value,
            "witness": result.witness.to_obj()["elements"],
        }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    plan = VerifyPlan.from_obj(_load_json(args.plan))
    report = run_verify(plan)
    print(emit_report(report, args.format), end="")
    return 0 if report.passed else 1


def _cmd_example(args: argparse.Namespace) -> int:
    params = _parse_params(args.params)
    instance = build_example(args.id, **params)

    def jsonable(value):
        if isinstance(value, Fraction):
            return str(value)
        if isinstance(value, (set, frozenset)):
            return sorted(value)
        return value

    payload = {
        "id": instance.example_id,
        "params": instance.params,
        "group": instance.spec.to_obj(),
        "set": instance.subset.to_obj()["elements"],
        "generators": instance.gens.to_obj()["elements"],
        "expected": {k: jsonable(v) for k, v in instance.expected.items()},
        "computed": {k: jsonable(v) for k, v in instance.computed.items()},
    }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_enumerate_downsets(args: argparse.Namespace) -> int:
    box = tuple(int(b) for b in args.box.split(","))
    count = 0
    listed = []
    for A in enumerate_downsets(box):
        count += 1
        if args.list:
            listed.append(A.to_obj()["points"])
    payload: dict = {"box": list(box), "count": count}
    if args.list:
        payload["downsets"] = listed
    print(json.dumps(payload, indent=2))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isoperim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("boundary", help="edge-boundary statistics for a set")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--gens", required=True)
    p.add_argument("--rank", type=int, default=None)
    p.set_defaults(fn=_cmd_boundary)

    p = sub.add_parser("compress", help="compress a set along the generators")
    p.add_argument("--group", required=True)
    p.add_argument("--gens", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--step", type=int, default=None, help="compress along one generator index only")
    p.set_defaults(fn=_cmd_compress)

    p = sub.add_parser("downset-check", help="check a lattice-set inequality")
    p.add_argument("--set", required=True)
    p.add_argument("--check", required=True, choices=["avg-weight", "lw-plus", "loomis-whitney"])
    p.set_defaults(fn=_cmd_downset_check)

    p = sub.add_parser("popdiff", help="difference spectrum and popular differences")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--gamma", required=True, help="threshold as p/q")
    p.add_argument("--dim", choices=["independent", "dissociated"], default=None)
    p.add_argument("--cap", type=int, default=24)
    p.set_defaults(fn=_cmd_popdiff)

    p = sub.add_parser("verify", help="run a verification plan")
    p.add_argument("--plan", required=True)
    p.add_argument("--format", choices=["json", "tsv", "text"], default="text")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("example", help="build a worked example and check its closed forms")
    p.add_argument("--id", required=True, choices=["ex1", "ex2", "ex3", "ex4"])
    p.add_argument("--params", required=True, help="comma-separated key=value integers")
    p.set_defaults(fn=_cmd_example)

    p = sub.add_parser("enumerate-downsets", help="enumerate downsets inside a box")
    p.add_argument("--box", required=True, help="comma-separated upper bounds, e.g. 2,2,2")
    p.add_argument("--list", action="store_true", help="also list the downsets")
    p.set_defaults(fn=_cmd_enumerate_downsets)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; keep that contract
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (ValueError, OSError, KeyError, IndexError, json.JSONDecodeError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
