"""Verification plans: exhaustive and sampled sweeps over set families.

A plan names a bound to check, a group (or lattice box), an enumeration mode
and a generator policy; running it produces a report with exact counts,
violation witnesses and equality witnesses.  Reports are deterministic given
the plan (including the seed) up to the recorded wall time, and every witness
carries enough data to be re-verified from its serialization alone.

Exhaustive subset sweeps walk the group-subset bitmasks in binary-reflected
Gray-code order, so each step toggles one element and updates the
per-generator boundary counts in O(|S|).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as _cartesian
from math import prod
from typing import Callable, Iterator, Sequence

from .boundary import (
    Verdict,
    boundary_counts,
    classify_independence_bound,
    classify_log_lower_bound,
    classify_small_exponent,
    classify_subgroup_bound,
    edge_boundary,
    gamma_star,
    subgroup_rank,
)
from .compression import CompressionContext
from .groups import (
    GeneratorSeq,
    GroupSet,
    GroupSpec,
    is_independent,
    iter_bits,
    min_nonzero_order,
    order_of,
    span,
)
from .lattice import (
    LatticeSet,
    loomis_whitney_feasible,
    lw_plus_feasible,
    projection_sizes,
    weight_stats,
)
from .popular import (
    classify_popular_dim,
    classify_popular_dim_exp3,
    diff_spectrum,
    dim_independent,
    popular_diffs,
)
from .prng import SplitMix64

THEOREM_IDS = (
    "exp234",
    "cosetdecomp",
    "generalcase",
    "avweight",
    "lwplus",
    "repa",
    "claims-compression",
    "bl-bound",
)

EXHAUSTIVE_ORDER_LIMIT = 16  # subset space of at most 2**16 masks
ALL_SUBSETS_ORDER_LIMIT = 10
DOWNSET_CELL_BUDGET = 1 << 20


@dataclass(frozen=True)
class GeneratorPolicy:
    """How a plan obtains its generator sequences.

    kinds: "standard-basis", "fixed-list" (uses ``elements``),
    "random-generating" (draws ``sets`` sequences of ``count`` distinct
    elements, rejecting until they generate and, if requested, are
    independent), and "all-subsets" (every non-empty subset in index order).
    """

    kind: str = "standard-basis"
    count: int = 0
    sets: int = 1
    independent: bool = False
    elements: tuple[tuple[int, ...], ...] | None = None

    def to_obj(self) -> dict:
        obj: dict = {"policy": self.kind}
        if self.kind == "fixed-list":
            obj["elements"] = [list(c) for c in (self.elements or ())]
        if self.kind == "random-generating":
            obj["count"] = self.count
            obj["sets"] = self.sets
            obj["independent"] = self.independent
        return obj

    @classmethod
    def from_obj(cls, obj: dict) -> GeneratorPolicy:
        kind = obj["policy"]
        return cls(
            kind=kind,
            count=int(obj.get("count", 0)),
            sets=int(obj.get("sets", 1)),
            independent=bool(obj.get("independent", False)),
            elements=tuple(tuple(c) for c in obj["elements"]) if "elements" in obj else None,
        )


@dataclass(frozen=True)
class VerifyPlan:
    """A single verification run: what to check, over which family, how."""

    theorem: str
    moduli: tuple[int, ...] | None = None
    mode: str = "exhaustive"
    sample_size: int = 0
    seed: int = 0
    generators: GeneratorPolicy = field(default_factory=GeneratorPolicy)
    gammas: tuple[Fraction, ...] = ()
    box: tuple[int, ...] = ()
    allow_large: bool = False
    dim_cap: int = 24

    def to_obj(self) -> dict:
        obj: dict = {"theorem": self.theorem, "mode": self.mode}
        if self.moduli is not None:
            obj["group"] = {"moduli": list(self.moduli)}
        obj["sample_size"] = self.sample_size
        obj["seed"] = self.seed
        obj["generators"] = self.generators.to_obj()
        if self.gammas:
            obj["gammas"] = [str(g) for g in self.gammas]
        if self.box:
            obj["box"] = list(self.box)
        obj["allow_large"] = self.allow_large
        obj["dim_cap"] = self.dim_cap
        return obj

    @classmethod
    def from_obj(cls, obj: dict) -> VerifyPlan:
        return cls(
            theorem=obj["theorem"],
            moduli=tuple(obj["group"]["moduli"]) if "group" in obj else None,
            mode=obj.get("mode", "exhaustive"),
            sample_size=int(obj.get("sample_size", 0)),
            seed=int(obj.get("seed", 0)),
            generators=GeneratorPolicy.from_obj(obj.get("generators", {"policy": "standard-basis"})),
            gammas=tuple(Fraction(g) for g in obj.get("gammas", ())),
            box=tuple(int(b) for b in obj.get("box", ())),
            allow_large=bool(obj.get("allow_large", False)),
            dim_cap=int(obj.get("dim_cap", 24)),
        )


@dataclass
class VerifyReport:
    """Outcome of one plan: counts, witnesses, and per-class summaries."""

    theorem: str
    cases_checked: int = 0
    vacuous: int = 0
    violations: list[dict] = field(default_factory=list)
    equality_witnesses: list[dict] = field(default_factory=list)
    classes: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_obj(self) -> dict:
        return {
            "theorem": self.theorem,
            "status": "PASS" if self.passed else "FAIL",
            "cases_checked": self.cases_checked,
            "vacuous": self.vacuous,
            "violations": self.violations,
            "equality_witnesses": self.equality_witnesses,
            "classes": self.classes,
            "details": self.details,
            "wall_time": self.wall_time,
        }


# -- enumeration engines -----------------------------------------------------


def gray_subset_sweep(
    spec: GroupSpec, gens: GeneratorSeq
) -> Iterator[tuple[int, int, int, list[int]]]:
    """Yield (mask, size, total_boundary, per_generator) for every non-empty subset.

    Subsets appear in binary-reflected Gray-code order; a step toggles one
    element and patches the boundary counts in O(|S|).  The per-generator
    list is reused between steps: consume, do not mutate or store it.
    """
    order = spec.order
    if order > 24:
        raise ValueError(f"subset sweep over 2**{order} masks is not feasible")
    perms = [spec.add_perm(s) for s in gens]
    iperms = [spec.add_perm(-s) for s in gens]
    active = [(k, perms[k], iperms[k]) for k, s in enumerate(gens) if not s.is_zero]
    d = [0] * len(gens)
    mask = 0
    size = 0
    dtot = 0
    for t in range(1, 1 << order):
        x = (t & -t).bit_length() - 1
        bit = 1 << x
        if mask & bit:
            mask ^= bit
            size -= 1
            for k, p, ip in active:
                if not (mask >> p[x]) & 1:
                    d[k] -= 1
                    dtot -= 1
                if (mask >> ip[x]) & 1:
                    d[k] += 1
                    dtot += 1
        else:
            mask |= bit
            size += 1
            for k, p, ip in active:
                if not (mask >> p[x]) & 1:
                    d[k] += 1
                    dtot += 1
                if (mask >> ip[x]) & 1:
                    d[k] -= 1
                    dtot -= 1
        yield mask, size, dtot, d


def enumerate_downsets(box: Sequence[int]) -> Iterator[LatticeSet]:
    """Every downset inside the box [0, box[0]] x ... x [0, box[-1]], once each.

    Recursive generation by slicing along the last axis: a downset is a
    weakly decreasing chain of lower-dimensional downsets, so nothing is
    filtered and the empty set appears exactly once.
    """
    dims = tuple(int(b) for b in box)
    if not dims:
        raise ValueError("the box needs at least one axis")
    if any(b < 0 for b in dims):
        raise ValueError("box bounds must be non-negative")
    cells = prod(b + 1 for b in dims)
    if cells > DOWNSET_CELL_BUDGET:
        raise ValueError(f"box holds {cells} lattice points, over the {DOWNSET_CELL_BUDGET} budget")
    for pts in _downset_chains(dims):
        yield LatticeSet(len(dims), pts)


def _downset_point_sets(dims: tuple[int, ...]) -> list[frozenset]:
    return list(_downset_chains(dims))


def _downset_chains(dims: tuple[int, ...]) -> Iterator[frozenset]:
    if not dims:
        yield frozenset()
        yield frozenset({()})
        return
    lower = sorted(_downset_point_sets(dims[:-1]), key=lambda s: (len(s), sorted(s)))
    top = dims[-1]
    base_full = lower[-1]

    def extend(level: int, prev: frozenset, acc: list) -> Iterator[frozenset]:
        if level > top:
            yield frozenset(acc)
            return
        for D in lower:
            if D <= prev:
                yield from extend(level + 1, D, acc + [p + (level,) for p in D])

    yield from extend(0, base_full, [])


# -- sampling ------------------------------------------------------------------


def draw_generating_seq(
    spec: GroupSpec, rng: SplitMix64, count: int, independent: bool = False
) -> GeneratorSeq:
    """Rejection-sample ``count`` distinct elements until they generate the group."""
    if count < 1:
        raise ValueError("generator count must be positive")
    while True:
        idxs = [rng.below(spec.order) for _ in range(count)]
        if len(set(idxs)) != count:
            continue
        seq = GeneratorSeq(spec, tuple(spec.element_at(r) for r in idxs))
        if len(span(seq)) != spec.order:
            continue
        if independent and not is_independent(seq):
            continue
        return seq


def _generator_seqs(plan: VerifyPlan, spec: GroupSpec, rng: SplitMix64) -> list[tuple[str, GeneratorSeq]]:
    pol = plan.generators
    if pol.kind == "standard-basis":
        return [("standard-basis", spec.standard_basis())]
    if pol.kind == "fixed-list":
        if not pol.elements:
            raise ValueError("fixed-list policy needs explicit elements")
        seq = GeneratorSeq(spec, tuple(spec.element(c) for c in pol.elements))
        return [("fixed-list", seq)]
    if pol.kind == "random-generating":
        out = []
        for i in range(pol.sets):
            seq = draw_generating_seq(spec, rng, pol.count, pol.independent)
            out.append((f"random-{i}", seq))
        return out
    if pol.kind == "all-subsets":
        if spec.order > ALL_SUBSETS_ORDER_LIMIT and not plan.allow_large:
            raise ValueError(f"all-subsets policy over |G| = {spec.order} requires allow_large")
        out = []
        for smask in range(1, 1 << spec.order):
            seq = GeneratorSeq(spec, tuple(spec.element_at(r) for r in iter_bits(smask)))
            out.append((f"S#{smask}", seq))
        return out
    raise ValueError(f"unknown generator policy {pol.kind!r}")


# -- witness plumbing -----------------------------------------------------------


def _coords_of_mask(spec: GroupSpec, mask: int) -> list[list[int]]:
    return [list(spec.element_at(r).coords) for r in iter_bits(mask)]


def _boundary_witness(
    kind: str,
    check: str,
    spec: GroupSpec,
    gens: GeneratorSeq,
    label: str,
    mask: int,
    size: int,
    boundary: int,
    lhs: int,
    rhs: int,
    gamma: Fraction | None,
) -> dict:
    return {
        "kind": kind,
        "check": check,
        "label": label,
        "group": spec.to_obj(),
        "generators": [list(s.coords) for s in gens],
        "set": _coords_of_mask(spec, mask),
        "size": size,
        "boundary": boundary,
        "gamma_star": None if gamma is None else str(gamma),
        "lhs": str(lhs),
        "rhs": str(rhs),
    }


def _check_sides(check: str, spec: GroupSpec, gens: GeneratorSeq, size: int, boundary: int) -> tuple[int, int, Fraction | None]:
    """(lhs, rhs, slack) of the cleared inequality, for witness records."""
    if check == "bl-bound":
        return spec.exponent**boundary * size**size, spec.order**size, None
    if check == "exp234":
        g = gamma_star(boundary, spec.rank, size)
        if g <= 0:
            return size, 1, g
        return size**g.denominator, spec.order**g.numerator, g
    if check == "generalcase":
        n = len(gens)
        d = min(order_of(s) for s in gens)
        g = gamma_star(boundary, n, size)
        if g <= 0:
            return size, 1, g
        e = Fraction(d - 1, d) * g * n
        return size**e.denominator, 4**e.numerator, g
    if check == "cosetdecomp":
        H = span(gens)
        h_order = len(H)
        if h_order == 1:
            return size, 1, None
        h_rank = subgroup_rank(h_order, spec.exponent)
        g = gamma_star(boundary, h_rank, size)
        if g <= 0:
            return size, 1, g
        return size**g.denominator, h_order**g.numerator, g
    raise ValueError(f"no side computation for check {check!r}")


# -- theorem runners -----------------------------------------------------------


def _classifier_for(check: str, spec: GroupSpec, gens: GeneratorSeq) -> Callable[[int, int], Verdict]:
    if check == "bl-bound":
        m, order = spec.exponent, spec.order
        return lambda size, b: classify_log_lower_bound(m, order, size, b)
    if check == "exp234":
        order, rank = spec.order, spec.rank
        return lambda size, b: classify_small_exponent(order, rank, size, b)
    if check == "generalcase":
        d = min(order_of(s) for s in gens)
        n = len(gens)
        return lambda size, b: classify_independence_bound(d, n, size, b)
    if check == "cosetdecomp":
        h_order = len(span(gens))
        h_rank = subgroup_rank(h_order, spec.exponent)
        return lambda size, b: classify_subgroup_bound(h_order, h_rank, size, b)
    raise ValueError(f"unknown boundary check {check!r}")


def _validate_boundary_hypotheses(check: str, spec: GroupSpec, gens: GeneratorSeq) -> None:
    if check in ("bl-bound", "exp234"):
        if not spec.is_homocyclic or spec.exponent not in (2, 3, 4):
            raise ValueError(f"{check} needs a homocyclic group of exponent 2, 3 or 4")
        if len(span(gens)) != spec.order:
            raise ValueError(f"{check} needs a generating sequence")
    elif check == "generalcase":
        if not is_independent(gens):
            raise ValueError("generalcase needs an independent sequence")
    elif check == "cosetdecomp":
        if spec.exponent not in (2, 3):
            raise ValueError("cosetdecomp needs group exponent 2 or 3")
        if len(gens) == 0:
            raise ValueError("cosetdecomp needs a non-empty sequence")


def _run_boundary_theorem(plan: VerifyPlan, report: VerifyReport) -> None:
    if plan.moduli is None:
        raise ValueError(f"theorem {plan.theorem} needs a group")
    spec = GroupSpec(plan.moduli)
    rng = SplitMix64(plan.seed)
    gensets = _generator_seqs(plan, spec, rng)
    check = plan.theorem
    if plan.mode == "exhaustive" and spec.order > EXHAUSTIVE_ORDER_LIMIT and not plan.allow_large:
        raise ValueError(
            f"exhaustive sweep over |G| = {spec.order} requires allow_large"
        )
    for label, gens in gensets:
        _validate_boundary_hypotheses(check, spec, gens)
        classify = _classifier_for(check, spec, gens)
        cases = vac = eqs = vios = 0
        if plan.mode == "exhaustive":
            n = len(gens)
            table: list[list[Verdict] | None] = [None] * (spec.order + 1)
            for size in range(1, spec.order + 1):
                table[size] = [classify(size, b) for b in range(n * size + 1)]
            for mask, size, dtot, _ in gray_subset_sweep(spec, gens):
                cases += 1
                v = table[size][dtot]
                if not v.ok:
                    vios += 1
                    lhs, rhs, g = _check_sides(check, spec, gens, size, dtot)
                    report.violations.append(
                        _boundary_witness("violation", check, spec, gens, label, mask, size, dtot, lhs, rhs, g)
                    )
                elif v.vacuous:
                    vac += 1
                elif v.equality:
                    eqs += 1
                    lhs, rhs, g = _check_sides(check, spec, gens, size, dtot)
                    report.equality_witnesses.append(
                        _boundary_witness("equality", check, spec, gens, label, mask, size, dtot, lhs, rhs, g)
                    )
        elif plan.mode == "sample":
            shifters = [spec.shift_table(s) for s in gens]
            for _ in range(plan.sample_size):
                mask = rng.nonempty_mask(spec.order)
                size = mask.bit_count()
                dtot = 0
                for sh in shifters:
                    dtot += (sh.apply(mask) & ~mask).bit_count()
                cases += 1
                v = classify(size, dtot)
                if not v.ok:
                    vios += 1
                    lhs, rhs, g = _check_sides(check, spec, gens, size, dtot)
                    report.violations.append(
                        _boundary_witness("violation", check, spec, gens, label, mask, size, dtot, lhs, rhs, g)
                    )
                elif v.vacuous:
                    vac += 1
                elif v.equality:
                    eqs += 1
                    lhs, rhs, g = _check_sides(check, spec, gens, size, dtot)
                    report.equality_witnesses.append(
                        _boundary_witness("equality", check, spec, gens, label, mask, size, dtot, lhs, rhs, g)
                    )
        else:
            raise ValueError(f"unknown mode {plan.mode!r}")
        report.cases_checked += cases
        report.vacuous += vac
        report.classes.append(
            {"label": label, "cases": cases, "vacuous": vac, "violations": vios, "equalities": eqs}
        )


def _run_claims(plan: VerifyPlan, report: VerifyReport) -> None:
    if plan.moduli is None:
        raise ValueError("claims-compression needs a group")
    spec = GroupSpec(plan.moduli)
    rng = SplitMix64(plan.seed)
    gensets = _generator_seqs(plan, spec, rng)
    if plan.mode == "exhaustive" and spec.order > EXHAUSTIVE_ORDER_LIMIT and not plan.allow_large:
        raise ValueError(f"exhaustive sweep over |G| = {spec.order} requires allow_large")

    def masks_with_counts(gens: GeneratorSeq, ctx: CompressionContext):
        if plan.mode == "exhaustive":
            yield from gray_subset_sweep(spec, gens)
        elif plan.mode == "sample":
            for _ in range(plan.sample_size):
                mask = rng.nonempty_mask(spec.order)
                d = [ctx.boundary_count_mask(mask, j) for j in range(len(gens))]
                yield mask, mask.bit_count(), sum(d), d
        else:
            raise ValueError(f"unknown mode {plan.mode!r}")

    for label, gens in gensets:
        ctx = CompressionContext(gens)
        n = len(gens)
        axes = range(n)
        cases = vios = 0
        for mask, size, _, d in masks_with_counts(gens, ctx):
            cases += 1
            compressed_axes = [i for i in axes if ctx.is_compressed_mask(mask, i)]
            step: list[int] = []
            bad: list[str] = []
            for i in axes:
                ci = ctx.compress_mask(mask, i)
                step.append(ci)
                if ci.bit_count() != size:
                    bad.append(f"cardinality changed along {i}")
                if not ctx.is_compressed_mask(ci, i):
                    bad.append(f"output not compressed along its own axis {i}")
                for j in axes:
                    if ctx.boundary_count_mask(ci, j) > d[j]:
                        bad.append(f"boundary grew for generator {j} after compressing along {i}")
            for i in compressed_axes:
                for j in axes:
                    if not ctx.is_compressed_mask(step[j], i):
                        bad.append(f"compression along {j} destroyed compressedness along {i}")
            full = step[0]
            for i in range(1, n):
                full = ctx.compress_mask(full, i)
            for i in axes:
                if not ctx.is_compressed_mask(full, i):
                    bad.append(f"single pass left the set non-compressed along {i}")
            if bad:
                vios += len(bad)
                report.violations.append(
                    {
                        "kind": "violation",
                        "check": "claims-compression",
                        "label": label,
                        "group": spec.to_obj(),
                        "generators": [list(s.coords) for s in gens],
                        "set": _coords_of_mask(spec, mask),
                        "problems": bad,
                    }
                )
        report.cases_checked += cases
        report.classes.append(
            {"label": label, "cases": cases, "vacuous": 0, "violations": vios, "equalities": 0}
        )


def _run_repa(plan: VerifyPlan, report: VerifyReport) -> None:
    if plan.moduli is None:
        raise ValueError("repa needs a group")
    if not plan.gammas:
        raise ValueError("repa needs at least one gamma threshold")
    spec = GroupSpec(plan.moduli)
    rng = SplitMix64(plan.seed)
    if plan.mode == "sample":
        masks = [rng.nonempty_mask(spec.order) for _ in range(plan.sample_size)]
    elif plan.mode == "exhaustive":
        if spec.order > EXHAUSTIVE_ORDER_LIMIT and not plan.allow_large:
            raise ValueError(f"exhaustive sweep over |G| = {spec.order} requires allow_large")
        masks = list(range(1, 1 << spec.order))
    else:
        raise ValueError(f"unknown mode {plan.mode!r}")
    exp3 = spec.exponent == 3
    p = min_nonzero_order(spec)
    cases = vios = eqs = 0
    for mask in masks:
        A = GroupSet(spec, mask)
        spectrum = diff_spectrum(A)
        size = len(A)
        for gamma in plan.gammas:
            P = spectrum.popular(gamma)
            dim = dim_independent(P, cap=plan.dim_cap).value
            v = classify_popular_dim_exp3(gamma, size, dim) if exp3 else classify_popular_dim(p, gamma, size, dim)
            cases += 1
            if not v.ok or v.equality:
                witness = {
                    "kind": "violation" if not v.ok else "equality",
                    "check": "repa",
                    "group": spec.to_obj(),
                    "set": _coords_of_mask(spec, mask),
                    "gamma": str(Fraction(gamma)),
                    "size": size,
                    "popular_size": len(P),
                    "dim_independent": dim,
                    "variant": "exp3" if exp3 else f"general-p{p}",
                }
                if not v.ok:
                    vios += 1
                    report.violations.append(witness)
                else:
                    eqs += 1
                    report.equality_witnesses.append(witness)
    report.cases_checked += cases
    report.classes.append(
        {"label": "sampled-sets", "cases": cases, "vacuous": 0, "violations": vios, "equalities": eqs}
    )


def _run_avweight(plan: VerifyPlan, report: VerifyReport) -> None:
    if not plan.box:
        raise ValueError("avweight needs a bounding box")
    total = 0
    cases = vios = eqs = 0
    for A in enumerate_downsets(plan.box):
        total += 1
        if len(A) == 0:
            continue
        stats = weight_stats(A)
        cases += 1
        if not stats.bound_holds:
            vios += 1
            report.violations.append(
                {
                    "kind": "violation",
                    "check": "avweight",
                    "set": A.to_obj(),
                    "size": stats.size,
                    "total_weight": stats.total_weight,
                }
            )
        elif stats.is_equality:
            eqs += 1
            report.equality_witnesses.append(
                {
                    "kind": "equality",
                    "check": "avweight",
                    "set": A.to_obj(),
                    "size": stats.size,
                    "total_weight": stats.total_weight,
                }
            )
    report.cases_checked += cases
    report.details["downsets_enumerated"] = total
    report.details["downsets_checked"] = cases
    report.classes.append(
        {"label": "box-" + "x".join(map(str, plan.box)), "cases": cases, "vacuous": 0, "violations": vios, "equalities": eqs}
    )


def _run_lwplus(plan: VerifyPlan, report: VerifyReport) -> None:
    if not plan.box:
        raise ValueError("lwplus needs a bounding box")
    if plan.mode != "sample":
        raise ValueError("lwplus runs in sample mode")
    dims = tuple(int(b) for b in plan.box)
    cells = list(_cartesian(*[range(b + 1) for b in dims]))
    rng = SplitMix64(plan.seed)
    cases = vios = eqs = 0
    for _ in range(plan.sample_size):
        mask = rng.nonempty_mask(len(cells))
        pts = [cells[i] for i in iter_bits(mask)]
        A = LatticeSet(len(dims), pts)
        size = len(A)
        proj = projection_sizes(A)
        cases += 1
        lw_ok = lw_plus_feasible(A.dim, size, proj)
        lw_eq = 4 ** (A.dim * size) == 4 ** sum(proj) * size**size
        lo_ok = loomis_whitney_feasible(size, proj)
        lo_eq = prod(proj) == size ** (A.dim - 1)
        for check, ok, eq in (("lwplus", lw_ok, lw_eq), ("loomis-whitney", lo_ok, lo_eq)):
            if not ok or eq:
                witness = {
                    "kind": "violation" if not ok else "equality",
                    "check": check,
                    "set": A.to_obj(),
                    "size": size,
                    "projections": list(proj),
                }
                if not ok:
                    vios += 1
                    report.violations.append(witness)
                else:
                    eqs += 1
                    report.equality_witnesses.append(witness)
    report.cases_checked += cases
    report.classes.append(
        {"label": "box-" + "x".join(map(str, dims)), "cases": cases, "vacuous": 0, "violations": vios, "equalities": eqs}
    )


def run_verify(plan: VerifyPlan) -> VerifyReport:
    """Execute a plan and return its report (deterministic given the plan)."""
    if plan.theorem not in THEOREM_IDS:
        raise ValueError(f"unknown theorem id {plan.theorem!r}; expected one of {THEOREM_IDS}")
    report = VerifyReport(theorem=plan.theorem)
    t0 = time.perf_counter()
    if plan.theorem in ("exp234", "bl-bound", "generalcase", "cosetdecomp"):
        _run_boundary_theorem(plan, report)
    elif plan.theorem == "claims-compression":
        _run_claims(plan, report)
    elif plan.theorem == "repa":
        _run_repa(plan, report)
    elif plan.theorem == "avweight":
        _run_avweight(plan, report)
    elif plan.theorem == "lwplus":
        _run_lwplus(plan, report)
    report.wall_time = time.perf_counter() - t0
    return report


# -- witness replay --------------------------------------------------------------


def replay_witness(witness: dict) -> bool:
    """Recompute a serialized witness from scratch and confirm its verdict."""
    check = witness["check"]
    kind = witness["kind"]
    if check in ("bl-bound", "exp234", "generalcase", "cosetdecomp"):
        spec = GroupSpec.from_obj(witness["group"])
        gens = GeneratorSeq(spec, tuple(spec.element(c) for c in witness["generators"]))
        A = GroupSet.from_elements(spec, (spec.element(c) for c in witness["set"]))
        size = len(A)
        boundary = sum(boundary_counts(A, gens))
        if size != witness["size"] or boundary != witness["boundary"]:
            return False
        v = _classifier_for(check, spec, gens)(size, boundary)
        return (not v.ok) if kind == "violation" else v.equality
    if check == "repa":
        spec = GroupSpec.from_obj(witness["group"])
        A = GroupSet.from_elements(spec, (spec.element(c) for c in witness["set"]))
        gamma = Fraction(witness["gamma"])
        P = popular_diffs(A, gamma)
        dim = dim_independent(P, cap=max(64, len(P))).value
        if dim != witness["dim_independent"]:
            return False
        if spec.exponent == 3:
            v = classify_popular_dim_exp3(gamma, len(A), dim)
        else:
            v = classify_popular_dim(min_nonzero_order(spec), gamma, len(A), dim)
        return (not v.ok) if kind == "violation" else v.equality
    if check == "avweight":
        A = LatticeSet.from_obj(witness["set"])
        stats = weight_stats(A)
        return (not stats.bound_holds) if kind == "violation" else stats.is_equality
    if check in ("lwplus", "loomis-whitney"):
        A = LatticeSet.from_obj(witness["set"])
        proj = projection_sizes(A)
        size = len(A)
        if check == "lwplus":
            ok = lw_plus_feasible(A.dim, size, proj)
            eq = 4 ** (A.dim * size) == 4 ** sum(proj) * size**size
        else:
            ok = loomis_whitney_feasible(size, proj)
            eq = prod(proj) == size ** (A.dim - 1)
        return (not ok) if kind == "violation" else eq
    if check == "claims-compression":
        spec = GroupSpec.from_obj(witness["group"])
        gens = GeneratorSeq(spec, tuple(spec.element(c) for c in witness["generators"]))
        ctx = CompressionContext(gens)
        mask = GroupSet.from_elements(spec, (spec.element(c) for c in witness["set"])).mask
        size = mask.bit_count()
        found = False
        for i in range(len(gens)):
            ci = ctx.compress_mask(mask, i)
            if ci.bit_count() != size or not ctx.is_compressed_mask(ci, i):
                found = True
            for j in range(len(gens)):
                if ctx.boundary_count_mask(ci, j) > ctx.boundary_count_mask(mask, j):
                    found = True
                if ctx.is_compressed_mask(mask, i) and not ctx.is_compressed_mask(
                    ctx.compress_mask(mask, j), i
                ):
                    found = True
        return found == (kind == "violation")
    raise ValueError(f"cannot replay witness for check {check!r}")


# -- report emission --------------------------------------------------------------


def emit_report(report: VerifyReport, fmt: str = "text") -> str:
    """Render a report as json, tsv (one row per case class) or text."""
    import json as _json

    if fmt == "json":
        return _json.dumps(report.to_obj(), indent=2)
    if fmt == "tsv":
        lines = ["theorem\tclass\tcases\tvacuous\tviolations\tequalities"]
        for c in report.classes:
            lines.append(
                f"{report.theorem}\t{c['label']}\t{c['cases']}\t{c['vacuous']}\t{c['violations']}\t{c['equalities']}"
            )
        return "\n".join(lines) + "\n"
    if fmt == "text":
        lines = []
        if report.passed:
            lines.append(
                f"PASS {report.theorem}: {report.cases_checked} cases"
                f" ({report.vacuous} vacuous, {len(report.equality_witnesses)} equality witnesses)"
            )
        else:
            lines.append(f"FAIL {report.theorem}: {len(report.violations)} violations in {report.cases_checked} cases")
            for w in report.violations[:20]:
                lines.append("  violation: " + _json.dumps(w, sort_keys=True))
        for c in report.classes:
            lines.append(
                f"  class {c['label']}: cases={c['cases']} vacuous={c['vacuous']}"
                f" violations={c['violations']} equalities={c['equalities']}"
            )
        if report.details:
            lines.append("  details: " + _json.dumps(report.details, sort_keys=True))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


# -- worked example builders -------------------------------------------------------


@dataclass(frozen=True)
class ExampleInstance:
    """A constructed instance together with its closed-form statistics.

    ``expected`` holds the closed forms, ``computed`` the values measured on
    the instance; construction fails if they disagree.
    """

    example_id: str
    params: dict
    spec: GroupSpec
    subset: GroupSet
    gens: GeneratorSeq
    expected: dict
    computed: dict


def _self_check(instance: ExampleInstance) -> ExampleInstance:
    for key, want in instance.expected.items():
        got = instance.computed.get(key)
        if got != want:
            raise RuntimeError(
                f"example {instance.example_id} self-check failed on {key}: computed {got}, expected {want}"
            )
    return instance


def _build_subgroup_union(spec: GroupSpec, m: int, n: int, k: int) -> GroupSet:
    """Union of the k blockwise coordinate subgroups, each of rank n//k."""
    d = n // k
    basis = spec.standard_basis()
    out = GroupSet.empty(spec)
    for i in range(k):
        block = GeneratorSeq(spec, basis.elements[i * d : (i + 1) * d])
        out = out | span(block)
    return out


def _example_subgroup_times_basis(m: int, k: int, n: int) -> ExampleInstance:
    if not (m >= 2 and 1 <= k <= n):
        raise ValueError("need m >= 2 and 1 <= k <= n")
    spec = GroupSpec([m] * n)
    basis = spec.standard_basis()
    A = span(GeneratorSeq(spec, basis.elements[:k]))
    gens = GeneratorSeq(spec, tuple(A.elements()) + basis.elements[k:])
    stats = edge_boundary(A, gens)
    expected = {
        "set_size": m**k,
        "gen_count": m**k + n - k,
        "boundary": (n - k) * m**k,
        "gamma": Fraction(m**k, m**k + n - k),
    }
    computed = {
        "set_size": len(A),
        "gen_count": len(gens),
        "boundary": stats.total,
        "gamma": stats.gamma,
    }
    return _self_check(
        ExampleInstance("ex1", {"m": m, "k": k, "n": n}, spec, A, gens, expected, computed)
    )


def _example_union_of_subgroups(m: int, n: int, k: int) -> ExampleInstance:
    if not (m >= 2 and k >= 1 and n >= 1 and n % k == 0):
        raise ValueError("need m >= 2 and k | n")
    spec = GroupSpec([m] * n)
    d = n // k
    A = _build_subgroup_union(spec, m, n, k)
    gens = spec.standard_basis()
    stats = edge_boundary(A, gens)
    expected = {
        "set_size": k * (m**d - 1) + 1,
        "boundary": (m**d - 1) * (k - 1) * n,
    }
    computed = {"set_size": len(A), "boundary": stats.total}
    if k >= 2:
        # boundary stays strictly below (1 - 1/k) n |A|
        expected["strict_slack"] = True
        computed["strict_slack"] = stats.total * k < (k - 1) * n * len(A)
    return _self_check(
        ExampleInstance("ex2", {"m": m, "n": n, "k": k}, spec, A, gens, expected, computed)
    )


def _example_box(m: int, t: int, n: int) -> ExampleInstance:
    if not (2 <= t < m and n >= 1):
        raise ValueError("need 2 <= t < m and n >= 1")
    spec = GroupSpec([m] * n)
    A = GroupSet.from_elements(
        spec, (spec.element(c) for c in _cartesian(*[range(t)] * n))
    )
    gens = spec.standard_basis()
    stats = edge_boundary(A, gens)
    expected = {
        "set_size": t**n,
        "boundary": n * t ** (n - 1),
        "gamma": Fraction(t - 1, t),
    }
    computed = {"set_size": len(A), "boundary": stats.total, "gamma": stats.gamma}
    return _self_check(
        ExampleInstance("ex3", {"m": m, "t": t, "n": n}, spec, A, gens, expected, computed)
    )


def _example_popular_family(m: int, n: int, k: int) -> ExampleInstance:
    if not (m >= 2 and k >= 1 and n >= 1 and n % k == 0):
        raise ValueError("need m >= 2 and k | n")
    spec = GroupSpec([m] * n)
    d = n // k
    A = _build_subgroup_union(spec, m, n, k)
    gens = spec.standard_basis()
    spectrum = diff_spectrum(A)
    r_values = {spectrum.counts[r] for r in A.indices() if r != 0}
    gamma = Fraction(m**d, len(A))
    P = spectrum.popular(gamma)
    expected = {
        "set_size": k * (m**d - 1) + 1,
        "r_nonzero": {m**d},
        "gamma": Fraction(m**d, k * (m**d - 1) + 1),
        "popular_contains_set": True,
    }
    computed = {
        "set_size": len(A),
        "r_nonzero": r_values,
        "gamma": gamma,
        "popular_contains_set": A.issubset(P),
    }
    return _self_check(
        ExampleInstance("ex4", {"m": m, "n": n, "k": k}, spec, A, gens, expected, computed)
    )


_EXAMPLES: dict[str, Callable[..., ExampleInstance]] = {
    "ex1": _example_subgroup_times_basis,
    "ex2": _example_union_of_subgroups,
    "ex3": _example_box,
    "ex4": _example_popular_family,
}


def build_example(example_id: str, **params) -> ExampleInstance:
    """Construct a worked example and verify its closed-form statistics.

    ids: ex1 (subgroup together with extra basis vectors as generators),
    ex2 (union of k blockwise subgroups), ex3 (a box inside C_m^n),
    ex4 (the ex2 family read through its difference spectrum).
    """
    if example_id not in _EXAMPLES:
        raise ValueError(f"unknown example id {example_id!r}; expected one of {sorted(_EXAMPLES)}")
    return _EXAMPLES[example_id](**params)
