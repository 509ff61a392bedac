"""Exhaustive verification sweep over root systems, Hessenberg spaces and J.

Each (system, Hessenberg space) pair is one unit of work; it produces one
record per subset J and a list of violated checks.  Work units are
independent, so they can be farmed out to a process pool; the report is
sorted canonically before it is emitted, which keeps the output identical
for any worker count.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import factorial

from . import __version__
from .betti import (
    admissible_indices,
    contains_negative_simples,
    hessenberg_dimension,
    is_palindromic,
    profile_counts,
    witness_partition,
)
from .bijection import CellBijection, coset_transfer, dual_subset
from .errors import HessBettiError, InvalidInput
from .hessenberg import (
    HessenbergSpace,
    enumerate_hessenberg_spaces,
    levi_mask,
    levi_negatives,
    weyl_type_subsets,
    weyl_type_subsets_brute,
)
from .rootsys import RootSystem, build_root_system, check_type, members
from .weyl import DEFAULT_MAX_ORDER, WeylGroup

log = logging.getLogger(__name__)

from .report import SCHEMA_VERSION
DEFAULT_ORACLE_MAX_M = 12

# number of positive roots, as a closed form per family
POSITIVE_ROOTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}

GROUP_ORDER = {
    "A": lambda n: factorial(n + 1),
    "B": lambda n: 2**n * factorial(n),
    "C": lambda n: 2**n * factorial(n),
    "D": lambda n: 2 ** (n - 1) * factorial(n),
    "E": lambda n: {6: 51_840, 7: 2_903_040, 8: 696_729_600}[n],
    "F": lambda n: 1152,
    "G": lambda n: 12,
}

_FAMILY_ORDER = "ABCDEFG"


def sweep_systems(max_rank: int, types: str = _FAMILY_ORDER, extra=()) -> list[tuple[str, int]]:
    """Valid (type, rank) pairs with rank <= max_rank, plus ``extra`` labels."""
    out = set()
    for t in types.upper():
        if t not in _FAMILY_ORDER:
            raise InvalidInput(f"unknown type letter {t!r}")
        for n in range(1, max_rank + 1):
            try:
                check_type(t, n)
            except InvalidInput:
                continue
            out.add((t, n))
    out.update(extra)
    return sorted(out, key=lambda p: (_FAMILY_ORDER.index(p[0]), p[1]))


class SystemContext:
    def __init__(self, type_label: str, rank: int, max_order: int = DEFAULT_MAX_ORDER):
        self.rs: RootSystem = build_root_system(type_label, rank)
        self.group = WeylGroup(self.rs, max_order)
        self.spaces = enumerate_hessenberg_spaces(self.rs)
        rank = self.rs.rank
        self.subsets = [frozenset(c) for size in range(rank + 1)
                        for c in combinations(range(rank), size)]


_contexts: dict[tuple, SystemContext] = {}


def get_context(type_label: str, rank: int, max_order: int = DEFAULT_MAX_ORDER) -> SystemContext:
    key = (type_label, rank, max_order)
    if key not in _contexts:
        _contexts[key] = SystemContext(type_label, rank, max_order)
    return _contexts[key]


@dataclass
class Outcome:
    records: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    checks: int = 0
    by_name: dict[str, int] = field(default_factory=dict)

    def absorb(self, other: "Outcome") -> None:
        self.records.extend(other.records)
        self.violations.extend(other.violations)
        self.checks += other.checks
        for name, n in other.by_name.items():
            self.by_name[name] = self.by_name.get(name, 0) + n


class _Checker:
    def __init__(self, outcome: Outcome, base: dict):
        self.outcome = outcome
        self.base = base

    def __call__(self, ok: bool, check: str, **detail) -> bool:
        self.outcome.checks += 1
        self.outcome.by_name[check] = self.outcome.by_name.get(check, 0) + 1
        if not ok:
            entry = dict(self.base, check=check)
            if detail:
                entry["detail"] = {k: _plain(v) for k, v in detail.items()}
            self.outcome.violations.append(entry)
        return ok


def _plain(value):
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if isinstance(value, tuple):
        return list(value)
    return value


def _apply_mask(group: WeylGroup, perm, mask: int) -> int:
    out = 0
    for g in members(mask):
        out |= 1 << perm[g]
    return out


def system_checks(ctx: SystemContext) -> Outcome:
    """Structural constants, coset decomposition laws and the J/K coset transfer."""
    rs, group = ctx.rs, ctx.group
    out = Outcome()
    check = _Checker(out, {"system": rs.label})
    n = rs.rank
    check(rs.npos == POSITIVE_ROOTS[rs.type_label](n), "positive_root_count",
          found=rs.npos, expected=POSITIVE_ROOTS[rs.type_label](n))
    check(len(group) == GROUP_ORDER[rs.type_label](n), "group_order",
          found=len(group), expected=GROUP_ORDER[rs.type_label](n))
    check(len(set(group.neg_masks)) == len(group), "inversion_sets_injective")
    neg_mask_all = rs.negative_mask
    for i in range(len(group)):
        inv_pos = group.pos_mask(group.inv[i])
        check(group.lengths[i] == group.neg_masks[i].bit_count() == inv_pos.bit_count(),
              "length_equals_inversions", w=list(group.words[i]))
    check(group.neg_masks[group.w0] == neg_mask_all, "longest_element_inverts_all")

    for js in ctx.subsets:
        ys, vs = group.decomposition(js)
        para = group.parabolic(js)
        sub_j = levi_negatives(rs, js)
        outside = neg_mask_all & ~sub_j
        in_wj = {u.idx for u in para.elements}
        reps = {u.idx for u in para.min_reps}
        check(len(in_wj) * len(reps) == len(group), "parabolic_index", j=js)
        for y in in_wj:
            check(_apply_mask(group, group.perms[y], outside) == outside,
                  "levi_complement_stable", j=js, y=list(group.words[y]))
        ks = dual_subset(group, js)
        k_reps = {u.idx for u in group.parabolic(ks).min_reps}
        _, vs_k = group.decomposition(ks)
        for i in range(len(group)):
            y, v = ys[i], vs[i]
            check(y in in_wj and v in reps and group.compose_idx(y, v) == i,
                  "decomposition_factors", j=js, w=list(group.words[i]))
            check(group.lengths[i] == group.lengths[y] + group.lengths[v],
                  "length_additive", j=js, w=list(group.words[i]))
            vinv = group.perms[group.inv[v]]
            part_v = group.neg_masks[v]
            part_y = _apply_mask(group, vinv, group.neg_masks[y])
            check(not part_v & part_y and part_v | part_y == group.neg_masks[i],
                  "inversion_disjoint_union", j=js, w=list(group.words[i]))
            # coset of w0 w for K is determined by the coset of w for J
            v_k = coset_transfer(group, js, group.elements[v]).idx
            check(v_k == vs_k[group.w0_left[i]] and v_k in k_reps,
                  "coset_transfer_matches_decomposition", j=js, w=list(group.words[i]))
        for v in reps:
            v_k = coset_transfer(group, js, group.elements[v])
            back = coset_transfer(group, ks, v_k)
            check(back.idx == v, "coset_transfer_involution", j=js, v=list(group.words[v]))
    return out


def space_checks(ctx: SystemContext, space: HessenbergSpace,
                 oracle_max_m: int = DEFAULT_ORACLE_MAX_M) -> Outcome:
    """Weyl-type oracle, unique representatives, top dimension, nilpotent complement."""
    rs, group = ctx.rs, ctx.group
    out = Outcome()
    check = _Checker(out, {"system": rs.label, "hess": space.vectors()})
    hm = space.mask
    subsets = weyl_type_subsets(group, space)
    masks = {s.mask for s in subsets}
    for s in subsets:
        check(hm & ~s.mask in masks, "complement_is_weyl_type", s=s.members)
    if space.m_h <= oracle_max_m:
        brute = {s.mask for s in weyl_type_subsets_brute(rs, space)}
        check(brute == masks, "weyl_type_oracle", brute=len(brute), image=len(masks))
    if space.m_h == rs.npos:
        check(len(masks) == len(group), "full_space_weyl_type_count")

    delta_adm = admissible_indices(group, range(rs.rank), hm)
    reps: dict[int, list[int]] = {}
    for i in delta_adm:
        reps.setdefault(group.neg_masks[i] & hm, []).append(i)
    for s in masks:
        check(len(reps.get(s, [])) == 1, "unique_delta_representative",
              s=members(s), found=len(reps.get(s, [])))
    for i in delta_adm:
        comp = reps.get(hm & ~group.neg_masks[i], [])
        if not check(len(comp) == 1, "nilpotent_complement_exists", w=list(group.words[i])):
            continue
        back = reps.get(hm & ~group.neg_masks[comp[0]], [])
        check(back == [i], "nilpotent_complement_involution", w=list(group.words[i]))
        check((group.neg_masks[comp[0]] & hm).bit_count()
              == space.m_h - (group.neg_masks[i] & hm).bit_count(),
              "nilpotent_complement_dimension", w=list(group.words[i]))

    try:
        _, w_h = hessenberg_dimension(group, space)
    except HessBettiError as exc:
        check(False, "dimension_witness", error=str(exc))
    else:
        check((w_h.neg_mask & hm).bit_count() == space.m_h, "dimension_witness",
              w_h=list(w_h.word))
    return out


def case_checks(ctx: SystemContext, space: HessenbergSpace, js: frozenset,
                profiles: dict) -> Outcome:
    """Profile symmetries, witness partition, bijection and Levi restriction for one J."""
    rs, group = ctx.rs, ctx.group
    out = Outcome()
    j_label = [j + 1 for j in sorted(js)]
    check = _Checker(out, {"system": rs.label, "hess": space.vectors(), "j": j_label})
    hm = space.mask
    m = space.m_h
    ks = dual_subset(group, js)
    counts = profiles[js]
    counts_k = profiles[ks]
    check(len(counts) == m + 1, "profile_length")
    check(is_palindromic(counts), "palindromic", counts=counts)
    check(counts == counts_k[::-1], "dual_subset_reversal", counts=counts, counts_k=counts_k)
    check(counts == counts_k, "dual_subset_equal", counts=counts, counts_k=counts_k)

    adm = admissible_indices(group, js, hm)
    check(sum(counts) == len(adm), "profile_total")
    part = witness_partition(group, js, space)
    check(part.sizes_by_dimension() == counts, "witness_partition_aggregate")
    if len(js) == rs.rank:
        check(all(len(ws) == 1 for ws in part.blocks.values()), "full_j_singleton_blocks")
    for s, ws in part.blocks.items():
        check(all(w.neg_mask & hm == s.mask for w in ws), "witness_block_exact", s=s.members)
        _, vs_j = group.decomposition(js)
        cosets = [vs_j[w.idx] for w in ws]
        check(len(set(cosets)) == len(cosets), "distinct_cosets", s=s.members)

    # top dimension and irreducibility
    _, w_h = hessenberg_dimension(group, space)
    top = max(i for i, c in enumerate(counts) if c)
    check(top == m and counts[m] >= 1, "max_cell_dimension", counts=counts)
    check(w_h.idx in set(adm), "dimension_witness_admissible", w_h=list(w_h.word))
    irreducible = contains_negative_simples(group, space)
    if irreducible:
        check(counts[m] == 1, "unique_top_cell", counts=counts)
    if m == rs.npos:
        hist = [0] * (m + 1)
        for length in group.lengths:
            hist[length] += 1
        check(counts == hist, "full_space_length_histogram")
    if m == 0 and len(js) == rs.rank:
        check(counts == [1], "borel_nilpotent_point")

    # main bijection W(J, S) -> W(K, S^c)
    fmap = CellBijection(group, space, js)
    back_map = CellBijection(group, space, ks)
    by_block_k: dict[int, list[int]] = {}
    for i in admissible_indices(group, ks, hm):
        by_block_k.setdefault(group.neg_masks[i] & hm, []).append(i)
    nil_reps = {}
    if len(js) == rs.rank:
        for i in adm:
            nil_reps[group.neg_masks[i] & hm] = i
    roundtrip_total = roundtrip_fixed = 0
    blocks = {s.mask: [w.idx for w in ws] for s, ws in part.blocks.items()}
    for s in {x.mask for x in weyl_type_subsets(group, space)}:
        source = blocks.get(s, [])
        comp = hm & ~s
        images = []
        for i in source:
            try:
                target = fmap.image_idx(i)[0]
            except HessBettiError as exc:
                check(False, "bijection_total", w=list(group.words[i]), error=str(exc))
                continue
            images.append(target)
            if nil_reps:
                check(target == nil_reps.get(comp), "agrees_with_nilpotent_complement",
                      w=list(group.words[i]))
            try:
                roundtrip_total += 1
                roundtrip_fixed += back_map.image_idx(target)[0] == i
            except HessBettiError as exc:
                check(False, "reverse_bijection_total", w=list(group.words[target]), error=str(exc))
        check(len(set(images)) == len(images), "bijection_injective", s=members(s))
        check(set(images) <= set(by_block_k.get(comp, [])), "bijection_lands_in_complement",
              s=members(s))
        check(len(source) == len(by_block_k.get(comp, [])), "witness_cardinality",
              s=members(s), source=len(source), target=len(by_block_k.get(comp, [])))

    # Levi restriction: nonemptiness equivalence and the split of N^-(w) & Phi_H^-
    ys, vs = group.decomposition(js)
    levi_neg = levi_negatives(rs, js)
    adm_set = set(adm)
    npos = rs.npos
    hv_cache: dict[int, int] = {}
    for i in range(len(group)):
        y, v = ys[i], vs[i]
        hv = hv_cache.get(v)
        if hv is None:
            hv = hv_cache[v] = levi_mask(group, hm, v, levi_neg)
        pre = group.simple_preimages[y]
        y_ok = all(pre[j] >= npos or (hv >> pre[j]) & 1 for j in js)
        check(y_ok == (i in adm_set), "levi_nonempty_equivalence", w=list(group.words[i]))
        part_v = group.neg_masks[v] & hm
        part_y = _apply_mask(group, group.perms[group.inv[v]], group.neg_masks[y] & hv)
        check(not part_v & part_y and part_v | part_y == group.neg_masks[i] & hm,
              "hessenberg_inversion_split", w=list(group.words[i]))

    out.records.append({
        "system": rs.label,
        "hess": space.vectors(),
        "j": j_label,
        "k": [k + 1 for k in sorted(ks)],
        "m_h": m,
        "counts": counts,
        "palindromic": is_palindromic(counts),
        "irreducible": irreducible,
        "roundtrip": [roundtrip_fixed, roundtrip_total],
    })
    return out


def run_space(task) -> Outcome:
    """Worker entry point: all J for one (system, space index), or system checks."""
    (type_label, rank), space_index, max_order, oracle_max_m = task
    ctx = get_context(type_label, rank, max_order)
    if space_index is None:
        return system_checks(ctx)
    space = ctx.spaces[space_index]
    out = space_checks(ctx, space, oracle_max_m)
    profiles = {js: profile_counts(ctx.group, js, space) for js in ctx.subsets}
    for js in ctx.subsets:
        out.absorb(case_checks(ctx, space, js, profiles))
    return out


def _record_key(rec):
    return (rec["system"], rec["m_h"], rec["hess"], len(rec["j"]), rec["j"])


def run_sweep(systems, jobs: int = 1, max_order: int = DEFAULT_MAX_ORDER,
              oracle_max_m: int = DEFAULT_ORACLE_MAX_M) -> dict:
    """Run every check for every listed system; returns the report document."""
    summaries = []
    tasks = []
    for type_label, rank in systems:
        ctx = get_context(type_label, rank, max_order)
        summaries.append({
            "system": ctx.rs.label,
            "roots": len(ctx.rs.roots),
            "weyl_order": len(ctx.group),
            "hessenberg_spaces": len(ctx.spaces),
            "cases": len(ctx.spaces) * len(ctx.subsets),
        })
        tasks.append(((type_label, rank), None, max_order, oracle_max_m))
        tasks.extend(((type_label, rank), k, max_order, oracle_max_m)
                     for k in range(len(ctx.spaces)))
    log.info("sweeping %d systems, %d work units, %d jobs", len(systems), len(tasks), jobs)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run_space, tasks, chunksize=4))
    else:
        outcomes = [run_space(t) for t in tasks]
    total = Outcome()
    for o in outcomes:
        total.absorb(o)
    records, violations = total.records, total.violations
    order = {label: k for k, label in enumerate(s["system"] for s in summaries)}
    records.sort(key=lambda r: (order[r["system"]],) + _record_key(r)[1:])
    violations.sort(key=lambda v: (order[v["system"]], repr(sorted(v.items()))))
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "hessbetti",
        "tool_version": __version__,
        "config": {
            "systems": [s["system"] for s in summaries],
            "max_order": max_order,
            "oracle_max_m": oracle_max_m,
        },
        "systems": summaries,
        "case_count": len(records),
        "check_count": total.checks,
        "checks_by_name": total.by_name,
        "violations": violations,
        "ok": not violations,
        "records": records,
    }
