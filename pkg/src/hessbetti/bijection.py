"""Explicit matchings between witness sets.

``CellBijection`` sends ``w`` in W(J, S) to an element of W(K, S^c) with
``K = -w0(J)``: factor ``w0 w = y v`` over the parabolic of K, restrict the
space to the Levi of K through ``v``, and replace ``y`` by the unique
element of W_K that is admissible for the restricted space and has the same
inversion intersection.  The replacement is found by lookup in a table built
once per coset representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .betti import admissible_indices
from .errors import InvalidInput, InvariantViolation
from .hessenberg import (
    ClosureViolation,
    HessenbergSpace,
    WeylTypeSubset,
    is_weyl_type,
    levi_mask,
    levi_negatives,
    validate_hessenberg,
)
from .rootsys import mask_of, members
from .weyl import WeylElement, WeylGroup


@dataclass(frozen=True)
class BijectionRecord:
    source: WeylElement
    target: WeylElement
    w0w: WeylElement
    y: WeylElement
    v: WeylElement
    levi_space: HessenbergSpace
    ybar: WeylElement


def dual_subset(group: WeylGroup, j_set: Iterable[int]) -> frozenset[int]:
    """K = -w0(J) as a set of 0-based simple indices."""
    rs = group.rs
    w0 = group.perms[group.w0]
    out = set()
    for j in j_set:
        g = w0[rs.simple(j)]
        k = rs.npos - 1 - g
        if not 0 <= k < rs.rank:
            raise InvariantViolation(f"w0 does not send alpha_{j + 1} to a negative simple root")
        out.add(k)
    return frozenset(out)


def _as_mask(subset) -> int:
    return subset.mask if isinstance(subset, WeylTypeSubset) else mask_of(subset)


def unique_weyl_rep(group: WeylGroup, space: HessenbergSpace, subset) -> WeylElement:
    """The one ``w`` with ``N^-(w) & Phi_H^- = S`` and ``w^{-1}(Delta)`` in Phi_H."""
    s = _as_mask(subset)
    if not is_weyl_type(group.rs, space, members(s)):
        raise InvalidInput("subset is not of Weyl type in this Hessenberg space")
    hm = space.mask
    hits = [i for i in admissible_indices(group, range(group.rs.rank), hm)
            if group.neg_masks[i] & hm == s]
    if len(hits) != 1:
        raise InvariantViolation(
            f"{len(hits)} Delta-admissible elements realise a Weyl-type subset; expected 1"
        )
    return group.elements[hits[0]]


def nilpotent_complement(group: WeylGroup, space: HessenbergSpace, w: WeylElement) -> WeylElement:
    hm = space.mask
    rs = group.rs
    if group.elements[w.idx] != w or w.idx not in set(
            admissible_indices(group, range(rs.rank), hm)):
        raise InvalidInput(f"{w} does not map every simple root into Phi_H")
    return unique_weyl_rep(group, space, WeylTypeSubset(hm & ~w.neg_mask))


def coset_transfer(group: WeylGroup, j_set: Iterable[int], v_j: WeylElement) -> WeylElement:
    """Minimal representative for K whose inversion set is ``v_J^{-1}(Phi^+ - Phi_J^+) & Phi^+``."""
    rs = group.rs
    j_set = frozenset(j_set)
    if v_j.idx not in {u.idx for u in group.parabolic(j_set).min_reps}:
        raise InvalidInput(f"{v_j} is not a minimal coset representative for J")
    k_set = dual_subset(group, j_set)
    vinv = group.perms[group.inv[v_j.idx]]
    target = 0
    for g in rs.positive:
        if rs.support(g) <= j_set:
            continue
        image = vinv[g]
        if image >= rs.npos:
            target |= 1 << image
    i = group.pos_index.get(target)
    if i is None or i not in {u.idx for u in group.parabolic(k_set).min_reps}:
        raise InvariantViolation(f"no minimal representative for K matches the image of {v_j}")
    return group.elements[i]


class CellBijection:
    """The map W(J, S) -> W(K, S^c) for one Hessenberg space and one J."""

    def __init__(self, group: WeylGroup, space: HessenbergSpace, j_set: Iterable[int]):
        self.group = group
        self.space = space
        self.j_set = frozenset(j_set)
        self.k_set = dual_subset(group, self.j_set)
        self.ys, self.vs = group.decomposition(self.k_set)
        self.levi_neg = levi_negatives(group.rs, self.k_set)
        self.levi_group = [u.idx for u in group.parabolic(self.k_set).elements]
        self._admissible_j = set(admissible_indices(group, self.j_set, space.mask))
        self._admissible_k = set(admissible_indices(group, self.k_set, space.mask))
        self._by_rep: dict[int, tuple[int, dict[int, int]]] = {}
        self._validated: set[int] = set()

    def admissible(self, i: int) -> bool:
        return i in self._admissible_j

    def _levi_table(self, v: int) -> tuple[int, dict[int, int]]:
        hit = self._by_rep.get(v)
        if hit is not None:
            return hit
        group = self.group
        npos = group.rs.npos
        hv = levi_mask(group, self.space.mask, v, self.levi_neg)
        if hv not in self._validated:
            try:
                validate_hessenberg(group.rs, members(hv), levi=self.k_set)
            except ClosureViolation as exc:
                raise InvariantViolation(f"restricted space is not Borel-stable: {exc}") from exc
            self._validated.add(hv)
        ks = sorted(self.k_set)
        table: dict[int, int] = {}
        for y in self.levi_group:
            pre = group.simple_preimages[y]
            if any(pre[k] < npos and not (hv >> pre[k]) & 1 for k in ks):
                continue
            key = group.neg_masks[y] & hv
            if key in table:
                raise InvariantViolation(
                    f"two admissible Levi elements share an inversion intersection "
                    f"({group.elements[table[key]]}, {group.elements[y]})"
                )
            table[key] = y
        self._by_rep[v] = (hv, table)
        return hv, table

    def image_idx(self, i: int) -> tuple[int, int, int, int, int, int]:
        """Return ``(target, w0w, y, v, H_v mask, ybar)`` as indices/masks."""
        group = self.group
        x = group.w0_left[i]
        y, v = self.ys[x], self.vs[x]
        hv, table = self._levi_table(v)
        ybar = table.get(group.neg_masks[y] & hv)
        if ybar is None:
            raise InvariantViolation(f"no admissible Levi representative for {group.elements[i]}")
        target = group.compose_idx(ybar, v)
        hm = self.space.mask
        if target not in self._admissible_k:
            raise InvariantViolation(f"image of {group.elements[i]} is not admissible for K")
        if group.neg_masks[target] & hm != hm & ~group.neg_masks[i]:
            raise InvariantViolation(f"image of {group.elements[i]} misses the complement block")
        return target, x, y, v, hv, ybar

    def record(self, w: WeylElement) -> BijectionRecord:
        if w.idx not in self._admissible_j:
            raise InvalidInput(f"{w} does not map J into Phi_H")
        target, x, y, v, hv, ybar = self.image_idx(w.idx)
        el = self.group.elements
        levi_space = HessenbergSpace(self.group.rs, frozenset(members(hv)), self.k_set)
        return BijectionRecord(el[w.idx], el[target], el[x], el[y], el[v], levi_space, el[ybar])


def theorem_bijection(group: WeylGroup, space: HessenbergSpace, j_set: Iterable[int],
                      w: WeylElement) -> BijectionRecord:
    return CellBijection(group, space, j_set).record(w)
