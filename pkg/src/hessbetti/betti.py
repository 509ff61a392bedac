"""Cell counts of regular Hessenberg varieties.

The regular element is represented by the set ``J`` of (0-based) simple
roots.  A Schubert cell ``C_w`` meets the variety iff ``w^{-1}(J)`` lies in
Phi_H, and the intersection then has dimension ``|N^-(w) & Phi_H^-|``.
Profiles are indexed by complex dimension; the Poincare polynomial puts
``counts[i]`` on ``q^(2i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import InvariantViolation
from .hessenberg import HessenbergSpace, WeylTypeSubset, _subset_key
from .weyl import WeylElement, WeylGroup


@dataclass(frozen=True)
class BettiProfile:
    counts: tuple[int, ...]
    j_set: frozenset[int]
    space: HessenbergSpace

    @property
    def total(self) -> int:
        return sum(self.counts)

    def poincare(self, var: str = "q") -> str:
        return poincare_polynomial(self.counts, var)


@dataclass(frozen=True)
class WitnessPartition:
    """Admissible elements grouped by ``N^-(w) & Phi_H^-``."""

    j_set: frozenset[int]
    space: HessenbergSpace
    blocks: dict[WeylTypeSubset, list[WeylElement]]

    def sizes_by_dimension(self) -> list[int]:
        counts = [0] * (self.space.m_h + 1)
        for s, ws in self.blocks.items():
            counts[len(s)] += len(ws)
        return counts


def admissible_indices(group: WeylGroup, j_set: Iterable[int], space_mask: int) -> list[int]:
    """Element indices ``w`` with ``w^{-1}(J)`` inside Phi_H."""
    npos = group.rs.npos
    js = sorted(j_set)
    out = []
    for i, pre in enumerate(group.simple_preimages):
        for j in js:
            g = pre[j]
            if g < npos and not (space_mask >> g) & 1:
                break
        else:
            out.append(i)
    return out


def cell_nonempty(group: WeylGroup, w: WeylElement, j_set: Iterable[int],
                  space: HessenbergSpace) -> bool:
    winv = group.inverse(w)
    rs = group.rs
    return all(space.contains(winv.perm[rs.simple(j)]) for j in j_set)


def cell_dimension(group: WeylGroup, w: WeylElement, space: HessenbergSpace) -> int:
    return (w.neg_mask & space.mask).bit_count()


def profile_counts(group: WeylGroup, j_set: Iterable[int], space: HessenbergSpace) -> list[int]:
    hm = space.mask
    counts = [0] * (space.m_h + 1)
    masks = group.neg_masks
    for i in admissible_indices(group, j_set, hm):
        counts[(masks[i] & hm).bit_count()] += 1
    return counts


def betti_profile(group: WeylGroup, j_set: Iterable[int], space: HessenbergSpace) -> BettiProfile:
    j_set = frozenset(j_set)
    return BettiProfile(tuple(profile_counts(group, j_set, space)), j_set, space)


def hessenberg_dimension(group: WeylGroup, space: HessenbergSpace) -> tuple[int, WeylElement]:
    """``(m_H, w_H)`` where ``w_H`` is the longest element of the parabolic
    generated by the simple roots whose negatives lie in the space."""
    rs = group.rs
    delta_h = [j for j in range(rs.rank) if rs.npos - 1 - j in space.neg_roots]
    w_h = max(group.parabolic(delta_h).elements, key=lambda x: x.length)
    dim = cell_dimension(group, w_h, space)
    if dim != space.m_h:
        raise InvariantViolation(f"cell of {w_h} has dimension {dim}, expected m_H = {space.m_h}")
    return space.m_h, w_h


def is_palindromic(profile: Union[BettiProfile, Sequence[int]]) -> bool:
    counts = list(profile.counts if isinstance(profile, BettiProfile) else profile)
    return counts == counts[::-1]


def witness_partition(group: WeylGroup, j_set: Iterable[int],
                      space: HessenbergSpace) -> WitnessPartition:
    j_set = frozenset(j_set)
    hm = space.mask
    grouped: dict[int, list[WeylElement]] = {}
    for i in admissible_indices(group, j_set, hm):
        grouped.setdefault(group.neg_masks[i] & hm, []).append(group.elements[i])
    blocks = {WeylTypeSubset(m): ws for m, ws in grouped.items()}
    ordered = dict(sorted(blocks.items(), key=lambda kv: _subset_key(kv[0])))
    return WitnessPartition(j_set, space, ordered)


def contains_negative_simples(group: WeylGroup, space: HessenbergSpace) -> bool:
    rs = group.rs
    return all(rs.npos - 1 - j in space.neg_roots for j in range(rs.rank))


def irreducibility_criterion(group: WeylGroup, space: HessenbergSpace) -> bool:
    """True iff every negative simple root lies in the space.

    When it does, checks that each J has exactly one cell of top dimension.
    """
    if not contains_negative_simples(group, space):
        return False
    rank = group.rs.rank
    for code in range(1 << rank):
        js = [j for j in range(rank) if (code >> j) & 1]
        top = profile_counts(group, js, space)[-1]
        if top != 1:
            raise InvariantViolation(
                f"{top} top-dimensional cells for J = {[j + 1 for j in js]}"
            )
    return True


def poincare_polynomial(counts: Sequence[int], var: str = "q") -> str:
    terms = []
    for i, c in enumerate(counts):
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
            continue
        power = var if 2 * i == 1 else f"{var}^{2 * i}"
        terms.append(power if c == 1 else f"{c}{power}")
    return " + ".join(terms) if terms else "0"
