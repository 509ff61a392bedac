"""Hessenberg spaces as Borel-stable sets of negative roots, and Weyl-type subsets.

A Hessenberg space is recorded by the set of negative roots whose root
spaces it contains.  Subsets of it are bitmasks over global root indices,
so complement and intersection are single integer operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import BudgetExceeded, ClosureViolation, InvalidInput, InvariantViolation
from .rootsys import RootSystem, mask_of, members, subsystem
from .weyl import WeylElement, WeylGroup

MAX_BRUTE_FORCE_M = 20
DEFAULT_MAX_SPACES = 200_000


@dataclass(frozen=True)
class HessenbergSpace:
    """The negative roots ``neg_roots`` of H, optionally inside a Levi subsystem.

    ``levi`` is None for the ambient root system, otherwise the set of
    (0-based) simple roots generating the subsystem the space lives in.
    """

    rs: RootSystem = field(compare=False, repr=False)
    neg_roots: frozenset[int]
    levi: Optional[frozenset[int]] = None

    @property
    def m_h(self) -> int:
        return len(self.neg_roots)

    @cached_property
    def mask(self) -> int:
        return mask_of(self.neg_roots)

    def contains(self, gamma: int) -> bool:
        """Membership in Phi_H: positive roots plus ``neg_roots``."""
        return gamma >= self.rs.npos or gamma in self.neg_roots

    @cached_property
    def triples(self) -> list[tuple[int, int, int]]:
        """Pairs inside the space whose sum is again inside it, as ``(a, b, a+b)``."""
        out = []
        for (a, b), c in self.rs.sums.items():
            if a < b and a in self.neg_roots and b in self.neg_roots and c in self.neg_roots:
                out.append((a, b, c))
        out.sort()
        return out

    def sort_key(self):
        return (self.m_h, sorted(self.neg_roots, reverse=True))

    def vectors(self) -> list[list[int]]:
        return sorted(list(self.rs.roots[g]) for g in self.neg_roots)


@dataclass(frozen=True)
class WeylTypeSubset:
    mask: int

    @property
    def members(self) -> list[int]:
        return members(self.mask)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def complement(self, space: HessenbergSpace) -> "WeylTypeSubset":
        return WeylTypeSubset(space.mask & ~self.mask)


def validate_hessenberg(
    rs: RootSystem, neg_roots: Iterable[int], levi: Optional[Iterable[int]] = None
) -> HessenbergSpace:
    """Check Borel stability against every positive root and return the space.

    Inside a Levi subsystem both the members and the positive roots used for
    the stability check are restricted to that subsystem.
    """
    neg = frozenset(neg_roots)
    ambient = subsystem(rs, levi) if levi is not None else None
    for g in neg:
        if not 0 <= g < rs.npos:
            raise InvalidInput(f"root index {g} is not a negative root")
        if ambient is not None and g not in ambient:
            raise InvalidInput(f"root {list(rs.roots[g])} is outside the Levi subsystem")
    positives = [a for a in rs.positive if ambient is None or a in ambient]
    for g in sorted(neg):
        vg = rs.roots[g]
        for a in positives:
            c = rs.index_of.get(tuple(x + y for x, y in zip(vg, rs.roots[a])))
            if c is not None and c < rs.npos and c not in neg:
                raise ClosureViolation(
                    f"not Borel-stable: {list(vg)} + {list(rs.roots[a])} = "
                    f"{list(rs.roots[c])} is missing",
                    (g, a, c),
                )
    return HessenbergSpace(rs, neg, None if levi is None else frozenset(levi))


def from_vectors(rs: RootSystem, vectors: Iterable[Sequence[int]]) -> HessenbergSpace:
    idx = []
    for vec in vectors:
        key = tuple(int(c) for c in vec)
        if key not in rs.index_of:
            raise InvalidInput(f"{list(key)} is not a root of {rs.label}")
        g = rs.index_of[key]
        if g >= rs.npos:
            raise InvalidInput(f"{list(key)} is not a negative root")
        idx.append(g)
    return validate_hessenberg(rs, idx)


def from_type_a_function(rs: RootSystem, h: Sequence[int]) -> HessenbergSpace:
    """Space for a Hessenberg function ``h`` (1-based, length rank+1) in type A."""
    if rs.type_label != "A":
        raise InvalidInput("Hessenberg functions are only defined for type A")
    n = rs.rank + 1
    h = list(h)
    if len(h) != n:
        raise InvalidInput(f"Hessenberg function must have {n} entries, got {len(h)}")
    for i, hi in enumerate(h, start=1):
        if hi < i:
            raise InvalidInput(f"h({i}) = {hi} violates h(i) >= i")
        if hi > n:
            raise InvalidInput(f"h({i}) = {hi} violates h(i) <= {n}")
        if i > 1 and hi < h[i - 2]:
            raise InvalidInput(f"h is not nondecreasing at position {i}")
    neg = []
    for i in range(1, n + 1):
        for j in range(i + 1, h[i - 1] + 1):
            # matrix entry (j, i) below the diagonal <-> -(alpha_i + ... + alpha_{j-1})
            vec = tuple(-1 if i <= k + 1 < j else 0 for k in range(rs.rank))
            neg.append(rs.index_of[vec])
    return validate_hessenberg(rs, neg)


def to_type_a_function(space: HessenbergSpace) -> list[int]:
    """Inverse of ``from_type_a_function``; the space must contain every -alpha_i."""
    rs = space.rs
    n = rs.rank + 1
    h = []
    for i in range(1, n + 1):
        j = i
        while j < n:
            vec = tuple(-1 if i <= k + 1 < j + 1 else 0 for k in range(rs.rank))
            if rs.index_of[vec] not in space.neg_roots:
                break
            j += 1
        h.append(j)
    return h


def height_cutoff(rs: RootSystem, h: int) -> HessenbergSpace:
    """All negative roots of height at least ``-h``."""
    return validate_hessenberg(rs, [g for g in rs.negative if -rs.height(g) <= h])


def borel(rs: RootSystem) -> HessenbergSpace:
    return HessenbergSpace(rs, frozenset())


def full(rs: RootSystem) -> HessenbergSpace:
    return HessenbergSpace(rs, frozenset(rs.negative))


def enumerate_hessenberg_spaces(
    rs: RootSystem, max_spaces: int = DEFAULT_MAX_SPACES
) -> list[HessenbergSpace]:
    """Every Borel-stable set of negative roots, ordered by size then content.

    Backtracks over the negative roots from height -1 downward; a root may be
    added only once every root it reaches by adding a positive root is in.
    """
    npos = rs.npos
    required = {}
    for g in rs.negative:
        vg = rs.roots[g]
        need = 0
        for a in rs.positive:
            c = rs.index_of.get(tuple(x + y for x, y in zip(vg, rs.roots[a])))
            if c is not None and c < npos:
                need |= 1 << c
        required[g] = need
    order = list(reversed(range(npos)))
    found = []

    def walk(pos, mask):
        if pos == len(order):
            found.append(mask)
            if len(found) > max_spaces:
                raise BudgetExceeded(f"more than {max_spaces} Hessenberg spaces in {rs.label}")
            return
        g = order[pos]
        walk(pos + 1, mask)
        if required[g] & ~mask == 0:
            walk(pos + 1, mask | (1 << g))

    walk(0, 0)
    spaces = [HessenbergSpace(rs, frozenset(members(m))) for m in found]
    spaces.sort(key=HessenbergSpace.sort_key)
    return spaces


def _closed(space: HessenbergSpace, s: int) -> bool:
    for a, b, c in space.triples:
        if (s >> a) & 1 and (s >> b) & 1 and not (s >> c) & 1:
            return False
    return True


def _check_subset(space: HessenbergSpace, s: int) -> None:
    if s & ~space.mask:
        raise InvalidInput("subset is not contained in the Hessenberg space")


def is_closed(rs: RootSystem, space: HessenbergSpace, subset) -> bool:
    s = subset.mask if isinstance(subset, WeylTypeSubset) else mask_of(subset)
    _check_subset(space, s)
    return _closed(space, s)


def is_weyl_type(rs: RootSystem, space: HessenbergSpace, subset) -> bool:
    s = subset.mask if isinstance(subset, WeylTypeSubset) else mask_of(subset)
    _check_subset(space, s)
    return _closed(space, s) and _closed(space, space.mask & ~s)


def _subset_key(s: WeylTypeSubset):
    return (len(s), sorted(s.members, reverse=True))


def weyl_type_subsets(group: WeylGroup, space: HessenbergSpace) -> list[WeylTypeSubset]:
    """Distinct intersections of inversion sets with the space."""
    hm = space.mask
    seen = {m & hm for m in group.neg_masks}
    return sorted((WeylTypeSubset(m) for m in seen), key=_subset_key)


def weyl_type_subsets_brute(
    rs: RootSystem, space: HessenbergSpace, max_m: int = MAX_BRUTE_FORCE_M
) -> list[WeylTypeSubset]:
    """All subsets of the space passing the closure test on both sides."""
    if space.m_h > max_m:
        raise BudgetExceeded(f"brute-force Weyl-type search capped at m_H <= {max_m}")
    bits = sorted(space.neg_roots)
    hm = space.mask
    out = []
    for code in range(1 << len(bits)):
        s = 0
        for k, g in enumerate(bits):
            if (code >> k) & 1:
                s |= 1 << g
        if _closed(space, s) and _closed(space, hm & ~s):
            out.append(WeylTypeSubset(s))
    return sorted(out, key=_subset_key)


def levi_mask(group: WeylGroup, space_mask: int, v: int, levi_neg: int) -> int:
    """Negative roots gamma of the Levi with v^{-1}(gamma) in Phi_H (index form)."""
    npos = group.rs.npos
    vinv = group.perms[group.inv[v]]
    out = 0
    for g in members(levi_neg):
        image = vinv[g]
        if image >= npos or (space_mask >> image) & 1:
            out |= 1 << g
    return out


def levi_negatives(rs: RootSystem, subset: Iterable[int]) -> int:
    return mask_of(g for g in subsystem(rs, subset) if g < rs.npos)


def levi_hessenberg(
    group: WeylGroup, space: HessenbergSpace, v: WeylElement, subset: Iterable[int]
) -> HessenbergSpace:
    """The space ``v . H`` cut down to the Levi subsystem of ``subset``.

    ``v`` must be a minimal coset representative for that subset; the
    result is re-validated as a Hessenberg space of the Levi.
    """
    key = frozenset(subset)
    reps = {u.idx for u in group.parabolic(key).min_reps}
    if v.idx not in reps:
        raise InvalidInput(f"{v} is not a minimal coset representative for this subset")
    m = levi_mask(group, space.mask, v.idx, levi_negatives(group.rs, key))
    try:
        return validate_hessenberg(group.rs, members(m), levi=key)
    except ClosureViolation as exc:
        raise InvariantViolation(f"restricted space is not Borel-stable: {exc}") from exc
