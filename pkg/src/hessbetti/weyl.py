"""Weyl groups acting by permutations of the root table.

An element ``w`` is stored as the tuple ``perm`` with ``perm[g] = w(g)`` for
every root index ``g``.  The group is generated breadth-first by length, so
every stored word is reduced and lexicographically minimal among the
reduced words of that element.  Hot loops work on integer element indices;
``WeylElement`` is the public handle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import factorial
from typing import Iterable, Sequence

from .errors import BudgetExceeded, InvalidInput, InvariantViolation
from .rootsys import RootSystem, _reflect, members

DEFAULT_MAX_ORDER = 60_000


def weyl_order(type_label: str, rank: int) -> int:
    """Closed-form group order, used only to fail fast on the budget."""
    n = rank
    return {
        "A": lambda: factorial(n + 1),
        "B": lambda: 2**n * factorial(n),
        "C": lambda: 2**n * factorial(n),
        "D": lambda: 2 ** (n - 1) * factorial(n),
        "E": lambda: {6: 51_840, 7: 2_903_040, 8: 696_729_600}[n],
        "F": lambda: 1152,
        "G": lambda: 12,
    }[type_label]()


@dataclass(frozen=True, eq=False)
class WeylElement:
    perm: tuple[int, ...]
    word: tuple[int, ...]
    idx: int = field(repr=False)
    neg_mask: int = field(repr=False)

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __str__(self):
        if not self.word:
            return "e"
        return "".join(f"s{j + 1}" for j in self.word)


@dataclass(frozen=True)
class ParabolicData:
    generator_set: frozenset[int]
    elements: list[WeylElement]
    min_reps: list[WeylElement]


def _simple_reflection_perm(rs: RootSystem, j: int) -> tuple[int, ...]:
    return tuple(rs.index_of[_reflect(vec, j, rs.cartan)] for vec in rs.roots)


class WeylGroup(Sequence):
    """All elements of the Weyl group of ``rs`` with cached tables.

    Raises ``BudgetExceeded`` when the group order is above ``max_order``.
    """

    def __init__(self, rs: RootSystem, max_order: int = DEFAULT_MAX_ORDER):
        order = weyl_order(rs.type_label, rs.rank)
        if order > max_order:
            raise BudgetExceeded(
                f"|W({rs.label})| = {order} exceeds the group-order cap {max_order}"
            )
        self.rs = rs
        self.max_order = max_order
        self._generate()
        self._parabolics: dict[frozenset, ParabolicData] = {}
        self._decomp: dict[frozenset, tuple[list[int], list[int]]] = {}

    def _generate(self) -> None:
        rs = self.rs
        gens = [_simple_reflection_perm(rs, j) for j in range(rs.rank)]
        identity = tuple(range(len(rs.roots)))
        perms = [identity]
        words = [()]
        index = {identity: 0}
        level = [0]
        while level:
            found = []
            for i in level:
                p = perms[i]
                for j, s in enumerate(gens):
                    q = tuple(p[g] for g in s)
                    if q not in index:
                        index[q] = -1
                        found.append((words[i] + (j,), q))
            found.sort()
            level = []
            for word, q in found:
                index[q] = len(perms)
                level.append(len(perms))
                perms.append(q)
                words.append(word)
            if len(perms) > self.max_order:
                raise BudgetExceeded(f"group order exceeds the cap {self.max_order}")
        npos = rs.npos
        self.perms = perms
        self.words = words
        self.index = index
        self.lengths = [len(w) for w in words]
        neg_masks = []
        for p in perms:
            m = 0
            for g in range(npos):
                if p[g] >= npos:
                    m |= 1 << g
            neg_masks.append(m)
        self.neg_masks = neg_masks
        self.inv = []
        for p in perms:
            q = [0] * len(p)
            for g, h in enumerate(p):
                q[h] = g
            self.inv.append(index[tuple(q)])
        self.rmul = [[index[tuple(p[g] for g in s)] for p in perms] for s in gens]
        self.lmul = [[self.inv[self.rmul[j][self.inv[i]]] for i in range(len(perms))]
                     for j in range(rs.rank)]
        self.elements = [
            WeylElement(perms[i], words[i], i, neg_masks[i]) for i in range(len(perms))
        ]
        # w^{-1}(alpha_j) for every element and simple root
        self.simple_preimages = [
            tuple(perms[k][npos + j] for j in range(rs.rank)) for k in self.inv
        ]
        top = max(range(len(perms)), key=lambda i: self.lengths[i])
        self.w0 = top
        self.w0_left = [self.index[tuple(perms[top][g] for g in p)] for p in perms]

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    def element(self, word: Iterable[int]) -> WeylElement:
        """Element for a word of 0-based simple reflection indices."""
        i = 0
        for j in word:
            if not 0 <= j < self.rs.rank:
                raise InvalidInput(f"simple reflection index {j + 1} out of range")
            i = self.rmul[j][i]
        return self.elements[i]

    def lookup(self, perm: tuple[int, ...]) -> WeylElement:
        return self.elements[self.index[perm]]

    def apply(self, w: WeylElement, gamma: int) -> int:
        return w.perm[gamma]

    def inverse(self, w: WeylElement) -> WeylElement:
        return self.elements[self.inv[w.idx]]

    def compose(self, w: WeylElement, x: WeylElement) -> WeylElement:
        """The product ``w x`` (apply ``x`` first)."""
        pw = w.perm
        return self.lookup(tuple(pw[g] for g in x.perm))

    def compose_idx(self, i: int, k: int) -> int:
        """Index of ``w_i w_k``, by left-multiplying along the reduced word of ``w_i``."""
        lmul = self.lmul
        for j in reversed(self.words[i]):
            k = lmul[j][k]
        return k

    def pos_mask(self, i: int) -> int:
        """Bitmask of N(w) for element index ``i``."""
        n = len(self.rs.roots)
        m = 0
        for g in members(self.neg_masks[i]):
            m |= 1 << (n - 1 - g)
        return m

    @cached_property
    def pos_index(self) -> dict[int, int]:
        """Element index keyed by the bitmask of N(w); elements are determined by it."""
        return {self.pos_mask(i): i for i in range(len(self))}

    def longest(self) -> WeylElement:
        return self.elements[self.w0]

    def parabolic(self, subset: Iterable[int]) -> ParabolicData:
        key = frozenset(subset)
        if key in self._parabolics:
            return self._parabolics[key]
        for j in key:
            if not 0 <= j < self.rs.rank:
                raise InvalidInput(f"simple root index {j + 1} out of range")
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for i in frontier:
                for j in sorted(key):
                    k = self.rmul[j][i]
                    if k not in seen:
                        seen.add(k)
                        nxt.append(k)
            frontier = nxt
        sub_neg = 0
        for g in range(self.rs.npos):
            if self.rs.support(g) <= key:
                sub_neg |= 1 << g
        # N(v^{-1}) avoids Phi_J^+  <=>  N^-(v^{-1}) avoids Phi_J^-
        reps = [i for i in range(len(self)) if not self.neg_masks[self.inv[i]] & sub_neg]
        data = ParabolicData(
            key,
            [self.elements[i] for i in sorted(seen)],
            [self.elements[i] for i in reps],
        )
        self._parabolics[key] = data
        return data

    def decomposition(self, subset: Iterable[int]) -> tuple[list[int], list[int]]:
        """Arrays ``(y, v)`` of indices with ``w = y v`` for every element index."""
        key = frozenset(subset)
        if key in self._decomp:
            return self._decomp[key]
        order = sorted(key)
        ys, vs = [], []
        for i in range(len(self)):
            y, v = 0, i
            stripped = True
            while stripped:
                stripped = False
                for j in order:
                    # l(s_j v) < l(v)  <=>  v^{-1}(alpha_j) < 0
                    if self.simple_preimages[v][j] < self.rs.npos:
                        v = self.lmul[j][v]
                        y = self.rmul[j][y]
                        stripped = True
                        break
            ys.append(y)
            vs.append(v)
        self._decomp[key] = (ys, vs)
        return ys, vs


def generate_weyl(rs: RootSystem, max_order: int = DEFAULT_MAX_ORDER) -> WeylGroup:
    return WeylGroup(rs, max_order)


def apply(w: WeylElement, gamma: int) -> int:
    return w.perm[gamma]


def inversion_neg(w: WeylElement) -> frozenset[int]:
    """N^-(w): negative roots sent to positive roots by ``w``."""
    return frozenset(members(w.neg_mask))


def longest_element(group: WeylGroup) -> WeylElement:
    return group.longest()


def parabolic(group: WeylGroup, subset: Iterable[int]) -> ParabolicData:
    return group.parabolic(subset)


def decompose(group: WeylGroup, w: WeylElement, subset: Iterable[int]):
    """Split ``w = y v`` with ``y`` in W_J and ``v`` a minimal coset representative."""
    ys, vs = group.decomposition(subset)
    y, v = group.elements[ys[w.idx]], group.elements[vs[w.idx]]
    if y.length + v.length != w.length:
        raise InvariantViolation(f"length not additive for {w} = {y} * {v}")
    return y, v
