"""Finite crystallographic root systems as integer coefficient vectors.

Every root is stored as its coefficient vector over the simple roots, so all
arithmetic is exact.  Roots are ordered by height, ties broken by descending
lexicographic order of the coefficient vector.  With this order the negative
roots occupy indices ``0 .. npos-1``, the positive roots ``npos .. 2*npos-1``,
the simple root ``alpha_j`` (0-based ``j``) sits at ``npos + j`` and negation
is the reflection ``i -> 2*npos - 1 - i`` of the index range.

Cartan convention: ``cartan[i][j] = <alpha_i, alpha_j^vee>``, so the simple
reflection acts by ``s_j(alpha_i) = alpha_i - cartan[i][j] * alpha_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

from .errors import InvalidInput

Vector = tuple[int, ...]

# minimum / allowed ranks for each classical and exceptional family
_RANK_RULES = {
    "A": (lambda n: n >= 1, "type A requires rank >= 1"),
    "B": (lambda n: n >= 2, "type B requires rank >= 2"),
    "C": (lambda n: n >= 3, "type C requires rank >= 3 (C2 is B2)"),
    "D": (lambda n: n >= 4, "type D requires rank >= 4 (D3 is A3)"),
    "E": (lambda n: 6 <= n <= 8, "type E requires rank 6, 7 or 8"),
    "F": (lambda n: n == 4, "type F requires rank 4"),
    "G": (lambda n: n == 2, "type G requires rank 2"),
}


def _dynkin_data(type_label: str, rank: int):
    """Return (squared lengths, edges) for the Bourbaki-labelled diagram."""
    n = rank
    chain = [(i, i + 1) for i in range(n - 1)]
    if type_label == "A":
        return [2] * n, chain
    if type_label == "B":
        return [2] * (n - 1) + [1], chain
    if type_label == "C":
        return [1] * (n - 1) + [2], chain
    if type_label == "D":
        return [2] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if type_label == "E":
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
        return [2] * n, edges
    if type_label == "F":
        return [2, 2, 1, 1], chain
    if type_label == "G":
        return [1, 3], chain
    raise InvalidInput(f"unknown type label {type_label!r}; expected one of A-G")


def cartan_matrix(type_label: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with entries ``<alpha_i, alpha_j^vee>``."""
    check_type(type_label, rank)
    lengths, edges = _dynkin_data(type_label, rank)
    a = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        a[i][i] = 2
    for i, j in edges:
        longest = max(lengths[i], lengths[j])
        # 2 (alpha_i, alpha_j) / (alpha_j, alpha_j) with (alpha_i, alpha_j) = -longest / 2
        a[i][j] = -(longest // lengths[j])
        a[j][i] = -(longest // lengths[i])
    return tuple(tuple(row) for row in a)


def check_type(type_label: str, rank: int) -> None:
    if type_label not in _RANK_RULES:
        raise InvalidInput(f"unknown type label {type_label!r}; expected one of A-G")
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise InvalidInput(f"rank must be an integer, got {rank!r}")
    ok, message = _RANK_RULES[type_label]
    if not ok(rank):
        raise InvalidInput(f"{type_label}{rank} is not a finite type: {message}")


def parse_label(label: str) -> tuple[str, int]:
    """Parse a label such as ``"A2"`` or ``"f4"`` into ``("A", 2)``."""
    text = label.strip()
    if len(text) < 2 or not text[1:].isdigit():
        raise InvalidInput(f"cannot parse root system label {label!r}; expected e.g. A2, B3, G2")
    type_label, rank = text[0].upper(), int(text[1:])
    check_type(type_label, rank)
    return type_label, rank


def _reflect(vec: Vector, j: int, cartan) -> Vector:
    pairing = sum(c * cartan[i][j] for i, c in enumerate(vec))
    if pairing == 0:
        return vec
    out = list(vec)
    out[j] -= pairing
    return tuple(out)


def _sort_key(vec: Vector):
    return (sum(vec), tuple(-c for c in vec))


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    roots: tuple[Vector, ...]
    index_of: dict = field(compare=False, repr=False)

    @property
    def label(self) -> str:
        return f"{self.type_label}{self.rank}"

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def npos(self) -> int:
        return len(self.roots) // 2

    @property
    def positive(self) -> range:
        return range(self.npos, len(self.roots))

    @property
    def negative(self) -> range:
        return range(self.npos)

    def simple(self, j: int) -> int:
        """Root index of the simple root alpha_j (0-based j)."""
        return self.npos + j

    def simple_indices(self, subset: Iterable[int] = None) -> list[int]:
        js = range(self.rank) if subset is None else sorted(subset)
        return [self.npos + j for j in js]

    def height(self, a: int) -> int:
        return sum(self.roots[a])

    @cached_property
    def positive_mask(self) -> int:
        return ((1 << self.npos) - 1) << self.npos

    @cached_property
    def negative_mask(self) -> int:
        return (1 << self.npos) - 1

    @cached_property
    def sums(self) -> dict[tuple[int, int], int]:
        """All pairs ``(a, b)`` whose vector sum is a root, mapped to that root."""
        table = {}
        n = len(self.roots)
        for a in range(n):
            va = self.roots[a]
            for b in range(n):
                vb = self.roots[b]
                c = self.index_of.get(tuple(x + y for x, y in zip(va, vb)))
                if c is not None:
                    table[a, b] = c
        return table

    def support(self, a: int) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.roots[a]) if c)

    def __str__(self) -> str:
        return self.label


def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Generate all roots of the given finite type by reflection closure.

    >>> len(build_root_system("G", 2).roots)
    12
    """
    type_label = type_label.upper() if isinstance(type_label, str) else type_label
    check_type(type_label, rank)
    cartan = cartan_matrix(type_label, rank)
    simple = [tuple(int(i == j) for i in range(rank)) for j in range(rank)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for vec in frontier:
            for j in range(rank):
                image = _reflect(vec, j, cartan)
                if image not in found:
                    found.add(image)
                    nxt.append(image)
        frontier = nxt
    roots = tuple(sorted(found, key=_sort_key))
    index_of = {vec: i for i, vec in enumerate(roots)}
    return RootSystem(type_label, rank, cartan, roots, index_of)


def root_sum(rs: RootSystem, a: int, b: int) -> Optional[int]:
    """Index of ``roots[a] + roots[b]`` if that vector is a root, else None."""
    va, vb = rs.roots[a], rs.roots[b]
    return rs.index_of.get(tuple(x + y for x, y in zip(va, vb)))


def negate(rs: RootSystem, a: int) -> int:
    return len(rs.roots) - 1 - a


def is_positive(rs: RootSystem, a: int) -> bool:
    return a >= rs.npos


def subsystem(rs: RootSystem, subset: Iterable[int]) -> frozenset[int]:
    """Indices of the roots supported on the simple roots in ``subset``."""
    allowed = set(subset)
    return frozenset(
        a for a, vec in enumerate(rs.roots)
        if all(c == 0 or i in allowed for i, c in enumerate(vec))
    )


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def members(mask: int) -> list[int]:
    """Sorted bit positions set in ``mask``."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out
