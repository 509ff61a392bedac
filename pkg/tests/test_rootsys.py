import pytest
from hypothesis import given, strategies as st

from hessbetti.errors import InvalidInput
from hessbetti.rootsys import (
    build_root_system,
    cartan_matrix,
    is_positive,
    negate,
    parse_label,
    root_sum,
    subsystem,
)

from conftest import system, vec
from oracles import positive_roots_by_strings

# closed forms for |Phi^+|
CLOSED_FORM = {
    "A1": 1, "A2": 3, "A3": 6, "A4": 10, "B2": 4, "B3": 9, "B4": 16, "C3": 9, "C4": 16,
    "D4": 12, "D5": 20, "G2": 6, "F4": 24, "E6": 36, "E7": 63, "E8": 120,
}

SMALL = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]


@pytest.mark.parametrize("label", sorted(CLOSED_FORM))
def test_positive_root_count(label):
    rs = system(label)
    assert rs.npos == CLOSED_FORM[label]
    assert len(rs.roots) == 2 * CLOSED_FORM[label]
    # independent recomputation by alpha-strings
    assert positive_roots_by_strings(rs.cartan) == {rs.roots[a] for a in rs.positive}


@pytest.mark.parametrize("label", sorted(CLOSED_FORM))
def test_table_invariants(label):
    rs = system(label)
    roots = rs.roots
    assert len(set(roots)) == len(roots)
    assert tuple([0] * rs.rank) not in roots
    for a in range(len(roots)):
        assert roots[negate(rs, a)] == tuple(-c for c in roots[a])
        assert is_positive(rs, a) == all(c >= 0 for c in roots[a])
        assert is_positive(rs, a) or all(c <= 0 for c in roots[a])
    for j in range(rs.rank):
        assert roots[rs.simple(j)] == tuple(int(i == j) for i in range(rs.rank))
    heights = [sum(r) for r in roots]
    assert heights == sorted(heights)


# the Cartan convention is only visible through which root is highest;
# B_n and C_n (and their transposes) have the same root count
@pytest.mark.parametrize("label,highest", [
    ("B2", (1, 2)), ("B3", (1, 2, 2)), ("C3", (2, 2, 1)), ("G2", (3, 2)),
    ("F4", (2, 3, 4, 2)), ("D4", (1, 2, 1, 1)), ("E6", (1, 2, 2, 3, 2, 1)),
    ("E8", (2, 3, 4, 6, 5, 4, 3, 2)),
])
def test_highest_root(label, highest):
    assert system(label).roots[-1] == highest


def test_cartan_entries():
    assert cartan_matrix("B", 2) == ((2, -2), (-1, 2))
    assert cartan_matrix("G", 2) == ((2, -1), (-3, 2))


def test_a1_and_a2_examples():
    a1 = build_root_system("A", 1)
    assert sorted(a1.roots) == [(-1,), (1,)]
    rs = system("A2")
    assert {rs.roots[a] for a in rs.positive} == {(1, 0), (0, 1), (1, 1)}
    assert len(system("G2").roots) == 12


def test_root_sum_examples():
    rs = system("A2")
    assert root_sum(rs, vec(rs, 1, 0), vec(rs, 0, 1)) == vec(rs, 1, 1)
    assert root_sum(rs, vec(rs, 1, 0), vec(rs, 1, 0)) is None
    assert root_sum(rs, vec(rs, -1, 0), vec(rs, 1, 1)) == vec(rs, 0, 1)


def test_negate_and_sign_examples():
    rs = system("A2")
    assert negate(rs, vec(rs, 1, 0)) == vec(rs, -1, 0)
    assert is_positive(rs, vec(rs, 1, 1))
    assert not is_positive(rs, vec(rs, 0, -1))


def test_subsystem_examples():
    rs = system("A2")
    assert subsystem(rs, {0}) == {vec(rs, 1, 0), vec(rs, -1, 0)}
    assert subsystem(rs, set()) == frozenset()
    assert subsystem(rs, {0, 1}) == frozenset(range(6))


@pytest.mark.parametrize("label", SMALL + ["F4"])
def test_subsystem_closed_under_sums(label):
    rs = system(label)
    for code in range(1 << rs.rank):
        sub = subsystem(rs, [j for j in range(rs.rank) if code >> j & 1])
        for a in sub:
            for b in sub:
                c = root_sum(rs, a, b)
                assert c is None or c in sub


@pytest.mark.parametrize("label", SMALL + ["F4", "D4"])
def test_height_induction(label):
    rs = system(label)
    simple = [rs.simple(j) for j in range(rs.rank)]
    for g in rs.positive:
        if g in simple:
            continue
        assert any(
            (c := root_sum(rs, g, negate(rs, a))) is not None and is_positive(rs, c)
            for a in simple
        )


@given(st.sampled_from(SMALL + ["F4"]), st.data())
def test_root_sum_symmetries(label, data):
    rs = system(label)
    a = data.draw(st.integers(0, len(rs.roots) - 1))
    b = data.draw(st.integers(0, len(rs.roots) - 1))
    c = root_sum(rs, a, b)
    assert root_sum(rs, b, a) == c
    neg = root_sum(rs, negate(rs, a), negate(rs, b))
    assert neg == (None if c is None else negate(rs, c))


@pytest.mark.parametrize("t,n,fragment", [
    ("A", 0, "rank >= 1"), ("B", 1, "rank >= 2"), ("C", 2, "rank >= 3"),
    ("D", 3, "rank >= 4"), ("E", 5, "rank 6, 7 or 8"), ("F", 3, "rank 4"),
    ("G", 3, "rank 2"), ("H", 3, "unknown type"),
])
def test_invalid_types(t, n, fragment):
    with pytest.raises(InvalidInput, match=fragment):
        build_root_system(t, n)


def test_parse_label():
    assert parse_label("f4") == ("F", 4)
    with pytest.raises(InvalidInput):
        parse_label("A")
    with pytest.raises(InvalidInput):
        parse_label("C2")


def test_e7_e8_construct():
    assert len(system("E7").roots) == 126
    assert len(system("E8").roots) == 240
