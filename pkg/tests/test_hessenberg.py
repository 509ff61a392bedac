from itertools import product

import pytest

from hessbetti.errors import BudgetExceeded, ClosureViolation, InvalidInput
from hessbetti.hessenberg import (
    HessenbergSpace,
    borel,
    enumerate_hessenberg_spaces,
    from_type_a_function,
    full,
    height_cutoff,
    is_closed,
    is_weyl_type,
    levi_hessenberg,
    to_type_a_function,
    validate_hessenberg,
    weyl_type_subsets,
    weyl_type_subsets_brute,
)
from hessbetti.rootsys import subsystem

from conftest import group, system, vec
from oracles import closed_negative_sets_brute

SMALL = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]


def peterson(rs):
    return validate_hessenberg(rs, [vec(rs, -1, 0), vec(rs, 0, -1)])


def test_validate_examples(a2):
    rs, _ = a2
    assert validate_hessenberg(rs, []).m_h == 0
    assert peterson(rs).m_h == 2
    with pytest.raises(ClosureViolation) as info:
        validate_hessenberg(rs, [vec(rs, -1, -1)])
    assert info.value.witness == (vec(rs, -1, -1), vec(rs, 1, 0), vec(rs, 0, -1))


def test_validate_rejects_positive_roots(a2):
    rs, _ = a2
    with pytest.raises(InvalidInput):
        validate_hessenberg(rs, [vec(rs, 1, 0)])


def test_type_a_function_examples(a2):
    rs, _ = a2
    assert from_type_a_function(rs, [1, 2, 3]).neg_roots == frozenset()
    assert from_type_a_function(rs, [2, 3, 3]).neg_roots == {vec(rs, -1, 0), vec(rs, 0, -1)}
    assert from_type_a_function(rs, [3, 3, 3]).neg_roots == frozenset(rs.negative)


@pytest.mark.parametrize("h,fragment", [
    ([1, 2], "3 entries"), ([1, 1, 3], "h\\(i\\) >= i"), ([3, 2, 3], "nondecreasing"),
    ([2, 3, 4], "<= 3"),
])
def test_type_a_function_errors(a2, h, fragment):
    with pytest.raises(InvalidInput, match=fragment):
        from_type_a_function(a2[0], h)


def test_type_a_function_needs_type_a():
    with pytest.raises(InvalidInput):
        from_type_a_function(system("B2"), [2, 2])


@pytest.mark.parametrize("label,count", [("A1", 2), ("A2", 5), ("A3", 14), ("B2", 6),
                                         ("G2", 8), ("B3", 20), ("C3", 20)])
def test_enumeration_matches_brute_force(label, count):
    rs = system(label)
    spaces = enumerate_hessenberg_spaces(rs)
    assert len(spaces) == count
    ours = {frozenset(rs.roots[g] for g in s.neg_roots) for s in spaces}
    assert ours == set(closed_negative_sets_brute(rs.cartan))
    keys = [s.sort_key() for s in spaces]
    assert keys == sorted(keys)


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_hessenberg_spaces(system("B3"), max_spaces=5)


def test_is_closed_examples(a2):
    rs, _ = a2
    h = full(rs)
    assert is_closed(rs, h, [])
    assert is_closed(rs, h, h.neg_roots)
    assert not is_closed(rs, h, [vec(rs, -1, 0), vec(rs, 0, -1)])
    with pytest.raises(InvalidInput):
        is_closed(rs, peterson(rs), [vec(rs, -1, -1)])


def test_is_weyl_type_examples(a2):
    rs, _ = a2
    h = full(rs)
    assert is_weyl_type(rs, h, [])
    assert is_weyl_type(rs, h, [vec(rs, -1, 0)])
    assert not is_weyl_type(rs, h, [vec(rs, -1, -1)])


def test_weyl_type_subsets_examples(a2):
    rs, W = a2
    assert [s.mask for s in weyl_type_subsets(W, borel(rs))] == [0]
    pet = weyl_type_subsets(W, peterson(rs))
    assert len(pet) == 4
    assert {s.mask for s in pet} == {s.mask for s in weyl_type_subsets_brute(rs, peterson(rs))}
    assert len(weyl_type_subsets(W, full(rs))) == 6


@pytest.mark.parametrize("label", SMALL)
def test_weyl_type_oracle_equivalence(label):
    rs, W = system(label), group(label)
    for space in enumerate_hessenberg_spaces(rs):
        image = {s.mask for s in weyl_type_subsets(W, space)}
        brute = {s.mask for s in weyl_type_subsets_brute(rs, space)}
        assert image == brute
        assert all(space.mask & ~m in image for m in image)


@pytest.mark.parametrize("label", SMALL)
def test_full_space_subsets_are_inversion_sets(label):
    rs, W = system(label), group(label)
    subsets = weyl_type_subsets(W, full(rs))
    assert len(subsets) == len(W)


def test_brute_force_cap():
    rs = system("A3")
    with pytest.raises(BudgetExceeded):
        weyl_type_subsets_brute(rs, full(rs), max_m=5)


def test_levi_examples(a2):
    rs, W = a2
    h = peterson(rs)
    assert levi_hessenberg(W, h, W.identity, {0}).neg_roots == h.neg_roots & subsystem(rs, {0})
    assert levi_hessenberg(W, h, W.element([0, 1]), {1}).neg_roots == {vec(rs, 0, -1)}
    empty = levi_hessenberg(W, h, W.element([1, 0]), set())
    assert empty.neg_roots == frozenset() and empty.levi == frozenset()
    with pytest.raises(InvalidInput):
        levi_hessenberg(W, h, W.element([1]), {1})


@pytest.mark.parametrize("label", SMALL)
def test_levi_restriction_always_valid(label):
    rs, W = system(label), group(label)
    for space in enumerate_hessenberg_spaces(rs):
        for code in range(1 << rs.rank):
            ks = {j for j in range(rs.rank) if code >> j & 1}
            for v in W.parabolic(ks).min_reps:
                restricted = levi_hessenberg(W, space, v, ks)
                assert isinstance(restricted, HessenbergSpace)


@pytest.mark.parametrize("label", SMALL + ["F4"])
def test_height_cutoff_valid(label):
    rs = system(label)
    for h in range(0, rs.height(len(rs.roots) - 1) + 1):
        space = height_cutoff(rs, h)
        assert all(-rs.height(g) <= h for g in space.neg_roots)


@pytest.mark.parametrize("label", ["A2", "A3", "A4"])
def test_type_a_round_trip(label):
    rs = system(label)
    n = rs.rank + 1
    simples = {rs.npos - 1 - j for j in range(rs.rank)}
    spaces = [s for s in enumerate_hessenberg_spaces(rs) if simples <= s.neg_roots]
    functions = [h for h in product(range(1, n + 1), repeat=n)
                 if all(h[i] >= i + 2 for i in range(n - 1)) and h[-1] == n
                 and all(a <= b for a, b in zip(h, h[1:]))]
    assert len(spaces) == len(functions)
    for space in spaces:
        h = to_type_a_function(space)
        assert tuple(h) in functions
        assert from_type_a_function(rs, h) == space
