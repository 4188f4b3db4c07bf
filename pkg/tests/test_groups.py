from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st
from sympy import totient

from acycmatch.errors import ArgumentError, StructuralError
from acycmatch.groups import (GroupElement, GroupSpec, Subset, add_elements, cyclic_generator_stats,
                              enumerate_subsets, negate, sumset)


def test_add_examples():
    z5 = GroupSpec.cyclic(5)
    assert add_elements(z5, z5.element(3), z5.element(4)) == z5.element(2)
    g = GroupSpec((2, 3))
    assert add_elements(g, g.element((1, 2)), g.element((1, 2))) == g.element((0, 1))
    assert add_elements(g, g.element((1, 2)), g.zero) == g.element((1, 2))


def test_add_rejects_wrong_shape():
    with pytest.raises(StructuralError):
        add_elements(GroupSpec.cyclic(5), GroupElement((1, 2)), GroupElement((1,)))


@pytest.mark.parametrize("factors", [(7,), (2, 4), (3, 3), (2, 2, 2), (64,)])
def test_group_law_exhaustive(factors):
    g = GroupSpec(factors)
    els = g.elements()
    for x in els:
        assert add_elements(g, x, g.zero) == x
        assert add_elements(g, x, negate(g, x)) == g.zero
        for y in els[:9]:
            assert add_elements(g, x, y) == add_elements(g, y, x)
            for z in els[:5]:
                assert add_elements(g, add_elements(g, x, y), z) == add_elements(g, x, add_elements(g, y, z))


def test_sumset_examples():
    z5 = GroupSpec.cyclic(5)
    A, B = Subset.of(z5, [1, 2]), Subset.of(z5, [1, 3])
    assert str(sumset(z5, A, B)) == "{0,2,3,4}"
    assert sumset(z5, A, Subset.of(z5, [0])) == A
    assert len(sumset(z5, A, Subset.of(z5, []))) == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_sumset_matches_brute_force(n):
    if n < 2:
        return
    g = GroupSpec.cyclic(n)
    subsets = [c for k in range(n + 1) for c in combinations(range(n), k)]
    for a in subsets[::3]:
        for b in subsets[::5]:
            got = sumset(g, Subset.of(g, a), Subset.of(g, b))
            want = sorted({(x + y) % n for x in a for y in b})
            assert [e.residues[0] for e in got] == want
            assert len(got) <= len(a) * len(b)


def test_enumerate_subsets_examples():
    z3 = GroupSpec.cyclic(3)
    assert [str(s) for s in enumerate_subsets(z3, 2)] == ["{0,1}", "{0,2}", "{1,2}"]
    assert [len(s) for s in enumerate_subsets(GroupSpec.cyclic(5), 0)] == [0]
    z7 = GroupSpec.cyclic(7)
    assert len(list(enumerate_subsets(z7, 3, lambda s: z7.zero not in s))) == 20
    with pytest.raises(ArgumentError):
        list(enumerate_subsets(z7, 8))


@given(st.sampled_from([(6,), (2, 3), (9,), (2, 2, 2)]), st.integers(0, 8))
def test_enumerate_counts(factors, size):
    g = GroupSpec(factors)
    size = min(size, g.order)
    got = [s.elements for s in enumerate_subsets(g, size)]
    assert len(got) == comb(g.order, size) == len(set(got))
    assert got == sorted(got)


def test_subset_text_forms():
    z7 = GroupSpec.cyclic(7)
    assert str(Subset.parse(z7, "{6,0,4}")) == "{0,4,6}"
    g = GroupSpec((2, 3))
    s = Subset.parse(g, "{(1,2),(0,1)}")
    assert str(s) == "{(0,1),(1,2)}"
    with pytest.raises(StructuralError):
        Subset(z7, (z7.element(1), z7.element(1)))


def test_cyclic_generator_stats_examples():
    assert cyclic_generator_stats(2, 3) == (4, 4)
    assert cyclic_generator_stats(3, 2) == (6, 3)
    assert cyclic_generator_stats(5, 1) == (4, 1)
    with pytest.raises(ArgumentError):
        cyclic_generator_stats(4, 1)


@pytest.mark.parametrize("p,k", [(2, 1), (2, 7), (3, 5), (5, 3), (7, 2), (13, 2), (241, 1)])
def test_cyclic_generator_stats_vs_totient(p, k):
    m_g, n_g = cyclic_generator_stats(p, k)
    assert m_g == totient(p ** k)
    assert n_g == p ** (k - 1)
