import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

import oracles
from acycmatch.errors import ArgumentError, ResourceError
from acycmatch.ffield import FieldSpec
from acycmatch.groups import GroupSpec, Subset
from acycmatch.matching import enumerate_matchings, multiplicity_function
from acycmatch.poly import (MatchingMatrix, Monomial, Polynomial, Variable, build_group_matrix,
                            build_linear_matrix, determinant)
from acycmatch.subspace import Subspace

Z5 = GroupSpec.cyclic(5)


def group_matrix(n, a, b):
    g = GroupSpec.cyclic(n)
    return g, build_group_matrix(g, Subset.of(g, a), Subset.of(g, b))


def test_group_matrix_examples():
    _, M = group_matrix(5, [1, 2], [1, 3])
    assert M.to_json() == [["0", "x[4]"], ["x[3]", "x[0]"]]
    assert group_matrix(5, [2], [1])[1].to_json() == [["x[3]"]]
    assert group_matrix(5, [0], [0])[1].to_json() == [["0"]]
    with pytest.raises(ArgumentError):
        build_group_matrix(Z5, Subset.of(Z5, [1, 2]), Subset.of(Z5, [1]))


def test_determinant_examples():
    det, inv = determinant(group_matrix(5, [1, 2], [1, 3])[1])
    assert str(det) == "-1*x[3]*x[4]" and inv
    det, inv = determinant(group_matrix(5, [2], [1])[1])
    assert str(det) == "1*x[3]" and inv
    det, inv = determinant(group_matrix(5, [0], [0])[1])
    assert str(det) == "0" and not inv


def test_linear_matrix_example():
    F4 = FieldSpec.default(2, 2)
    A = Subspace.span(F4, [F4.t])
    M = build_linear_matrix(F4, [F4.t], [F4.t], A, A)
    assert M.to_json() == [["x[[1,1]]"]]
    full = Subspace.full(F4)
    assert build_linear_matrix(F4, [F4.one, F4.t], [F4.one, F4.t], full, full).to_json() == [["0", "0"], ["0", "0"]]
    with pytest.raises(ArgumentError):
        build_linear_matrix(F4, [F4.t, F4.t], [F4.t, F4.one], full, full)


def test_zero_row_gives_zero_determinant():
    x = Variable.of_group(Z5.element(1))
    M = MatchingMatrix(((x, x, None), (None, None, None), (x, None, x)))
    assert determinant(M)[0].is_zero()


def test_determinant_size_guard():
    x = Variable.of_group(Z5.element(1))
    M = MatchingMatrix(tuple(tuple(x for _ in range(13)) for _ in range(13)))
    with pytest.raises(ResourceError):
        determinant(M)


@pytest.mark.parametrize("n", [5, 7, 9])
def test_permutation_matching_correspondence(n):
    """Each matching contributes one monomial whose exponents are its multiplicity function."""
    g = GroupSpec.cyclic(n)
    rng = random.Random(n)
    for _ in range(40):
        k = rng.randint(1, 4)
        A, B = Subset.of(g, rng.sample(range(n), k)), Subset.of(g, rng.sample(range(n), k))
        M = build_group_matrix(g, A, B)
        det, _ = determinant(M)
        expected: dict = {}
        for phi in enumerate_matchings(g, A, B):
            mono = Monomial.from_counts({Variable.of_group(x): c for x, c in multiplicity_function(g, phi).counts})
            sign = _perm_sign(phi.perm)
            expected[mono] = expected.get(mono, 0) + sign
        assert det == Polynomial(expected)
        assert len(list(enumerate_matchings(g, A, B))) == len(oracles.matchings(n, [a.residues[0] for a in A],
                                                                                [b.residues[0] for b in B]))


def _perm_sign(perm):
    inv = sum(1 for i, j in combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(-3, 3)), max_size=8), st.randoms())
def test_polynomial_canonical(terms, rnd):
    mono = [Monomial.from_counts({Variable.of_group(Z5.element(v)): 1}) for v, _ in terms]
    items = list(zip(mono, [c for _, c in terms]))
    shuffled = items[:]
    rnd.shuffle(shuffled)
    assert str(Polynomial(items)) == str(Polynomial(shuffled))
    assert Polynomial(items) - Polynomial(shuffled) == Polynomial()


def test_polynomial_arithmetic():
    x = Polynomial({Monomial.from_counts({Variable.of_group(Z5.element(1)): 1}): 1})
    y = Polynomial({Monomial.from_counts({Variable.of_group(Z5.element(2)): 1}): 1})
    assert str((x + y) * (x - y)) == "1*x[1]^2 + -1*x[2]^2"
    assert str(-x) == "-1*x[1]"
