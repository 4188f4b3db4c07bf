import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from acycmatch.errors import ArgumentError, DomainError, StructuralError
from acycmatch.ffield import FieldSpec
from acycmatch.subspace import (Subspace, basis_from_dual, contains, coordinates_in, dual_basis, dual_machinery,
                                enumerate_subspaces, gaussian_binomial, intersect, is_primitive,
                                kernel_of, scale_subspace, subfield_fixed, subspace_ops)

F4 = FieldSpec.default(2, 2)
F16 = FieldSpec.default(2, 4)
FIELDS_256 = [(2, 4), (2, 6), (2, 8), (3, 2), (3, 4), (5, 2), (5, 3), (7, 2), (13, 2)]


def S(field, *vecs):
    return Subspace.span(field, [list(v) for v in vecs])


def rand_subspace(rng, field, dim):
    return Subspace.span(field, [[rng.randrange(field.p) for _ in range(field.m)] for _ in range(dim)])


def test_subspace_ops_examples():
    U, V = S(F16, (1, 0, 0, 0), (0, 1, 0, 0)), S(F16, (0, 1, 0, 0), (0, 0, 1, 0))
    ops = subspace_ops(F16, U, V)
    assert ops["intersect"] == S(F16, (0, 1, 0, 0))
    assert ops["sum"].dim == 3 and not ops["contains"]
    assert intersect(U, U) == U and subspace_ops(F16, U, U)["sum"] == U
    assert intersect(U, Subspace.zero(F16)) == Subspace.zero(F16)
    with pytest.raises(StructuralError):
        subspace_ops(F16, U, S(F4, (1, 0)))


@pytest.mark.parametrize("pm", FIELDS_256)
def test_dimension_formula_random(pm):
    F = FieldSpec.default(*pm)
    rng = random.Random(sum(pm))
    for _ in range(200):
        U = rand_subspace(rng, F, rng.randint(0, F.m))
        V = rand_subspace(rng, F, rng.randint(0, F.m))
        ops = subspace_ops(F, U, V)
        assert ops["intersect"].dim + ops["sum"].dim == U.dim + V.dim
        assert contains(ops["sum"], U) and contains(U, ops["intersect"])


@pytest.mark.parametrize("pm", [(2, 4), (3, 2), (5, 2)])
def test_intersection_against_element_sets(pm):
    F = FieldSpec.default(*pm)
    rng = random.Random(7)
    for _ in range(60):
        U, V = rand_subspace(rng, F, rng.randint(0, F.m)), rand_subspace(rng, F, rng.randint(0, F.m))
        ref = oracles.span(F.p, U.basis, F.m) & oracles.span(F.p, V.basis, F.m)
        assert {e.coeffs for e in intersect(U, V).elements()} == ref


@given(st.sampled_from(FIELDS_256[:6]), st.integers(0, 2 ** 32))
def test_echelon_canonicality(pm, seed):
    rnd = random.Random(seed)
    F = FieldSpec.default(*pm)
    U = Subspace.zero(F)
    while U.dim == 0:
        U = rand_subspace(rnd, F, rnd.randint(1, F.m))
    # random invertible recombination plus a redundant vector
    k = U.dim
    while True:
        M = np.array([[rnd.randrange(F.p) for _ in range(k)] for _ in range(k)])
        other = (M @ U.matrix) % F.p
        if Subspace.span(F, other).dim == k:
            break
    extra = (np.array([rnd.randrange(F.p) for _ in range(k)]) @ U.matrix) % F.p
    assert Subspace.span(F, list(other) + [extra]) == U


def test_scale_subspace_examples():
    t1 = F4.element([1, 1])
    assert scale_subspace(F4, t1, S(F4, (0, 1))) == S(F4, (1, 0))
    U = S(F16, (0, 1, 1, 0), (1, 0, 0, 1))
    assert scale_subspace(F16, F16.one, U) == U
    c = F16.element([1, 0, 1, 1])
    assert scale_subspace(F16, c, scale_subspace(F16, F16.inverse(c), U)) == U
    with pytest.raises(DomainError):
        scale_subspace(F16, F16.zero, U)


def test_subfield_fixed_examples():
    assert subfield_fixed(F16, 2) == S(F16, (1, 0, 0, 0), (0, 1, 1, 0))
    assert subfield_fixed(F16, 1) == S(F16, (1, 0, 0, 0))
    assert subfield_fixed(F16, 4) == Subspace.full(F16)
    with pytest.raises(ArgumentError):
        subfield_fixed(F16, 3)


@pytest.mark.parametrize("pm", FIELDS_256)
def test_subfield_closed_with_right_size(pm):
    F = FieldSpec.default(*pm)
    T = F.mul_table
    for d in range(1, F.m + 1):
        if F.m % d:
            continue
        codes = subfield_fixed(F, d).element_codes()
        assert len(codes) == F.p ** d
        members = set(codes.tolist())
        assert set(T[np.ix_(codes, codes)].ravel().tolist()) <= members


def test_is_primitive_examples():
    assert is_primitive(F16, F16.t)
    assert not is_primitive(F16, F16.element([0, 1, 1, 0]))
    F32 = FieldSpec.default(2, 5)
    for c in range(2, F32.q):
        assert is_primitive(F32, F32.decode(c))
    with pytest.raises(DomainError):
        is_primitive(F16, F16.zero)
    assert not is_primitive(F16, subfield_fixed(F16, 2))
    assert not is_primitive(F16, Subspace.zero(F16))


@pytest.mark.parametrize("pm", [(2, 4), (2, 6), (3, 2), (3, 4)])
def test_is_primitive_against_sympy(pm):
    F = FieldSpec.default(*pm)
    ref = oracles.RefField(F.p, F.modulus)
    for e in ref.elements()[1:]:
        assert is_primitive(F, F.element(e)) == ref.is_primitive(e)


@pytest.mark.parametrize("pm,d", [((2, 4), 2), ((2, 3), 1), ((3, 3), 2), ((2, 5), 3), ((5, 2), 1)])
def test_enumerate_counts_gaussian_binomial(pm, d):
    F = FieldSpec.default(*pm)
    spaces = list(enumerate_subspaces(F, d))
    assert len(spaces) == len(set(spaces)) == gaussian_binomial(F.m, d, F.p)
    assert all(s.dim == d for s in spaces)
    assert all(Subspace.span(F, s.basis) == s for s in spaces)


def test_gaussian_binomial_values():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 1, 3) == 13


def test_dual_machinery_examples():
    amb = Subspace.full(F4)
    E = S(F4, (1, 0))
    out = dual_machinery(F4, amb, E)
    assert [f.coords for f in out["orthogonal"]] == [(0, 1)]
    assert dual_machinery(F4, amb, amb)["orthogonal"] == []
    with pytest.raises(ArgumentError):
        dual_machinery(F16, S(F16, (1, 0, 0, 0)), S(F16, (0, 1, 0, 0)))


@given(st.sampled_from([(2, 4), (3, 3), (5, 2), (2, 6)]), st.integers(0, 2 ** 32))
def test_dual_basis_involution(pm, seed):
    rnd = random.Random(seed)
    F = FieldSpec.default(*pm)
    amb = Subspace.zero(F)
    while amb.dim == 0:
        amb = rand_subspace(rnd, F, rnd.randint(1, F.m))
    n = amb.dim
    while True:
        M = np.array([[rnd.randrange(F.p) for _ in range(n)] for _ in range(n)])
        vecs = (M @ amb.matrix) % F.p
        if Subspace.span(F, vecs).dim == n:
            break
    ordered = [F.element(v) for v in vecs]
    duals = dual_basis(amb, ordered)
    assert basis_from_dual(amb, duals) == ordered
    for i, f in enumerate(duals):
        # a_i*(a_j) = delta_ij, and ker of all but one functional is that vector's line
        for j, a in enumerate(ordered):
            assert f(coordinates_in(amb, a), F.p) == (1 if i == j else 0)
        rest = [g for k, g in enumerate(duals) if k != i]
        assert kernel_of(amb, rest) == Subspace.span(F, [ordered[i]])


@pytest.mark.parametrize("pm", [(2, 4), (3, 2)])
def test_orthogonal_dimension(pm):
    F = FieldSpec.default(*pm)
    rng = random.Random(5)
    for _ in range(50):
        amb = rand_subspace(rng, F, rng.randint(1, F.m))
        coeffs = [[rng.randrange(F.p) for _ in range(amb.dim)] for _ in range(rng.randint(0, amb.dim))]
        E = Subspace.span(F, [(np.array(c) @ amb.matrix) % F.p for c in coeffs])
        perp = dual_machinery(F, amb, E)["orthogonal"]
        assert len(perp) == amb.dim - E.dim
        assert contains(kernel_of(amb, perp), E) and kernel_of(amb, perp).dim == E.dim
