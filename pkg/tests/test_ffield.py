import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from acycmatch.errors import ArgumentError, DomainError, ResourceError
from acycmatch.ffield import FieldElement, FieldSpec, default_modulus, degree_stats, field_mul_inv

SMALL = [(2, m) for m in range(1, 7)] + [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2)]
UP_TO_256 = SMALL + [(2, 7), (2, 8), (3, 4), (5, 3), (11, 2), (13, 2)]


def test_field_mul_inv_examples():
    F4 = FieldSpec.default(2, 2)
    t = F4.t
    t1 = F4.element([1, 1])
    assert field_mul_inv(F4, t, t1) == (F4.one, t1)
    F16 = FieldSpec.default(2, 4)
    assert F16.mul(F16.t, F16.element([0, 0, 0, 1])) == F16.element([1, 1, 0, 0])
    F9 = FieldSpec.default(3, 2)
    for c in range(F9.q):
        a = F9.decode(c)
        assert F9.mul(a, F9.one) == a
    with pytest.raises(DomainError):
        field_mul_inv(F4, F4.zero, t)


def test_default_modulus_examples():
    assert default_modulus(2, 2) == (1, 1, 1)
    assert default_modulus(2, 3) == (1, 1, 0, 1)
    assert default_modulus(2, 4) == (1, 1, 0, 0, 1)
    with pytest.raises(ArgumentError):
        default_modulus(4, 2)
    with pytest.raises(ResourceError):
        default_modulus(2, 21)


@pytest.mark.parametrize("p,m", [(2, 5), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_default_modulus_is_least_irreducible(p, m):
    """Compare against sympy's irreducibility test in the same pinned order."""
    from itertools import product
    from sympy import GF, Poly, symbols
    x = symbols("x")
    for high_to_low in product(range(p), repeat=m):
        coeffs = [1] + list(high_to_low)
        if Poly(coeffs, x, domain=GF(p)).is_irreducible:
            assert default_modulus(p, m) == tuple(reversed(coeffs))
            return


def test_reducible_modulus_rejected():
    with pytest.raises(ArgumentError):
        FieldSpec(2, 2, (1, 0, 1))
    with pytest.raises(ArgumentError):
        FieldSpec(2, 2, (1, 1, 0))


def _add_table(F):
    d = F.digits
    return F.codes_of((d[:, None, :] + d[None, :, :]) % F.p)


@pytest.mark.parametrize("p,m", SMALL)
def test_field_axioms_exhaustive(p, m):
    F = FieldSpec.default(p, m)
    T = F.mul_table
    S = _add_table(F)
    q = F.q
    idx = np.arange(q)
    # associativity and commutativity
    assert np.array_equal(T[T[:, :, None], idx[None, None, :]], T[idx[:, None, None], T[None, :, :]])
    assert np.array_equal(T, T.T)
    # distributivity a(b+c) = ab + ac
    lhs = T[idx[:, None, None], S[None, :, :]]
    rhs = S[T[:, :, None], T[:, None, :]]
    assert np.array_equal(lhs, rhs)
    # inverses
    for a in range(1, q):
        assert T[a, F.inv_code(a)] == F.encode(F.one)
        assert F.mul(F.decode(a), F.inverse(F.decode(a))) == F.one


@pytest.mark.parametrize("p,m", [(2, 3), (2, 4), (3, 2), (2, 6), (5, 2)])
def test_multiplication_matches_sympy(p, m):
    F = FieldSpec.default(p, m)
    ref = oracles.RefField(p, F.modulus)
    elems = ref.elements()
    step = 1 if F.q <= 16 else 7
    for a in elems[::step]:
        for b in elems:
            assert F.mul(F.element(a), F.element(b)).coeffs == ref.mul(a, b)
            assert F.mul_table[F.encode(a), F.encode(b)] == F.encode(ref.mul(a, b))


@pytest.mark.parametrize("p,m", UP_TO_256)
def test_frobenius_linear_bijective_period_m(p, m):
    F = FieldSpec.default(p, m)
    codes = np.arange(F.q)
    vecs = F.digits
    frob = F.codes_of((vecs @ F.frobenius_matrix) % p)
    assert len(set(frob.tolist())) == F.q
    direct = np.array([F.encode(F.power(F.decode(c), p)) for c in codes])
    assert np.array_equal(frob, direct)
    assert np.array_equal(F.frobenius_power(m), np.eye(m, dtype=np.int64))


@given(st.sampled_from(SMALL), st.data())
def test_inverse_roundtrip(pm, data):
    F = FieldSpec.default(*pm)
    a = F.decode(data.draw(st.integers(1, F.q - 1)))
    assert F.inverse(F.inverse(a)) == a


def test_degree_stats():
    assert degree_stats(FieldSpec.default(2, 6)) == (2, 3)
    assert degree_stats(FieldSpec.default(2, 5)) == (5, 1)
    assert degree_stats(FieldSpec.default(3, 4)) == (2, 2)
    with pytest.raises(ArgumentError):
        degree_stats(FieldSpec.default(3, 1))


def test_serialization():
    F4 = FieldSpec.default(2, 2)
    assert str(F4.t) == "[0,1]"
    assert F4.to_dict() == {"p": 2, "m": 2, "modulus": [1, 1, 1]}
    assert isinstance(F4.element(3), FieldElement) and F4.element(3).coeffs == (1, 1)
