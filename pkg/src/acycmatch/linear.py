"""Matching criteria and constructions for F_p-subspaces of F_{p^m}.

Notation follows the group case: for ordered bases (a_i) of A and (b_i) of
B, the basis (a_i) is matched to (b_i) when a_i^{-1}A ∩ B lies in the span
of the b_j with j != i, for every i.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from typing import Iterator, Sequence

import numpy as np

from .errors import ArgumentError, PreconditionError, ResourceError, StructuralError
from .ffield import FieldElement, FieldSpec, degree_stats
from .poly import build_linear_matrix, determinant
from .subspace import (DualVector, Subspace, basis_from_dual, contains, coordinates_in, enumerate_subspaces,
                       gaussian_binomial, intersect, is_primitive, kernel_of, nullspace, rank, scale_subspace,
                       subfield_fixed, subspace_sum)

MAX_FAMILY = 16


@dataclass(frozen=True)
class OrderedBasis:
    vectors: tuple[FieldElement, ...]
    span: Subspace

    @classmethod
    def of(cls, field: FieldSpec, vectors: Sequence[FieldElement | Sequence[int]]) -> "OrderedBasis":
        vecs = tuple(v if isinstance(v, FieldElement) else field.element(v) for v in vectors)
        span = Subspace.span(field, vecs)
        if span.dim != len(vecs):
            raise ArgumentError("basis vectors are linearly dependent")
        return cls(vecs, span)

    @classmethod
    def canonical(cls, S: Subspace) -> "OrderedBasis":
        return cls(tuple(S.vectors()), S)

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]

    def to_list(self) -> list[list[int]]:
        return [list(v.coeffs) for v in self.vectors]


@dataclass(frozen=True)
class LinearIso:
    """phi(sum c_i d_i) = sum (c @ matrix)_j e_j for domain basis d, codomain basis e."""

    domain: OrderedBasis
    codomain: OrderedBasis
    matrix: tuple[tuple[int, ...], ...]

    def apply(self, field: FieldSpec, x: FieldElement) -> FieldElement:
        c = coordinates_in(self.domain.span, x)
        img = (c @ np.array(self.matrix, dtype=np.int64)) % field.p
        vec = (img @ np.array([v.coeffs for v in self.codomain], dtype=np.int64)) % field.p
        return FieldElement(tuple(int(t) for t in vec))


@dataclass(frozen=True)
class FamilyBoundReport:
    family: tuple[Subspace, ...]
    bound: int
    holds: bool
    violating: tuple[int, ...] | None

    def to_dict(self) -> dict:
        return {"family": [s.to_list() for s in self.family], "bound": self.bound,
                "holds": self.holds, "violating_J": list(self.violating) if self.violating else None}


@dataclass(frozen=True)
class MatchVerdict:
    """Truthy iff matched.  ``direct`` is False when some V + span(...) is not direct."""

    matched: bool
    direct: bool = True

    def __bool__(self) -> bool:
        return self.matched


class MatchedReason(str, Enum):
    BY_DEGREE_BOUND = "ByDegreeBound"
    BY_PRIMITIVITY = "ByPrimitivity"
    UNKNOWN = "Unknown"


# -- helpers -----------------------------------------------------------------

def _first_meet_violation(family: Sequence[Subspace], total: int) -> tuple[int, ...] | None:
    """First J (size, then lex) with dim of the meet over J above total - #J."""
    if len(family) > MAX_FAMILY:
        raise ResourceError(f"bound checks enumerate 2^k subsets; k must be <= {MAX_FAMILY}")
    meets: dict[tuple[int, ...], Subspace] = {}
    for size in range(1, len(family) + 1):
        for J in combinations(range(len(family)), size):
            meet = family[J[0]] if size == 1 else intersect(meets[J[:-1]], family[J[-1]])
            meets[J] = meet
            if meet.dim > total - size:
                return J
    return None


def _row_elements(rows: np.ndarray, p: int) -> np.ndarray:
    d = rows.shape[0]
    coeffs = np.array(list(product(range(p), repeat=d)), dtype=np.int64).reshape(-1, d)
    return (coeffs @ rows) % p


def _rado_violation(family: Sequence[np.ndarray], chosen: np.ndarray, p: int) -> tuple[int, ...] | None:
    """First J with dim(sum E_J) < #J, working modulo span(chosen)."""
    base = rank(chosen, p) if chosen.size else 0
    for size in range(1, len(family) + 1):
        for J in combinations(range(len(family)), size):
            stacked = np.vstack([chosen] + [family[j] for j in J])
            if rank(stacked, p) - base < size:
                return J
    return None


def free_transversal_rows(family: Sequence[np.ndarray], ncols: int, p: int):
    """Free transversal of subspaces of F_p^ncols given by row bases.

    Returns ``(vectors, None)`` or ``(None, J)`` with J violating Rado's bound.
    Each step keeps the remaining family feasible modulo the chosen span, so
    the greedy choice never needs to backtrack.
    """
    family = [np.asarray(f, dtype=np.int64).reshape(-1, ncols) for f in family]
    if len(family) > MAX_FAMILY:
        raise ResourceError(f"family size must be <= {MAX_FAMILY}")
    chosen = np.zeros((0, ncols), dtype=np.int64)
    J = _rado_violation(family, chosen, p)
    if J is not None:
        return None, J
    out = []
    for i, rows in enumerate(family):
        for x in _row_elements(rows, p)[1:]:
            cand = np.vstack([chosen, x])
            if rank(cand, p) < cand.shape[0]:
                continue
            if _rado_violation(family[i + 1:], cand, p) is None:
                chosen = cand
                out.append(x)
                break
        else:  # pragma: no cover - excluded by the feasibility invariant
            raise AssertionError("free transversal search lost feasibility")
    return out, None


def _coords(ambient: Subspace, S: Subspace) -> np.ndarray:
    if S.dim == 0:
        return np.zeros((0, ambient.dim), dtype=np.int64)
    return np.array([coordinates_in(ambient, row) for row in S.basis], dtype=np.int64)


def _perp_rows(ambient: Subspace, S: Subspace) -> np.ndarray:
    return nullspace(_coords(ambient, S), ambient.field.p, ncols=ambient.dim)


def _hyperplane(field: FieldSpec, vectors: Sequence[FieldElement], skip: int) -> Subspace:
    return Subspace.span(field, [v for k, v in enumerate(vectors) if k != skip])


def _check_basis(field: FieldSpec, basis: OrderedBasis, S: Subspace, name: str) -> None:
    if basis.span != S:
        raise ArgumentError(f"{name} does not span the given subspace")


# -- operations ----------------------------------------------------------------

def inv_translate_intersect(field: FieldSpec, a: FieldElement, A: Subspace, B: Subspace) -> Subspace:
    """a^{-1}A ∩ B."""
    return intersect(scale_subspace(field, field.inverse(a), A), B)


def basis_matched_check(field: FieldSpec, basis_a: Sequence[FieldElement], basis_b: Sequence[FieldElement],
                        A: Subspace, B: Subspace, V: Subspace | None = None,
                        sigma: Sequence[int] | None = None) -> MatchVerdict:
    """a_i^{-1}A ∩ B ⊆ V + span(b_k : k != sigma(i)) for all i.

    With V = {0} and sigma = identity this is the usual matched-basis test.
    The lists need not be bases (the generalized form allows any equal-size
    families); the sum with V is taken as a plain sum and ``direct`` records
    whether it was direct every time.
    """
    m = len(basis_a)
    if len(basis_b) != m:
        raise ArgumentError("families differ in size")
    V = Subspace.zero(field) if V is None else V
    sigma = tuple(range(m)) if sigma is None else tuple(sigma)
    if sorted(sigma) != list(range(m)):
        raise StructuralError("sigma is not a permutation")
    matched, direct = True, True
    for i, a in enumerate(basis_a):
        target = _hyperplane(field, basis_b, sigma[i])
        if intersect(V, target).dim:
            direct = False
        if not contains(subspace_sum(V, target), inv_translate_intersect(field, a, A, B)):
            matched = False
    return MatchVerdict(matched, direct)


def dimension_criterion(field: FieldSpec, basis_a: OrderedBasis, A: Subspace, B: Subspace):
    """dim of the meet of a_i^{-1}A ∩ B over J is at most n - #J, for all J.

    Returns ``(matchable, violating J or None)``.
    """
    _check_basis(field, basis_a, A, "basis of A")
    n = len(basis_a)
    if B.dim != n:
        raise ArgumentError("A and B must have equal dimension")
    if n > MAX_FAMILY:
        raise ResourceError(f"n must be <= {MAX_FAMILY}")
    family = [inv_translate_intersect(field, a, A, B) for a in basis_a]
    J = _first_meet_violation(family, n)
    return J is None, J


def construct_matched_basis(field: FieldSpec, basis_a: OrderedBasis, A: Subspace, B: Subspace) -> OrderedBasis:
    """A basis of B matched to ``basis_a``, via a free transversal in B*.

    phi_i is picked in (a_i^{-1}A ∩ B)^perp; the basis of B dual to (phi_i)
    then has a_i^{-1}A ∩ B inside ker phi_i = span(b_j : j != i).
    """
    ok, J = dimension_criterion(field, basis_a, A, B)
    if not ok:
        raise PreconditionError("CriterionFails", f"dimension bound violated at J={J}")
    family = [_perp_rows(B, inv_translate_intersect(field, a, A, B)) for a in basis_a]
    phis, _ = free_transversal_rows(family, B.dim, field.p)
    vecs = basis_from_dual(B, [DualVector(tuple(int(x) for x in phi)) for phi in phis])
    out = OrderedBasis.of(field, vecs)
    assert basis_matched_check(field, basis_a.vectors, out.vectors, A, B)
    return out


def free_transversal(field: FieldSpec, family: Sequence[Subspace], ambient: Subspace | None = None):
    """Independent x_i in E_i, as ``(vectors, None)``, or ``(None, J)`` when
    dim(sum of E_i over J) < #J."""
    ambient = Subspace.full(field) if ambient is None else ambient
    if ambient.dim > MAX_FAMILY or len(family) > ambient.dim:
        raise ResourceError("need len(family) <= dim E <= 16")
    for E in family:
        if not contains(ambient, E):
            raise ArgumentError("family member outside the ambient space")
    rows = [_coords(ambient, E) for E in family]
    vecs, J = free_transversal_rows(rows, ambient.dim, field.p)
    if vecs is None:
        return None, J
    out = [(v @ ambient.matrix) % field.p for v in vecs]
    return [FieldElement(tuple(int(x) for x in r)) for r in out], None


def extend_family_exact(field: FieldSpec, family: Sequence[Subspace], ambient: Subspace | None = None) -> list[Subspace]:
    """Hyperplanes E~_i ⊇ E_i with dim of the meet over J exactly n - #J."""
    ambient = Subspace.full(field) if ambient is None else ambient
    n = ambient.dim
    for E in family:
        if not contains(ambient, E):
            raise ArgumentError("family member outside the ambient space")
    J = _first_meet_violation(list(family), n)
    if J is not None:
        raise PreconditionError("HypothesisFails", f"dim bound violated at J={J}")
    perps = [_perp_rows(ambient, E) for E in family]
    phis, J = free_transversal_rows(perps, n, field.p)
    if phis is None:  # pragma: no cover - Rado's bound follows from the hypothesis
        raise AssertionError(f"orthogonal family violates Rado at J={J}")
    out = [kernel_of(ambient, [DualVector(tuple(int(x) for x in phi))]) for phi in phis]
    for E, Et in zip(family, out):
        assert contains(Et, E)
    for size in range(1, len(out) + 1):
        for Jc in combinations(range(len(out)), size):
            meet = out[Jc[0]]
            for j in Jc[1:]:
                meet = intersect(meet, out[j])
            if meet.dim != n - size:
                raise AssertionError(f"extension check failed at J={Jc}")
    return out


def product_stabiliser(field: FieldSpec, A: Subspace, b: FieldElement) -> Subspace:
    """A_b = {a in A : ab in A} = A ∩ b^{-1}A."""
    return intersect(A, scale_subspace(field, field.inverse(b), A))


def stabiliser_bound_check(field: FieldSpec, A: Subspace, B: Subspace, basis_b: OrderedBasis) -> FamilyBoundReport:
    """Bound dim of the meet of A_{b_i} over J by n - #J."""
    _check_basis(field, basis_b, B, "basis of B")
    n = len(basis_b)
    if n > MAX_FAMILY:
        raise ResourceError(f"n must be <= {MAX_FAMILY}")
    family = tuple(product_stabiliser(field, A, b) for b in basis_b)
    J = _first_meet_violation(family, n)
    return FamilyBoundReport(family, n, J is None, J)


def strong_matching_exists(field: FieldSpec, A: Subspace, B: Subspace) -> bool:
    """dim(a^{-1}A ∩ B) = 0 for every nonzero a in A (same as AB ∩ A = {0})."""
    if A.dim == 0 or B.dim == 0:
        raise ArgumentError("A and B must be nonzero")
    for a in projective_points(A):
        if inv_translate_intersect(field, a, A, B).dim:
            return False
    return True


def projective_points(S: Subspace) -> Iterator[FieldElement]:
    """One nonzero vector per line of S (first nonzero coordinate equal to 1)."""
    field = S.field
    for code in S.element_codes()[1:]:
        v = field.decode(int(code))
        lead = next(c for c in v.coeffs if c)
        if lead == 1:
            yield v


def ordered_bases(S: Subspace, projective: bool = False) -> Iterator[tuple[FieldElement, ...]]:
    """Every ordered basis of S (or only those with normalized vectors)."""
    field = S.field
    pool = list(projective_points(S)) if projective else [field.decode(int(c)) for c in S.element_codes()[1:]]

    def rec(prefix):
        if len(prefix) == S.dim:
            yield tuple(prefix)
            return
        span = Subspace.span(field, prefix)
        for v in pool:
            if not span.contains_vector(v):
                yield from rec(prefix + [v])

    yield from rec([])


def find_matched_basis_exhaustive(field: FieldSpec, basis_a: Sequence[FieldElement], A: Subspace,
                                  B: Subspace) -> tuple[FieldElement, ...] | None:
    """Scan normalized ordered bases of B; rescaling b_j never changes the verdict."""
    for cand in ordered_bases(B, projective=True):
        if basis_matched_check(field, basis_a, cand, A, B):
            return cand
    return None


def is_subspace_matched(field: FieldSpec, A: Subspace, B: Subspace) -> bool:
    """Every basis of A can be matched to a basis of B (tiny scale only)."""
    if field.p != 2 or field.m > 3 or A.dim > 2:
        raise ResourceError("exhaustive subspace matching limited to p=2, m<=3, dim<=2")
    for basis in ordered_bases(A, projective=True):
        if not dimension_criterion(field, OrderedBasis(basis, A), A, B)[0]:
            return False
    return True


def _gl_matrices(n: int, p: int) -> list[np.ndarray]:
    out = []
    for entries in product(range(p), repeat=n * n):
        M = np.array(entries, dtype=np.int64).reshape(n, n)
        if rank(M, p) == n:
            out.append(M)
    return out


def linear_acyclic_tiny(field: FieldSpec, A: Subspace, B: Subspace) -> dict:
    """Acyclic strong matchings A -> B and the invertibility of their matrices.

    psi is equivalent to phi when some automorphism theta of A gives
    a*phi(a) = theta(a)*psi(theta(a)) for every a in A.  phi is acyclic when
    every psi equivalent to it is a nonzero F_p-multiple of phi.  Matrix
    invertibility refers to M(A_can, phi(A_can)) for the RREF basis A_can.
    """
    if A.dim != B.dim or A.dim == 0:
        raise ArgumentError("A and B must be nonzero of equal dimension")
    if A.dim > 2 or field.q > 16:
        raise ResourceError("linear_acyclic_tiny is limited to dim <= 2 and p^m <= 16")
    if not strong_matching_exists(field, A, B):
        return {"isos": [], "acyclic": [], "matrix_invertible_for_each": [], "asymmetric_pairs": 0,
                "experimental": True}
    p, n = field.p, A.dim
    dom, cod = OrderedBasis.canonical(A), OrderedBasis.canonical(B)
    Am, Bm = A.matrix, B.matrix
    coeffs = np.array(list(product(range(p), repeat=n)), dtype=np.int64)
    gl = _gl_matrices(n, p)

    def products(theta, psi):
        img = (coeffs @ theta) % p
        left = field.codes_of((img @ Am) % p)
        right = field.codes_of((((img @ psi) % p) @ Bm) % p)
        return field.mul_codes(left, right)

    eye = np.eye(n, dtype=np.int64)
    P = np.array([products(eye, M) for M in gl])
    Q = np.array([[products(T, M) for M in gl] for T in gl])
    # equivalent[i, j]: psi=gl[j] is equivalent to phi=gl[i]
    equivalent = (P[:, None, None, :] == Q[None, :, :, :]).all(axis=3).any(axis=1)
    key = [tuple(M.ravel()) for M in gl]
    index = {k: i for i, k in enumerate(key)}
    acyclic_idx = []
    for i, M in enumerate(gl):
        multiples = {index[tuple(((c * M) % p).ravel())] for c in range(1, p)}
        if set(np.nonzero(equivalent[i])[0].tolist()) <= multiples:
            acyclic_idx.append(i)
    isos = [LinearIso(dom, cod, tuple(map(tuple, M.tolist()))) for M in gl]
    acyclic = [isos[i] for i in acyclic_idx]
    invertible = []
    for iso in acyclic:
        image = [iso.apply(field, a) for a in dom]
        M = build_linear_matrix(field, list(dom), image, A, B)
        invertible.append(determinant(M)[1])
    asymmetric = int((equivalent != equivalent.T).sum()) // 2
    return {"isos": isos, "acyclic": acyclic, "matrix_invertible_for_each": invertible,
            "asymmetric_pairs": asymmetric, "experimental": True}


def _subfield_degree(field: FieldSpec, H: Subspace) -> int | None:
    for d in range(1, field.m + 1):
        if field.m % d == 0 and subfield_fixed(field, d) == H:
            return d
    return None


def weak_local_match(field: FieldSpec, A: Subspace, B: Subspace, H: Subspace):
    """Bases (a_1..a_k) of a subspace of A and (b_1..b_k) of H ∩ B with a_i b_i not in A.

    Follows the dual construction: extend a basis of H ∩ B to B, take a free
    transversal of the orthogonals of A_{b_i} in A*, and dualize.
    """
    d = _subfield_degree(field, H)
    if d is None or d == field.m:
        raise ArgumentError("H must be a proper intermediate subfield")
    if A.dim != B.dim or A.dim == 0:
        raise ArgumentError("A and B must be nonzero of equal dimension")
    HB = intersect(H, B)
    if HB.dim == 0:
        raise PreconditionError("NoIntersection", "H ∩ B = {0}")
    if not any(contains(A, scale_subspace(field, a, H)) for a in projective_points(A)):
        raise PreconditionError("NoCarrier", "no a in A with aH ⊆ A")
    if not dimension_criterion(field, OrderedBasis.canonical(A), A, B)[0]:
        raise PreconditionError("NotMatched", "the canonical basis of A cannot be matched to B")
    b_vecs = list(HB.vectors())
    for row in B.vectors():
        if not Subspace.span(field, b_vecs).contains_vector(row):
            b_vecs.append(row)
    basis_b = OrderedBasis.of(field, b_vecs)
    report = stabiliser_bound_check(field, A, B, basis_b)
    if not report.holds:
        raise PreconditionError("NotMatched", f"A_b bound violated at J={report.violating}")
    perps = [_perp_rows(A, Ab) for Ab in report.family]
    phis, J = free_transversal_rows(perps, A.dim, field.p)
    if phis is None:  # pragma: no cover - follows from the bound just checked
        raise AssertionError(f"Rado violated at J={J}")
    a_vecs = basis_from_dual(A, [DualVector(tuple(int(x) for x in phi)) for phi in phis])
    k = HB.dim
    for a, b in zip(a_vecs[:k], b_vecs[:k]):
        if A.contains_vector(field.mul(a, b)):
            raise AssertionError("constructed pair has a_i b_i in A")
    return OrderedBasis.of(field, a_vecs[:k]), OrderedBasis.of(field, b_vecs[:k])


def matched_sufficient(field: FieldSpec, A: Subspace, B: Subspace) -> MatchedReason:
    """First applicable sufficient condition for "A is matched to B"."""
    if A.dim != B.dim or A.dim == 0:
        raise ArgumentError("A and B must be nonzero of equal dimension")
    if field.m < 2:
        return MatchedReason.UNKNOWN
    n0, _ = degree_stats(field)
    if A.dim < n0 and not B.contains_vector(field.one):
        return MatchedReason.BY_DEGREE_BOUND
    # the primitivity criterion assumes n > 1; n = 1 is not claimed here
    if A.dim > 1 and is_primitive(field, B):
        return MatchedReason.BY_PRIMITIVITY
    return MatchedReason.UNKNOWN


def primitive_dimension_search(field: FieldSpec, max_subspaces: int = 10 ** 6) -> dict:
    """Largest dimension of a subspace whose nonzero elements are all primitive.

    Scans dimensions downward from m - n(K,L) + 1, which no primitive
    subspace can reach, and stops at the first dimension with a hit.
    """
    if field.m < 2:
        raise ArgumentError("need m >= 2")
    if field.q > 2 ** 16:
        raise ResourceError("p^m must be <= 2^16")
    _, n_kl = degree_stats(field)
    found, witness = 0, None
    for d in range(min(field.m, field.m - n_kl + 1), 0, -1):
        if gaussian_binomial(field.m, d, field.p) > max_subspaces:
            raise ResourceError(f"too many {d}-dimensional subspaces to scan")
        for S in enumerate_subspaces(field, d):
            if is_primitive(field, S):
                found, witness = d, S
                break
        if witness is not None:
            break
    return {"field": field.to_dict(), "m_KL": found, "n_KL": n_kl,
            "equality": found == field.m - n_kl, "witness": witness.to_list() if witness else None,
            "experimental": True}


# -- maps between fields -------------------------------------------------------

def apply_linear_map(field_L: FieldSpec, field_E: FieldSpec, T: np.ndarray, x: FieldElement) -> FieldElement:
    """T is m_L x m_E over F_p; x -> x @ T."""
    v = (np.array(x.coeffs, dtype=np.int64) @ T) % field_L.p
    return field_E.element(v)


def image_subspace(field_L: FieldSpec, field_E: FieldSpec, T: np.ndarray, S: Subspace) -> Subspace:
    if S.dim == 0:
        return Subspace.zero(field_E)
    return Subspace.span(field_E, (S.matrix @ T) % field_L.p)


def kernel_subspace(field_L: FieldSpec, T: np.ndarray) -> Subspace:
    return Subspace.span(field_L, nullspace(np.asarray(T).T, field_L.p, ncols=field_L.m))


def pullback_check(field_L: FieldSpec, field_E: FieldSpec, T: np.ndarray, a_vecs: Sequence[FieldElement],
                   b_vecs: Sequence[FieldElement], A: Subspace, B: Subspace,
                   sigma: Sequence[int] | None = None) -> dict:
    """Compare matchedness of (a_i), (b_i) w.r.t. (ker T, sigma) with its image under T.

    ``image_side`` transports the L-side sets: T(a_i^{-1}A ∩ B) ⊆ span(T b_k : k != sigma(i)).
    ``codomain_products`` instead recomputes (T a_i)^{-1} T(A) ∩ T(B) with
    products taken in E.
    """
    m = len(a_vecs)
    sigma = tuple(range(m)) if sigma is None else tuple(sigma)
    kerT = kernel_subspace(field_L, T)
    kernel_side = basis_matched_check(field_L, a_vecs, b_vecs, A, B, V=kerT, sigma=sigma).matched
    Tb = [apply_linear_map(field_L, field_E, T, b) for b in b_vecs]
    image_side = True
    for i, a in enumerate(a_vecs):
        meet = image_subspace(field_L, field_E, T, inv_translate_intersect(field_L, a, A, B))
        if not contains(_hyperplane(field_E, Tb, sigma[i]), meet):
            image_side = False
    Ta = [apply_linear_map(field_L, field_E, T, a) for a in a_vecs]
    TA, TB = image_subspace(field_L, field_E, T, A), image_subspace(field_L, field_E, T, B)
    codomain = None
    if all(any(v.coeffs) for v in Ta):
        codomain = basis_matched_check(field_E, Ta, Tb, TA, TB, sigma=sigma).matched
    return {"kernel_side": kernel_side, "image_side": image_side, "codomain_products": codomain}


def field_embedding(field_small: FieldSpec, field_big: FieldSpec) -> np.ndarray:
    """Matrix of a ring embedding F_{p^d} -> F_{p^m}: t maps to the least root of the modulus."""
    if field_small.p != field_big.p or field_big.m % field_small.m:
        raise ArgumentError("no embedding between these fields")
    mod = field_small.modulus
    root = None
    for code in range(field_big.q):
        r = field_big.decode(code)
        acc = field_big.zero
        for c in reversed(mod):
            acc = field_big.add(field_big.mul(acc, r), field_big.element([c] + [0] * (field_big.m - 1)))
        if not any(acc.coeffs):
            root = r
            break
    rows = [field_big.power(root, i).coeffs for i in range(field_small.m)]
    return np.array(rows, dtype=np.int64)


# -- batched strong-matching tables (p^m <= 64) ----------------------------------

def _bitmask(codes: np.ndarray) -> np.uint64:
    return np.bitwise_or.reduce(np.left_shift(np.uint64(1), codes.astype(np.uint64)))


def _check_mask_field(field: FieldSpec) -> None:
    if field.q > 64:
        raise ResourceError("mask tables need p^m <= 64")


def strong_matching_table(field: FieldSpec, spaces_a: Sequence[Subspace],
                          spaces_b: Sequence[Subspace]) -> np.ndarray:
    """out[i, j] = strong_matching_exists(field, spaces_a[i], spaces_b[j]), via bitmasks.

    Row i lists the masks of a^{-1}A_i over the projective points a of A_i;
    the pair is strong when each of them meets B_j in 0 alone.
    """
    from . import kernels
    _check_mask_field(field)
    rows = []
    for A in spaces_a:
        codes = A.element_codes()
        rows.append([_bitmask(field.mul_codes(field.inv_code(field.encode(a)), codes))
                     for a in projective_points(A)])
    width = max((len(r) for r in rows), default=1)
    row_masks = np.zeros((len(rows), width), dtype=np.uint64)
    for i, r in enumerate(rows):
        row_masks[i, :len(r)] = r
    col_masks = np.array([_bitmask(B.element_codes()) for B in spaces_b], dtype=np.uint64)
    return kernels.no_nonzero_overlap(row_masks, col_masks)


def minkowski_product_avoids_table(field: FieldSpec, spaces_a: Sequence[Subspace],
                                   spaces_b: Sequence[Subspace]) -> np.ndarray:
    """out[i, j] = (A_i B_j) ∩ A_i = {0}, scanning every product ab."""
    from . import kernels
    _check_mask_field(field)

    def padded(spaces):
        lists = [S.element_codes() for S in spaces]
        width = max(len(c) for c in lists)
        out = np.full((len(lists), width), -1, dtype=np.int64)
        for i, c in enumerate(lists):
            out[i, :len(c)] = c
        return out

    a_elems, b_elems = padded(spaces_a), padded(spaces_b)
    member = np.zeros((len(spaces_a), field.q), dtype=bool)
    for i, row in enumerate(a_elems):
        member[i, row[row >= 0]] = True
    return kernels.product_avoids(a_elems, b_elems, field.mul_table, member)
