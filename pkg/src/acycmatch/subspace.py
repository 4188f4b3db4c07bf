"""F_p-subspaces of F_{p^m}, kept as reduced row-echelon bases.

Vectors are length-m coefficient rows.  All matrix helpers take and return
int64 arrays reduced mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import ArgumentError, DomainError, StructuralError
from .ffield import FieldElement, FieldSpec


# -- matrices over F_p ------------------------------------------------------

def rref(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form with zero rows dropped, plus pivot columns."""
    A = np.array(M, dtype=np.int64, ndmin=2) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), p - 2, p)) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            A[others] = (A[others] - A[others, c][:, None] * A[r][None, :]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def nullspace(M, p: int, ncols: int | None = None) -> np.ndarray:
    """Rows spanning {x : M x = 0}."""
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        n = ncols if ncols is not None else M.shape[-1]
        return np.eye(n, dtype=np.int64)
    R, pivots = rref(M, p)
    n = M.shape[1]
    free = [c for c in range(n) if c not in pivots]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(pivots):
            out[k, pc] = (-R[i, f]) % p
    return out


def inverse_matrix(M, p: int) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64) % p
    n = M.shape[0]
    if M.shape != (n, n):
        raise StructuralError("matrix must be square")
    R, pivots = rref(np.hstack([M, np.eye(n, dtype=np.int64)]), p)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise DomainError("matrix is singular")
    return R[:, n:]


def solve_coordinates(basis, v, p: int) -> np.ndarray | None:
    """Coordinates c with c @ basis == v, or None when v is outside the span."""
    basis = np.asarray(basis, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64) % p
    d = basis.shape[0]
    if d == 0:
        return np.zeros(0, np.int64) if not v.any() else None
    aug = np.hstack([basis.T, v[:, None]])
    R, pivots = rref(aug, p)
    if d in pivots:
        return None
    c = np.zeros(d, dtype=np.int64)
    for i, pc in enumerate(pivots):
        c[pc] = R[i, d]
    return c


# -- subspaces -------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Canonical subspace: ``basis`` is the RREF matrix as a tuple of rows."""

    field: FieldSpec
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, field: FieldSpec, vectors: Iterable[FieldElement | Sequence[int]]) -> "Subspace":
        rows = [v.coeffs if isinstance(v, FieldElement) else tuple(v) for v in vectors]
        for r in rows:
            if len(r) != field.m:
                raise StructuralError(f"vector {r} does not have {field.m} coordinates")
        if not rows:
            return cls(field, ())
        R, _ = rref(np.array(rows, dtype=np.int64), field.p)
        return cls(field, tuple(tuple(int(x) for x in row) for row in R))

    @classmethod
    def zero(cls, field: FieldSpec) -> "Subspace":
        return cls(field, ())

    @classmethod
    def full(cls, field: FieldSpec) -> "Subspace":
        return cls.span(field, np.eye(field.m, dtype=np.int64))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> np.ndarray:
        if not self.basis:
            return np.zeros((0, self.field.m), dtype=np.int64)
        return np.array(self.basis, dtype=np.int64)

    def vectors(self) -> list[FieldElement]:
        return [FieldElement(row) for row in self.basis]

    def element_codes(self) -> np.ndarray:
        """Codes of all p^dim elements (0 first)."""
        p = self.field.p
        if self.dim == 0:
            return np.zeros(1, dtype=np.int64)
        coeffs = np.array(list(product(range(p), repeat=self.dim)), dtype=np.int64)
        return self.field.codes_of((coeffs @ self.matrix) % p)

    def elements(self) -> list[FieldElement]:
        return [self.field.decode(int(c)) for c in self.element_codes()]

    def contains_vector(self, v: FieldElement | Sequence[int]) -> bool:
        c = v.coeffs if isinstance(v, FieldElement) else v
        return solve_coordinates(self.matrix, np.array(c), self.field.p) is not None

    def __contains__(self, v) -> bool:
        return self.contains_vector(v)

    def __str__(self) -> str:
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.basis) + "]"

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.basis]


def _same_field(U: Subspace, V: Subspace) -> None:
    if U.field != V.field:
        raise StructuralError("subspaces live in different fields")


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _same_field(U, V)
    return Subspace.span(U.field, list(U.basis) + list(V.basis))


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """U ∩ V from the kernel of the stacked bases: alpha U + beta V = 0."""
    _same_field(U, V)
    p = U.field.p
    if U.dim == 0 or V.dim == 0:
        return Subspace.zero(U.field)
    stacked = np.vstack([U.matrix, V.matrix])
    kernel = nullspace(stacked.T, p)
    if kernel.size == 0:
        return Subspace.zero(U.field)
    return Subspace.span(U.field, (kernel[:, :U.dim] @ U.matrix) % p)


def intersect_all(spaces: Sequence[Subspace]) -> Subspace:
    out = spaces[0]
    for s in spaces[1:]:
        out = intersect(out, s)
    return out


def contains(U: Subspace, V: Subspace) -> bool:
    """Whether V ⊆ U."""
    _same_field(U, V)
    if V.dim == 0:
        return True
    return rank(np.vstack([U.matrix, V.matrix]), U.field.p) == U.dim


def subspace_ops(field: FieldSpec, U: Subspace, V: Subspace) -> dict:
    if U.field != field or V.field != field:
        raise StructuralError("subspace does not belong to the given field")
    return {"intersect": intersect(U, V), "sum": subspace_sum(U, V), "contains": contains(U, V)}


def scale_vectors(field: FieldSpec, c: FieldElement, rows: np.ndarray) -> np.ndarray:
    codes = field.codes_of(rows)
    return field.digits[field.mul_codes(field.encode(c), codes)]


def scale_subspace(field: FieldSpec, c: FieldElement, U: Subspace) -> Subspace:
    """c·U = {c u : u in U}."""
    if not any(c.coeffs):
        raise DomainError("cannot scale by zero")
    if U.dim == 0:
        return U
    return Subspace.span(field, scale_vectors(field, c, U.matrix))


def subfield_fixed(field: FieldSpec, d: int) -> Subspace:
    """F_{p^d} inside F_{p^m}, as the fixed space of x -> x^{p^d}."""
    if d < 1 or d > field.m or field.m % d:
        raise ArgumentError(f"{d} does not divide {field.m}")
    F = field.frobenius_power(d)
    shifted = (F - np.eye(field.m, dtype=np.int64)) % field.p
    fixed = nullspace(shifted.T, field.p, ncols=field.m)
    return Subspace.span(field, fixed)


def is_primitive_element(field: FieldSpec, x: FieldElement) -> bool:
    """x generates F_{p^m}: no proper Frobenius power x^{p^d}, d | m, fixes it."""
    if not any(x.coeffs):
        raise DomainError("zero is not a primitive element")
    v = np.array(x.coeffs, dtype=np.int64)
    for d in field.proper_subfield_degrees:
        if np.array_equal((v @ field.frobenius_power(d)) % field.p, v):
            return False
    return True


def is_primitive(field: FieldSpec, x: FieldElement | Subspace) -> bool:
    """Element form, or subspace form (every nonzero element primitive)."""
    if isinstance(x, FieldElement):
        return is_primitive_element(field, x)
    if x.dim == 0:
        return False
    codes = x.element_codes()[1:]
    return bool(field.primitive_mask[codes].all())


def enumerate_subspaces(field: FieldSpec, d: int) -> Iterator[Subspace]:
    """All d-dimensional subspaces, one per RREF matrix.

    Order: pivot column sets lexicographically, then free entries as a
    base-p counter in row-major order.
    """
    m, p = field.m, field.p
    if not 0 <= d <= m:
        raise ArgumentError(f"dimension {d} outside [0, {m}]")
    for pivots in combinations(range(m), d):
        slots = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, m) if c not in pivots]
        for values in product(range(p), repeat=len(slots)):
            M = np.zeros((d, m), dtype=np.int64)
            for i, pc in enumerate(pivots):
                M[i, pc] = 1
            for (i, c), v in zip(slots, values):
                M[i, c] = v
            yield Subspace(field, tuple(tuple(int(x) for x in row) for row in M))


def gaussian_binomial(m: int, d: int, p: int) -> int:
    num, den = 1, 1
    for i in range(d):
        num *= p ** (m - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


# -- duals -----------------------------------------------------------------

@dataclass(frozen=True)
class DualVector:
    """A functional on a subspace, as its values on the subspace's RREF basis."""

    coords: tuple[int, ...]

    def __call__(self, coordinates: Sequence[int], p: int) -> int:
        return int(sum(a * b for a, b in zip(self.coords, coordinates)) % p)


def coordinates_in(ambient: Subspace, v: FieldElement | Sequence[int]) -> np.ndarray:
    c = v.coeffs if isinstance(v, FieldElement) else v
    out = solve_coordinates(ambient.matrix, np.array(c), ambient.field.p)
    if out is None:
        raise ArgumentError(f"{c} is not in the ambient subspace")
    return out


def orthogonal(ambient: Subspace, E: Subspace) -> list[DualVector]:
    """Basis of E^perp = {phi in ambient* : E ⊆ ker phi}."""
    if not contains(ambient, E):
        raise ArgumentError("E is not contained in the ambient subspace")
    p = ambient.field.p
    if E.dim == 0:
        rows = np.eye(ambient.dim, dtype=np.int64)
    else:
        C = np.array([coordinates_in(ambient, row) for row in E.basis])
        rows = nullspace(C, p, ncols=ambient.dim)
    return [DualVector(tuple(int(x) for x in r)) for r in rows]


def dual_basis(ambient: Subspace, ordered: Sequence[FieldElement]) -> list[DualVector]:
    """Functionals a_i* with a_i*(a_j) = delta_ij."""
    p = ambient.field.p
    P = np.array([coordinates_in(ambient, a) for a in ordered], dtype=np.int64)
    if P.shape != (ambient.dim, ambient.dim):
        raise ArgumentError("ordered basis size does not match the ambient dimension")
    Phi = inverse_matrix(P.T, p)
    return [DualVector(tuple(int(x) for x in r)) for r in Phi]


def basis_from_dual(ambient: Subspace, functionals: Sequence[DualVector]) -> list[FieldElement]:
    """The ordered basis whose dual basis is ``functionals``."""
    p = ambient.field.p
    Phi = np.array([f.coords for f in functionals], dtype=np.int64)
    P = inverse_matrix(Phi, p).T
    vecs = (P @ ambient.matrix) % p
    return [FieldElement(tuple(int(x) for x in r)) for r in vecs]


def kernel_of(ambient: Subspace, functionals: Sequence[DualVector]) -> Subspace:
    """Common kernel of the functionals, as a subspace of the field."""
    p = ambient.field.p
    if not functionals:
        return ambient
    Phi = np.array([f.coords for f in functionals], dtype=np.int64)
    coords = nullspace(Phi, p, ncols=ambient.dim)
    if coords.size == 0:
        return Subspace.zero(ambient.field)
    return Subspace.span(ambient.field, (coords @ ambient.matrix) % p)


def dual_machinery(field: FieldSpec, ambient: Subspace, E: Subspace) -> dict:
    """``orthogonal``: basis of E^perp; ``dual_basis_of``: ordered basis -> dual basis."""
    if ambient.field != field or E.field != field:
        raise StructuralError("subspace does not belong to the given field")
    perp = orthogonal(ambient, E)
    return {"orthogonal": perp, "dual_basis_of": lambda ordered: dual_basis(ambient, ordered)}
