"""Sparse integer polynomials in element-indexed variables, matching matrices
and their exact determinants."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ArgumentError, ResourceError
from .ffield import FieldElement, FieldSpec
from .groups import GroupElement, GroupSpec, Subset, add_elements
from .subspace import Subspace, contains, intersect, scale_subspace, solve_coordinates


@dataclass(frozen=True, order=True)
class Variable:
    """x_g for a group element or field element g.

    ``key`` orders variables; ``label`` is the canonical text form.
    """

    kind: str
    key: tuple[int, ...]
    label: str = field(compare=False)

    @classmethod
    def of_group(cls, g: GroupElement) -> "Variable":
        return cls("g", g.residues, str(g))

    @classmethod
    def of_field(cls, x: FieldElement) -> "Variable":
        return cls("f", x.coeffs, str(x))

    def __str__(self) -> str:
        return f"x[{self.label}]"


@dataclass(frozen=True, order=True)
class Monomial:
    factors: tuple[tuple[Variable, int], ...] = ()

    @classmethod
    def from_counts(cls, counts: Mapping[Variable, int]) -> "Monomial":
        return cls(tuple(sorted((v, e) for v, e in counts.items() if e)))

    def exponents(self) -> dict[Variable, int]:
        return dict(self.factors)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.factors)

    def __mul__(self, other: "Monomial") -> "Monomial":
        counts = Counter(self.exponents())
        counts.update(other.exponents())
        return Monomial.from_counts(counts)

    def __str__(self) -> str:
        return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in self.factors)


class Polynomial:
    """Integer-coefficient polynomial; zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        acc: dict[Monomial, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            acc[mono] = acc.get(mono, 0) + int(coeff)
        self._terms = {m: c for m, c in sorted(acc.items()) if c}

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: list[tuple[Monomial, int]] = []
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                out.append((m1 * m2, c1 * c2))
        return Polynomial(out)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, coeff in self._terms.items():
            parts.append(f"{coeff}*{mono}" if mono.factors else str(coeff))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


@dataclass(frozen=True)
class MatchingMatrix:
    """Square matrix whose entries are a single variable or ``None`` (zero)."""

    entries: tuple[tuple[Variable | None, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def to_json(self) -> list[list[str]]:
        return [["0" if e is None else str(e) for e in row] for row in self.entries]


def build_group_matrix(spec: GroupSpec, A: Subset, B: Subset) -> MatchingMatrix:
    """Entry (i, j) is x_{a_i + b_j} when that sum is outside A, else zero."""
    if len(A) != len(B) or not len(A):
        raise ArgumentError("A and B must be nonempty and equal in size")
    rows = []
    for a in A:
        row = []
        for b in B:
            s = add_elements(spec, a, b)
            row.append(None if s in A else Variable.of_group(s))
        rows.append(tuple(row))
    return MatchingMatrix(tuple(rows))


def build_linear_matrix(field: FieldSpec, basis_a: Sequence[FieldElement], basis_b: Sequence[FieldElement],
                        A: Subspace, B: Subspace) -> MatchingMatrix:
    """Entry (i, j) is x_{a_i b_j} when a_i^{-1}A ∩ B lies in span(b_k : k != j)."""
    n = len(basis_a)
    if len(basis_b) != n or A.dim != n or B.dim != n:
        raise ArgumentError("bases must both have dim A = dim B elements")
    for vecs, space in ((basis_a, A), (basis_b, B)):
        if Subspace.span(field, vecs) != space:
            raise ArgumentError("basis vectors are dependent or do not span the subspace")
    hyperplanes = [Subspace.span(field, [b for k, b in enumerate(basis_b) if k != j]) for j in range(n)]
    rows = []
    for a in basis_a:
        meet = intersect(scale_subspace(field, field.inverse(a), A), B)
        rows.append(tuple(Variable.of_field(field.mul(a, b)) if contains(hyperplanes[j], meet) else None
                          for j, b in enumerate(basis_b)))
    return MatchingMatrix(tuple(rows))


def determinant(M: MatchingMatrix, max_n: int = 12) -> tuple[Polynomial, bool]:
    """Signed permutation expansion restricted to the nonzero pattern."""
    n = M.n
    if n > max_n:
        raise ResourceError(f"determinant expansion limited to n <= {max_n}")
    if n == 0:
        return Polynomial({Monomial(): 1}), True
    cols = [[j for j in range(n) if M.entries[i][j] is not None] for i in range(n)]
    acc: dict[Monomial, int] = {}
    chosen: list[int] = []
    counts: Counter = Counter()

    def rec(i: int, parity: int) -> None:
        if i == n:
            mono = Monomial.from_counts(counts)
            acc[mono] = acc.get(mono, 0) + (-1 if parity else 1)
            return
        for j in cols[i]:
            if j in chosen:
                continue
            inversions = sum(1 for c in chosen if c > j)
            var = M.entries[i][j]
            chosen.append(j)
            counts[var] += 1
            rec(i + 1, parity ^ (inversions & 1))
            counts[var] -= 1
            chosen.pop()

    rec(0, 0)
    det = Polynomial(acc)
    return det, not det.is_zero()
