"""Matchings between equal-size subsets of a finite abelian group.

A bijection phi: A -> B is a matching when a + phi(a) is never in A.  The
multiplicity function of phi counts how often each group element occurs as
a + phi(a); a matching is acyclic when no other matching shares its
multiplicity function.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from . import kernels
from .errors import ArgumentError, ResourceError, StructuralError
from .groups import GroupElement, GroupSpec, Subset, add_elements


@dataclass(frozen=True)
class MatchingFn:
    """The bijection ``source[i] -> target[perm[i]]``."""

    source: Subset
    target: Subset
    perm: tuple[int, ...]

    def __post_init__(self):
        if len(self.source) != len(self.target):
            raise StructuralError("source and target have different sizes")
        if sorted(self.perm) != list(range(len(self.source))):
            raise StructuralError(f"{self.perm} is not a permutation of range({len(self.source)})")

    @classmethod
    def from_pairs(cls, source: Subset, target: Subset,
                   pairs: Iterable[tuple[GroupElement, GroupElement]]) -> "MatchingFn":
        mapping = dict(pairs)
        try:
            perm = tuple(target.elements.index(mapping[a]) for a in source)
        except (KeyError, ValueError) as exc:
            raise StructuralError(f"pairs do not define a bijection: {exc}") from None
        return cls(source, target, perm)

    def __call__(self, a: GroupElement) -> GroupElement:
        return self.target[self.perm[self.source.elements.index(a)]]

    def items(self) -> list[tuple[GroupElement, GroupElement]]:
        return [(a, self.target[j]) for a, j in zip(self.source, self.perm)]

    def __str__(self) -> str:
        return "{" + ", ".join(f"{a}->{b}" for a, b in self.items()) + "}"


@dataclass(frozen=True)
class MultiplicityFunction:
    """Sorted ``(element, count)`` pairs; elements with count 0 are omitted."""

    counts: tuple[tuple[GroupElement, int], ...]

    def as_dict(self) -> dict[GroupElement, int]:
        return dict(self.counts)

    @property
    def mass(self) -> int:
        return sum(c for _, c in self.counts)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{g}:{c}" for g, c in self.counts) + "}"


def _same_size(spec: GroupSpec, A: Subset, B: Subset) -> None:
    if A.spec != spec or B.spec != spec:
        raise StructuralError("subsets belong to a different group")
    if len(A) != len(B):
        raise ArgumentError(f"#A={len(A)} differs from #B={len(B)}")


def compatibility(spec: GroupSpec, A: Subset, B: Subset) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(allowed, sums)``: sums[i, j] is the index of a_i + b_j and
    allowed[i, j] says whether that sum avoids A."""
    table = spec.add_table
    ia = np.array(A.indices, dtype=np.int64)
    ib = np.array(B.indices, dtype=np.int64)
    sums = table[np.ix_(ia, ib)]
    in_a = np.zeros(spec.order, dtype=bool)
    in_a[ia] = True
    return ~in_a[sums], sums


def is_matching(spec: GroupSpec, A: Subset, B: Subset, phi: MatchingFn) -> bool:
    _same_size(spec, A, B)
    if phi.source != A or phi.target != B:
        raise StructuralError("matching is defined on a different pair of subsets")
    return all(add_elements(spec, a, b) not in A for a, b in phi.items())


def has_matching(spec: GroupSpec, A: Subset, B: Subset) -> bool:
    """Perfect matching in the graph {(i, j) : a_i + b_j not in A}."""
    _same_size(spec, A, B)
    if not len(A):
        raise ArgumentError("subsets must be nonempty")
    allowed, _ = compatibility(spec, A, B)
    match = maximum_bipartite_matching(csr_matrix(allowed.astype(np.int8)), perm_type="column")
    return bool((match >= 0).all())


def hall_bound(spec: GroupSpec, A: Subset, B: Subset) -> tuple[bool, tuple[int, ...] | None]:
    """Check #(intersection over i in J of (A - a_i) ∩ B) <= n - #J for every J.

    Returns the first violating J (0-based, in size-then-lex order) if any.
    """
    _same_size(spec, A, B)
    n = len(A)
    if n > 20:
        raise ResourceError("the J-bound enumerates 2^n subsets; n must be <= 20")
    allowed, _ = compatibility(spec, A, B)
    # bit j of rows[i] set iff b_j lies in A - a_i
    rows = [sum(1 << j for j in range(n) if not allowed[i, j]) for i in range(n)]
    full = (1 << n) - 1
    for size in range(1, n + 1):
        for J in combinations(range(n), size):
            meet = full
            for i in J:
                meet &= rows[i]
            if meet.bit_count() > n - size:
                return False, J
    return True, None


def enumerate_matchings(spec: GroupSpec, A: Subset, B: Subset) -> Iterator[MatchingFn]:
    """Every matching from A to B, ordered lexicographically by permutation."""
    _same_size(spec, A, B)
    if not len(A):
        return
    allowed, sums = compatibility(spec, A, B)
    perms, _ = kernels.matching_codes(allowed, sums, spec.order)
    for row in perms:
        yield MatchingFn(A, B, tuple(int(c) for c in row))


def multiplicity_function(spec: GroupSpec, phi: MatchingFn) -> MultiplicityFunction:
    counts = Counter(add_elements(spec, a, b) for a, b in phi.items())
    return MultiplicityFunction(tuple(sorted(counts.items())))


def _codes(spec: GroupSpec, A: Subset, B: Subset, compare_bijections: bool):
    allowed, sums = compatibility(spec, A, B)
    if compare_bijections:
        allowed = np.ones_like(allowed)
    return kernels.matching_codes(allowed, sums, spec.order)


def acyclic_matchings(spec: GroupSpec, A: Subset, B: Subset, *,
                      compare_bijections: bool = False) -> list[MatchingFn]:
    """Matchings whose multiplicity function no other matching shares.

    With ``compare_bijections`` the comparison runs over all bijections
    A -> B and the bijections with a unique multiplicity function are
    returned, whether or not they are matchings.
    """
    _same_size(spec, A, B)
    if not len(A):
        return []
    perms, codes = _codes(spec, A, B, compare_bijections)
    keep = kernels.unique_code_mask(codes)
    return [MatchingFn(A, B, tuple(int(c) for c in row)) for row in perms[keep]]


def has_acyclic_matching(spec: GroupSpec, A: Subset, B: Subset, *,
                         compare_bijections: bool = False) -> bool:
    """Same verdict as ``bool(acyclic_matchings(...))`` without building objects."""
    _same_size(spec, A, B)
    if not len(A):
        return False
    _, codes = _codes(spec, A, B, compare_bijections)
    return kernels.has_unique_code(codes)


def group_Ab_bound_check(spec: GroupSpec, A: Subset, B: Subset) -> tuple[bool, tuple[int, ...] | None]:
    """With A_b = {a in A : a + b in A}, check #(meet of A_{b_i}, i in J) <= n - #J.

    J is reported 0-based.  The bound is guaranteed when A is matched to B.
    """
    _same_size(spec, A, B)
    n = len(A)
    if n > 20:
        raise ResourceError("n must be <= 20")
    allowed, _ = compatibility(spec, A, B)
    # bit i of members[j] set iff a_i + b_j in A, i.e. a_i in A_{b_j}
    members = [sum(1 << i for i in range(n) if not allowed[i, j]) for j in range(n)]
    full = (1 << n) - 1
    for size in range(1, n + 1):
        for J in combinations(range(n), size):
            meet = full
            for j in J:
                meet &= members[j]
            if meet.bit_count() > n - size:
                return False, J
    return True, None


def weak_m_intersection_check(family: Sequence[Iterable[int]], m: int) -> bool:
    """#(meet of J_i, i in J) <= m - #J for every nonempty J."""
    sets = [frozenset(s) for s in family]
    if len(sets) > 20:
        raise ResourceError("family size must be <= 20")
    for s in sets:
        if len(s) >= m:
            raise ArgumentError(f"member {sorted(s)} has cardinality >= m={m}")
    for size in range(1, len(sets) + 1):
        for J in combinations(range(len(sets)), size):
            if len(frozenset.intersection(*(sets[i] for i in J))) > m - size:
                return False
    return True


def polyadic_matching_check(spec: GroupSpec, A: Subset, B: Subset, phi: MatchingFn, arity: int) -> bool:
    """Matching test for the 2n-ary sum operation derived from the group.

    f(a_1..a_n, phi(a_1)..phi(a_n)) regroups as the sum of the n values
    a_i + phi(a_i), so the reachable values are the n-fold sums drawn with
    repetition from {a + phi(a)}.
    """
    _same_size(spec, A, B)
    if arity < 1:
        raise ArgumentError("arity must be >= 1")
    if len(A) ** arity > 10 ** 6:
        raise ResourceError(f"#A^n = {len(A) ** arity} exceeds 10^6")
    table = spec.add_table
    pair_sums = {spec.index(add_elements(spec, a, b)) for a, b in phi.items()}
    reach = set(pair_sums)
    for _ in range(arity - 1):
        reach = {int(table[r, s]) for r in reach for s in pair_sums}
    in_a = set(A.indices)
    return reach.isdisjoint(in_a)

