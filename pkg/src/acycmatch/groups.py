"""Finite abelian groups given as products of cyclic factors, and their subsets.

Elements carry residue tuples.  Internally every element also has a dense
index in ``range(order)`` (mixed radix, first factor most significant), so
index order coincides with lexicographic order on residue tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import prod
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np
from sympy import isprime

from .errors import ArgumentError, StructuralError


@dataclass(frozen=True, order=True)
class GroupElement:
    residues: tuple[int, ...]

    def __str__(self) -> str:
        if len(self.residues) == 1:
            return str(self.residues[0])
        return "(" + ",".join(map(str, self.residues)) + ")"


@dataclass(frozen=True)
class GroupSpec:
    """Z/n_1 x ... x Z/n_k, with factors taken exactly as given."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(n) for n in self.invariant_factors)
        if not factors or any(n < 2 for n in factors):
            raise ArgumentError(f"invariant factors must all be >= 2, got {factors}")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def cyclic(cls, n: int) -> "GroupSpec":
        return cls((n,))

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def zero(self) -> GroupElement:
        return GroupElement((0,) * self.rank)

    def element(self, value: int | Sequence[int]) -> GroupElement:
        """Build a reduced element from an int (cyclic groups) or a residue tuple."""
        residues = (value,) if isinstance(value, (int, np.integer)) else tuple(value)
        if len(residues) != self.rank:
            raise StructuralError(
                f"element {residues} has {len(residues)} components, group has {self.rank}")
        return GroupElement(tuple(int(r) % n for r, n in zip(residues, self.invariant_factors)))

    def check(self, g: GroupElement) -> None:
        if len(g.residues) != self.rank:
            raise StructuralError(f"element {g} does not belong to a rank-{self.rank} group")
        for r, n in zip(g.residues, self.invariant_factors):
            if not 0 <= r < n:
                raise StructuralError(f"element {g} is not reduced modulo {self.invariant_factors}")

    def index(self, g: GroupElement) -> int:
        idx = 0
        for r, n in zip(g.residues, self.invariant_factors):
            idx = idx * n + r
        return idx

    def from_index(self, idx: int) -> GroupElement:
        out = []
        for n in reversed(self.invariant_factors):
            idx, r = divmod(idx, n)
            out.append(r)
        return GroupElement(tuple(reversed(out)))

    def elements(self) -> list[GroupElement]:
        return [self.from_index(i) for i in range(self.order)]

    @cached_property
    def add_table(self) -> np.ndarray:
        """``add_table[i, j]`` is the index of ``from_index(i) + from_index(j)``."""
        digits = np.array([self.from_index(i).residues for i in range(self.order)], dtype=np.int64)
        total = np.zeros((self.order, self.order), dtype=np.int64)
        for axis, n in enumerate(self.invariant_factors):
            col = (digits[:, axis][:, None] + digits[:, axis][None, :]) % n
            total = total * n + col
        return total

    @cached_property
    def neg_index(self) -> np.ndarray:
        return np.argmin(self.add_table, axis=1).astype(np.int64)

    def __str__(self) -> str:
        return " x ".join(f"Z/{n}" for n in self.invariant_factors)


def add_elements(spec: GroupSpec, g: GroupElement, h: GroupElement) -> GroupElement:
    spec.check(g)
    spec.check(h)
    return GroupElement(tuple((a + b) % n for a, b, n in zip(g.residues, h.residues, spec.invariant_factors)))


def negate(spec: GroupSpec, g: GroupElement) -> GroupElement:
    spec.check(g)
    return GroupElement(tuple((-a) % n for a, n in zip(g.residues, spec.invariant_factors)))


@dataclass(frozen=True)
class Subset:
    """A finite subset kept as a strictly increasing tuple of elements."""

    spec: GroupSpec
    elements: tuple[GroupElement, ...] = field(default=())

    def __post_init__(self):
        for g in self.elements:
            self.spec.check(g)
        elems = tuple(self.elements)
        if any(a >= b for a, b in zip(elems, elems[1:])):
            raise StructuralError("subset elements must be strictly sorted without duplicates")

    @classmethod
    def of(cls, spec: GroupSpec, values: Iterable[int | Sequence[int]]) -> "Subset":
        return cls(spec, tuple(sorted({spec.element(v) for v in values})))

    @classmethod
    def from_indices(cls, spec: GroupSpec, indices: Iterable[int]) -> "Subset":
        return cls(spec, tuple(spec.from_index(int(i)) for i in sorted(set(indices))))

    @classmethod
    def parse(cls, spec: GroupSpec, text: str) -> "Subset":
        """Parse ``"{0,4,6}"`` or ``"{(0,1),(1,2)}"``."""
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise StructuralError(f"subset text must be enclosed in braces: {text!r}")
        body = body[1:-1].strip()
        if not body:
            return cls(spec, ())
        if "(" in body:
            tuples = re.findall(r"\(([^()]*)\)", body)
            values = [tuple(int(x) for x in t.split(",")) for t in tuples]
        else:
            values = [int(x) for x in body.split(",")]
        elems = [spec.element(v) for v in values]
        if len(set(elems)) != len(elems):
            raise StructuralError(f"duplicate elements in {text!r}")
        return cls(spec, tuple(sorted(elems)))

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(self.spec.index(g) for g in self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.elements

    def __getitem__(self, i: int) -> GroupElement:
        return self.elements[i]

    def __str__(self) -> str:
        return "{" + ",".join(str(g) for g in self.elements) + "}"

    def translate(self, t: GroupElement) -> "Subset":
        return Subset(self.spec, tuple(sorted(add_elements(self.spec, g, t) for g in self.elements)))


def sumset(spec: GroupSpec, A: Subset, B: Subset) -> Subset:
    """The set {a + b : a in A, b in B}."""
    if A.spec != spec or B.spec != spec:
        raise StructuralError("subsets belong to a different group")
    if not len(A) or not len(B):
        return Subset(spec, ())
    table = spec.add_table
    sums = table[np.ix_(np.array(A.indices), np.array(B.indices))]
    return Subset.from_indices(spec, np.unique(sums))


def enumerate_subsets(spec: GroupSpec, size: int,
                      predicate: Callable[[Subset], bool] | None = None) -> Iterator[Subset]:
    """All ``size``-subsets in lexicographic order, optionally filtered."""
    if not 0 <= size <= spec.order:
        raise ArgumentError(f"size {size} outside [0, {spec.order}]")
    elems = spec.elements()
    for combo in combinations(elems, size):
        s = Subset(spec, combo)
        if predicate is None or predicate(s):
            yield s


def cyclic_generator_stats(p: int, k: int) -> tuple[int, int]:
    """Return (number of generators, largest proper subgroup size) of Z/p^k.

    Both counts come from direct enumeration of element orders.
    """
    if not isprime(p):
        raise ArgumentError(f"{p} is not prime")
    if k < 1:
        raise ArgumentError("k must be positive")
    n = p ** k
    generators = 0
    largest_proper = 1
    for g in range(n):
        order, x = 1, g
        while x != 0:
            x = (x + g) % n
            order += 1
        if order == n:
            generators += 1
        else:
            largest_proper = max(largest_proper, order)
    return generators, largest_proper
