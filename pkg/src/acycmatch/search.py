"""Exhaustive searches for pairs (A, B) in Z/nZ without an acyclic matching.

Pairs are visited with sizes ascending, then A lexicographically, then B
lexicographically.  The first failing pair in that order is the canonical
witness; sharded runs recover it as the minimum over shards, so the report
does not depend on the worker count.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Callable, Iterator

import numpy as np

from .errors import ArgumentError
from .groups import GroupSpec, Subset
from .matching import compatibility, has_acyclic_matching
from . import kernels


class WitnessKind(str, Enum):
    NO_ACYCLIC_MATCHING = "NoAcyclicMatching"
    NO_MATCHING = "NoMatching"


WEAK_ACYCLIC = "weak-acyclic-matching"
ACYCLIC = "acyclic-matching"


@dataclass(frozen=True)
class Witness:
    A: Subset
    B: Subset
    kind: WitnessKind

    def verify(self, compare_bijections: bool = False) -> bool:
        spec = self.A.spec
        if has_acyclic_matching(spec, self.A, self.B, compare_bijections=compare_bijections):
            return False
        allowed, _ = compatibility(spec, self.A, self.B)
        has_any = kernels.count_matchings(allowed) > 0
        return has_any == (self.kind is WitnessKind.NO_ACYCLIC_MATCHING)


@dataclass
class SearchReport:
    modulus: int
    property: str
    outcome: str  # "holds" | "counterexample"
    witness: Witness | None
    pairs_examined: int
    elapsed_seconds: float

    @property
    def holds(self) -> bool:
        return self.outcome == "holds"

    def to_dict(self) -> dict:
        out = {
            "modulus": self.modulus,
            "property": self.property,
            "outcome": self.outcome,
        }
        if self.witness is not None:
            out["witness"] = {"A": str(self.witness.A), "B": str(self.witness.B),
                              "kind": self.witness.kind.value}
        out["pairs_examined"] = self.pairs_examined
        out["elapsed_seconds"] = round(self.elapsed_seconds, 6)
        return out


# B-candidates for a given A, as a sorted list of element indices
CandidateFn = Callable[[tuple[int, ...]], list[int]]


def _weak_candidates(spec: GroupSpec) -> CandidateFn:
    table, neg = spec.add_table, spec.neg_index

    def candidates(a_idx):
        diffs = {int(table[x, neg[y]]) for x in a_idx for y in a_idx}
        return [g for g in range(spec.order) if g not in diffs]

    return candidates


def _nonzero_candidates(spec: GroupSpec) -> CandidateFn:
    rest = list(range(1, spec.order))
    return lambda a_idx: rest


def _pairs(a_idx, cands, k) -> Iterator[tuple[int, ...]]:
    if len(cands) >= k:
        yield from combinations(cands, k)


def _scan_shard(spec, a_list, k, candidates, compare_bijections, stop_at, shard_no):
    """Return (pairs examined, failing (A, B) index tuples or None)."""
    examined = 0
    for a_idx in a_list:
        if stop_at() < shard_no:
            return examined, None
        A = Subset.from_indices(spec, a_idx)
        for b_idx in _pairs(a_idx, candidates(a_idx), k):
            examined += 1
            B = Subset.from_indices(spec, b_idx)
            if not has_acyclic_matching(spec, A, B, compare_bijections=compare_bijections):
                return examined, (a_idx, b_idx)
    return examined, None


def _search(n: int, prop: str, candidates_for: Callable[[GroupSpec], CandidateFn],
            max_size: int | None, threads: int, compare_bijections: bool,
            symmetry_pruning: bool) -> SearchReport:
    if n < 2:
        raise ArgumentError("modulus must be >= 2")
    if threads < 1:
        raise ArgumentError("threads must be >= 1")
    spec = GroupSpec.cyclic(n)
    candidates = candidates_for(spec)
    top = n if max_size is None else min(max_size, n)
    if top < 1:
        raise ArgumentError("max_size must be >= 1")
    start = time.perf_counter()
    examined_total = 0
    for k in range(1, top + 1):
        a_all = [a for a in combinations(range(n), k) if not symmetry_pruning or a[0] == 0]
        shards = _split(a_all, threads)
        lock = threading.Lock()
        best = [len(shards)]

        def stop_at():
            return best[0]

        def run(i):
            res = _scan_shard(spec, shards[i], k, candidates, compare_bijections, stop_at, i)
            if res[1] is not None:
                with lock:
                    best[0] = min(best[0], i)
            return res

        if len(shards) == 1:
            results = [run(0)]
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(run, range(len(shards))))
        for examined, found in results:
            examined_total += examined
            if found is not None:
                if symmetry_pruning:
                    # pruned runs never produce witnesses
                    return _search(n, prop, candidates_for, max_size, threads,
                                   compare_bijections, symmetry_pruning=False)
                A = Subset.from_indices(spec, found[0])
                B = Subset.from_indices(spec, found[1])
                allowed, _ = compatibility(spec, A, B)
                kind = (WitnessKind.NO_ACYCLIC_MATCHING if kernels.count_matchings(allowed)
                        else WitnessKind.NO_MATCHING)
                return SearchReport(n, prop, "counterexample", Witness(A, B, kind),
                                    examined_total, time.perf_counter() - start)
    return SearchReport(n, prop, "holds", None, examined_total, time.perf_counter() - start)


def _split(items: list, parts: int) -> list[list]:
    parts = max(1, min(parts, len(items)))
    bounds = np.linspace(0, len(items), parts + 1).astype(int)
    return [items[lo:hi] for lo, hi in zip(bounds[:-1], bounds[1:])]


def weak_acyclic_search(n: int, max_size: int | None = None, *, threads: int = 1,
                        compare_bijections: bool = False,
                        symmetry_pruning: bool = False) -> SearchReport:
    """Check every pair with #A = #B and A ∩ (A + B) empty for an acyclic matching.

    Under that admissibility condition every bijection is a matching, so
    ``compare_bijections`` only changes how the same verdict is computed.
    """
    return _search(n, WEAK_ACYCLIC, _weak_candidates, max_size, threads,
                   compare_bijections, symmetry_pruning)


def acyclic_property_search(n: int, max_size: int | None = None, *, threads: int = 1,
                            compare_bijections: bool = False,
                            symmetry_pruning: bool = False) -> SearchReport:
    """Check every pair with #A = #B and 0 not in B for an acyclic matching."""
    return _search(n, ACYCLIC, _nonzero_candidates, max_size, threads,
                   compare_bijections, symmetry_pruning)
