"""Seeded property suites.

Each suite returns a ``SuiteResult`` whose JSON form depends only on the
seed, so two runs with the same seed print identical bytes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from .errors import PreconditionError
from .ffield import FieldSpec
from .groups import GroupSpec, Subset, cyclic_generator_stats
from .linear import (OrderedBasis, basis_matched_check, construct_matched_basis, dimension_criterion,
                     extend_family_exact, find_matched_basis_exhaustive, linear_acyclic_tiny,
                     minkowski_product_avoids_table, ordered_bases, primitive_dimension_search,
                     pullback_check, strong_matching_table, stabiliser_bound_check, weak_local_match)
from .matching import acyclic_matchings, group_Ab_bound_check, has_matching
from .poly import build_group_matrix, determinant
from .subspace import Subspace, contains, enumerate_subspaces, intersect, subfield_fixed, subspace_sum

DEFAULT_SEED = 20240601


@dataclass
class SuiteResult:
    name: str
    seed: int | None
    instances: int
    violations: int
    experimental: bool = False
    details: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {"suite": self.name, "seed": self.seed, "instances": self.instances,
                "violations": self.violations, "experimental": self.experimental,
                "details": self.details, "failures": self.failures[:5]}


def _random_subspace(rng: random.Random, field: FieldSpec, dim: int, ambient: Subspace | None = None) -> Subspace:
    """Uniform-ish random subspace: span of random vectors, resampled until dim is right."""
    ambient = Subspace.full(field) if ambient is None else ambient
    if dim == 0:
        return Subspace.zero(field)
    M = ambient.matrix
    while True:
        coeffs = np.array([[rng.randrange(field.p) for _ in range(ambient.dim)] for _ in range(dim)],
                          dtype=np.int64)
        S = Subspace.span(field, (coeffs @ M) % field.p)
        if S.dim == dim:
            return S


def _random_basis(rng: random.Random, S: Subspace) -> OrderedBasis:
    field = S.field
    while True:
        coeffs = np.array([[rng.randrange(field.p) for _ in range(S.dim)] for _ in range(S.dim)],
                          dtype=np.int64)
        vecs = (coeffs @ S.matrix) % field.p
        if Subspace.span(field, vecs).dim == S.dim:
            return OrderedBasis.of(field, [tuple(int(x) for x in v) for v in vecs])


# -- group suites --------------------------------------------------------------

def suite_det_nonzero(seed: int = DEFAULT_SEED, count: int = 500) -> SuiteResult:
    """Acyclic matching exists => the matching matrix has nonzero determinant."""
    rng = random.Random(seed)
    res = SuiteResult("det-nonzero", seed, 0, 0)
    with_acyclic = 0
    while res.instances < count:
        n = rng.randint(2, 9)
        k = rng.randint(1, min(4, n - 1))
        spec = GroupSpec.cyclic(n)
        A = Subset.from_indices(spec, rng.sample(range(n), k))
        B = Subset.from_indices(spec, rng.sample(range(1, n), k))
        res.instances += 1
        if not acyclic_matchings(spec, A, B):
            continue
        with_acyclic += 1
        _, invertible = determinant(build_group_matrix(spec, A, B))
        if not invertible:
            res.violations += 1
            res.failures.append({"n": n, "A": str(A), "B": str(B)})
    res.details["with_acyclic"] = with_acyclic
    return res


def suite_ab_bound_group(seed: int | None = None, max_n: int = 7, max_size: int = 3) -> SuiteResult:
    """Exhaustive: pairs with a matching satisfy the A_b intersection bound."""
    res = SuiteResult("ab-bound-group", None, 0, 0)
    for n in range(2, max_n + 1):
        spec = GroupSpec.cyclic(n)
        for k in range(1, min(max_size, n - 1) + 1):
            for a_idx in combinations(range(n), k):
                A = Subset.from_indices(spec, a_idx)
                for b_idx in combinations(range(1, n), k):
                    B = Subset.from_indices(spec, b_idx)
                    if not has_matching(spec, A, B):
                        continue
                    res.instances += 1
                    ok, J = group_Ab_bound_check(spec, A, B)
                    if not ok:
                        res.violations += 1
                        res.failures.append({"n": n, "A": str(A), "B": str(B), "J": list(J)})
    return res


def suite_cyclic_generators(seed: int | None = None, limit: int = 243) -> SuiteResult:
    """Generators of Z/p^k number order - (largest proper subgroup order)."""
    from sympy import primerange
    res = SuiteResult("cyclic-generators", None, 0, 0)
    for p in primerange(2, limit + 1):
        k = 1
        while p ** k <= limit:
            m_g, n_g = cyclic_generator_stats(p, k)
            res.instances += 1
            if m_g != p ** k - n_g:
                res.violations += 1
                res.failures.append({"p": p, "k": k})
            k += 1
    return res


# -- linear suites ------------------------------------------------------------

def suite_ab_bound_linear(seed: int = DEFAULT_SEED, count: int = 200) -> SuiteResult:
    """Constructed matched pairs always satisfy the A_b dimension bound."""
    rng = random.Random(seed)
    res = SuiteResult("ab-bound-linear", seed, 0, 0)
    tried = 0
    while res.instances < count:
        tried += 1
        m = rng.randint(2, 4)
        field = FieldSpec.default(2, m)
        n = rng.randint(1, m - 1)
        A, B = _random_subspace(rng, field, n), _random_subspace(rng, field, n)
        basis_a = _random_basis(rng, A)
        if not dimension_criterion(field, basis_a, A, B)[0]:
            continue
        basis_b = construct_matched_basis(field, basis_a, A, B)
        res.instances += 1
        report = stabiliser_bound_check(field, A, B, basis_b)
        if not report.holds:
            res.violations += 1
            res.failures.append({"m": m, "A": A.to_list(), "B": B.to_list(), "J": list(report.violating)})
    res.details["sampled"] = tried
    return res


def suite_criterion_tiny(seed: int | None = None) -> SuiteResult:
    """Exhaustive: the dimension criterion decides matched-basis existence."""
    res = SuiteResult("criterion-tiny", None, 0, 0)
    matchable = 0
    for m in (1, 2, 3):
        field = FieldSpec.default(2, m)
        for n in (1, 2):
            if n > m:
                continue
            spaces = list(enumerate_subspaces(field, n))
            for A in spaces:
                for B in spaces:
                    for basis in ordered_bases(A):
                        res.instances += 1
                        verdict, _ = dimension_criterion(field, OrderedBasis(basis, A), A, B)
                        found = find_matched_basis_exhaustive(field, basis, A, B)
                        matchable += verdict
                        if verdict != (found is not None):
                            res.violations += 1
                            res.failures.append({"m": m, "A": A.to_list(), "B": B.to_list(),
                                                 "basis": [list(v.coeffs) for v in basis]})
                        if found is not None and verdict:
                            built = construct_matched_basis(field, OrderedBasis(basis, A), A, B)
                            if not basis_matched_check(field, basis, built.vectors, A, B):
                                res.violations += 1
    res.details["matchable"] = matchable
    return res


def suite_strong_matching(seed: int | None = None, max_q: int = 64) -> SuiteResult:
    """Strong-matching verdict vs the elementwise Minkowski product scan, all pairs."""
    from sympy import isprime
    res = SuiteResult("strong-matching", None, 0, 0)
    per_field = {}
    for p in range(2, max_q + 1):
        if not isprime(p):
            continue
        m = 1
        while p ** m <= max_q:
            field = FieldSpec.default(p, m)
            spaces = [S for d in range(1, m + 1) for S in enumerate_subspaces(field, d)]
            route = strong_matching_table(field, spaces, spaces)
            oracle = minkowski_product_avoids_table(field, spaces, spaces)
            bad = np.argwhere(route != oracle)
            res.instances += route.size
            res.violations += len(bad)
            per_field[f"{p}^{m}"] = int(route.size)
            for i, j in bad[:5]:
                res.failures.append({"field": [p, m], "A": spaces[i].to_list(), "B": spaces[j].to_list()})
            m += 1
    res.details["pairs_per_field"] = per_field
    return res


def suite_weak_local(seed: int = DEFAULT_SEED, count: int = 100) -> SuiteResult:
    """weak_local_match over F_16 with H = F_4: every output has a_i b_i outside A."""
    rng = random.Random(seed)
    field = FieldSpec.default(2, 4)
    H = subfield_fixed(field, 2)
    res = SuiteResult("weak-local", seed, 0, 0)
    rejected: dict[str, int] = {}
    while res.instances < count:
        n = rng.randint(1, 3)
        A, B = _random_subspace(rng, field, n), _random_subspace(rng, field, n)
        try:
            basis_a, basis_b = weak_local_match(field, A, B, H)
        except PreconditionError as e:
            rejected[e.reason] = rejected.get(e.reason, 0) + 1
            continue
        res.instances += 1
        for a, b in zip(basis_a, basis_b):
            if A.contains_vector(field.mul(a, b)):
                res.violations += 1
                res.failures.append({"A": A.to_list(), "B": B.to_list()})
                break
    res.details["rejected"] = dict(sorted(rejected.items()))
    return res


def suite_family_extension(seed: int = DEFAULT_SEED, count: int = 100, m: int = 6) -> SuiteResult:
    """extend_family_exact output meets every J in dimension exactly n - #J."""
    rng = random.Random(seed)
    field = FieldSpec.default(2, m)
    res = SuiteResult("family-extension", seed, 0, 0)
    while res.instances < count:
        n = rng.randint(1, m)
        E = _random_subspace(rng, field, n)
        k = rng.randint(1, n)
        family = [_random_subspace(rng, field, rng.randint(0, n - 1), ambient=E) for _ in range(k)]
        try:
            ext = extend_family_exact(field, family, E)
        except PreconditionError:
            continue
        res.instances += 1
        for size in range(1, k + 1):
            for J in combinations(range(k), size):
                meet = ext[J[0]]
                for j in J[1:]:
                    meet = intersect(meet, ext[j])
                if meet.dim != n - size or not all(contains(ext[j], family[j]) for j in J):
                    res.violations += 1
                    res.failures.append({"n": n, "J": list(J)})
    return res


def suite_primitive_dimension(seed: int | None = None, degrees=(2, 3, 4, 6)) -> SuiteResult:
    """m(K,L) = m - n(K,L) measured exhaustively over F_2."""
    res = SuiteResult("primitive-dim", None, 0, 0, experimental=True)
    for m in degrees:
        report = primitive_dimension_search(FieldSpec.default(2, m))
        res.instances += 1
        res.details[str(m)] = {"m_KL": report["m_KL"], "n_KL": report["n_KL"], "equality": report["equality"]}
        if not report["equality"]:
            res.violations += 1
            res.failures.append({"m": m})
    return res


def suite_matrix_invertibility(seed: int | None = None, degrees=(2, 3, 4)) -> SuiteResult:
    """Acyclic strong matchings with a singular matching matrix (expected: none)."""
    res = SuiteResult("matrix-invertibility", None, 0, 0, experimental=True)
    asym = 0
    for m in degrees:
        field = FieldSpec.default(2, m)
        for d in (1, 2):
            if d > m:
                continue
            spaces = list(enumerate_subspaces(field, d))
            for A in spaces:
                for B in spaces:
                    out = linear_acyclic_tiny(field, A, B)
                    asym += out["asymmetric_pairs"]
                    for iso, ok in zip(out["acyclic"], out["matrix_invertible_for_each"]):
                        res.instances += 1
                        if not ok:
                            res.violations += 1
                            res.failures.append({"m": m, "A": A.to_list(), "B": B.to_list(),
                                                 "matrix": [list(r) for r in iso.matrix]})
    res.details["asymmetric_equivalences"] = asym
    return res


def suite_pullback(seed: int = DEFAULT_SEED, count: int = 100) -> SuiteResult:
    """Image-side and kernel-side matchedness agree for random F_2-linear maps F_16 <-> F_8.

    The variant that recomputes products in the codomain field is tallied
    but not counted as a violation.
    """
    rng = random.Random(seed)
    f16, f8 = FieldSpec.default(2, 4), FieldSpec.default(2, 3)
    res = SuiteResult("pullback", seed, 0, 0)
    codomain_agree = codomain_total = 0
    while res.instances < count:
        L, E = (f16, f8) if rng.random() < 0.5 else (f8, f16)
        n = rng.randint(1, L.m - 1)
        A, B = _random_subspace(rng, L, n), _random_subspace(rng, L, n)
        basis_a, basis_b = _random_basis(rng, A), _random_basis(rng, B)
        sigma = list(range(n))
        rng.shuffle(sigma)
        T = np.array([[rng.randrange(2) for _ in range(E.m)] for _ in range(L.m)], dtype=np.int64)
        out = pullback_check(L, E, T, basis_a.vectors, basis_b.vectors, A, B, sigma)
        res.instances += 1
        if out["image_side"] != out["kernel_side"]:
            res.violations += 1
            res.failures.append({"A": A.to_list(), "B": B.to_list(), "T": T.tolist()})
        if out["codomain_products"] is not None:
            codomain_total += 1
            codomain_agree += out["codomain_products"] == out["kernel_side"]
    res.details["codomain_products_agree"] = f"{codomain_agree}/{codomain_total}"
    return res


def suite_monotone(seed: int = DEFAULT_SEED, count: int = 200) -> SuiteResult:
    """Matched w.r.t. (V, sigma) and V ⊆ W imply matched w.r.t. (W, sigma)."""
    rng = random.Random(seed)
    res = SuiteResult("monotone", seed, 0, 0)
    while res.instances < count:
        m = rng.randint(2, 4)
        field = FieldSpec.default(2, m)
        n = rng.randint(1, m)
        A, B = _random_subspace(rng, field, n), _random_subspace(rng, field, n)
        basis_a, basis_b = _random_basis(rng, A), _random_basis(rng, B)
        V = _random_subspace(rng, field, rng.randint(0, m - 1))
        W = subspace_sum(V, _random_subspace(rng, field, rng.randint(0, m)))
        sigma = list(range(n))
        rng.shuffle(sigma)
        if not basis_matched_check(field, basis_a.vectors, basis_b.vectors, A, B, V, sigma):
            continue
        res.instances += 1
        if not basis_matched_check(field, basis_a.vectors, basis_b.vectors, A, B, W, sigma):
            res.violations += 1
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "det-nonzero": suite_det_nonzero,
    "ab-bound-group": suite_ab_bound_group,
    "cyclic-generators": suite_cyclic_generators,
    "ab-bound-linear": suite_ab_bound_linear,
    "criterion-tiny": suite_criterion_tiny,
    "strong-matching": suite_strong_matching,
    "weak-local": suite_weak_local,
    "family-extension": suite_family_extension,
    "primitive-dim": suite_primitive_dimension,
    "matrix-invertibility": suite_matrix_invertibility,
    "pullback": suite_pullback,
    "monotone": suite_monotone,
}


def run_suite(name: str, seed: int | None = None) -> SuiteResult:
    """Exhaustive suites accept and ignore the seed."""
    return SUITES[name](seed=DEFAULT_SEED if seed is None else seed)
