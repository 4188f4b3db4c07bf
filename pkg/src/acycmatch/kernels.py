"""Hot inner loops with a numba implementation and a pure-numpy twin.

The module-level names (``matching_codes``, ``count_matchings``, ...) are
bound to whichever backend ``_accel.BACKEND`` selected.  Both variants stay
importable under ``*_numba`` / ``*_numpy`` so tests and the benchmark can
compare them directly.

A *multiplicity code* packs the sorted multiset of sums ``a_i + b_sigma(i)``
(as element indices) into one int64: ``sum_j s_(j) * base**j``.  Two
matchings have equal multiplicity functions iff their codes are equal.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import _accel
from ._accel import njit
from .errors import ResourceError

_SUFFIX = 8  # numpy path materialises at most 8! rows per block


def check_code_range(base: int, k: int) -> None:
    if k and base ** k >= 2 ** 62:
        raise ResourceError(f"multiplicity codes for {k} sums over {base} elements overflow int64")


# -- numba -----------------------------------------------------------------

@njit
def _encode_sorted(vals, base):
    k = vals.shape[0]
    for i in range(1, k):
        v = vals[i]
        j = i - 1
        while j >= 0 and vals[j] > v:
            vals[j + 1] = vals[j]
            j -= 1
        vals[j + 1] = v
    code = 0
    mult = 1
    for i in range(k):
        code += vals[i] * mult
        mult *= base
    return code


@njit
def _count_matchings_numba(allowed):
    k = allowed.shape[0]
    used = np.zeros(k, np.bool_)
    choice = np.full(k, -1, np.int64)
    row = 0
    count = 0
    while row >= 0:
        prev = choice[row]
        if prev >= 0:
            used[prev] = False
        c = prev + 1
        while c < k and (used[c] or not allowed[row, c]):
            c += 1
        if c == k:
            choice[row] = -1
            row -= 1
            continue
        choice[row] = c
        used[c] = True
        if row == k - 1:
            count += 1
        else:
            row += 1
    return count


@njit
def _fill_matchings_numba(allowed, sums, base, perms, codes):
    k = allowed.shape[0]
    used = np.zeros(k, np.bool_)
    choice = np.full(k, -1, np.int64)
    vals = np.empty(k, np.int64)
    row = 0
    out = 0
    while row >= 0:
        prev = choice[row]
        if prev >= 0:
            used[prev] = False
        c = prev + 1
        while c < k and (used[c] or not allowed[row, c]):
            c += 1
        if c == k:
            choice[row] = -1
            row -= 1
            continue
        choice[row] = c
        used[c] = True
        if row == k - 1:
            for i in range(k):
                perms[out, i] = choice[i]
                vals[i] = sums[i, choice[i]]
            codes[out] = _encode_sorted(vals, base)
            out += 1
        else:
            row += 1
    return out


def matching_codes_numba(allowed, sums, base):
    allowed = np.ascontiguousarray(allowed, dtype=np.bool_)
    sums = np.ascontiguousarray(sums, dtype=np.int64)
    k = allowed.shape[0]
    check_code_range(base, k)
    total = _count_matchings_numba(allowed)
    perms = np.empty((total, k), np.int8)
    codes = np.empty(total, np.int64)
    _fill_matchings_numba(allowed, sums, np.int64(base), perms, codes)
    return perms, codes


def count_matchings_numba(allowed):
    return int(_count_matchings_numba(np.ascontiguousarray(allowed, dtype=np.bool_)))


@njit
def _has_unique_sorted(sorted_codes):
    n = sorted_codes.shape[0]
    i = 0
    while i < n:
        j = i + 1
        while j < n and sorted_codes[j] == sorted_codes[i]:
            j += 1
        if j - i == 1:
            return True
        i = j
    return False


def has_unique_code_numba(codes):
    return bool(_has_unique_sorted(np.sort(codes)))


# -- numpy -----------------------------------------------------------------

@lru_cache(maxsize=None)
def permutation_table(k: int) -> np.ndarray:
    """All permutations of ``range(k)`` in lexicographic order, int8 rows."""
    if k == 0:
        return np.zeros((1, 0), np.int8)
    prev = permutation_table(k - 1)
    blocks = []
    for first in range(k):
        rest = np.delete(np.arange(k, dtype=np.int8), first)
        block = np.empty((prev.shape[0], k), np.int8)
        block[:, 0] = first
        block[:, 1:] = rest[prev]
        blocks.append(block)
    table = np.concatenate(blocks)
    table.flags.writeable = False
    return table


def _prefixes(allowed: np.ndarray, depth: int):
    """Partial injective assignments of the first ``depth`` rows, lex order."""
    k = allowed.shape[0]
    out = []

    def rec(prefix):
        row = len(prefix)
        if row == depth:
            out.append(prefix)
            return
        for c in range(k):
            if allowed[row, c] and c not in prefix:
                rec(prefix + (c,))

    rec(())
    return out


def matching_codes_numpy(allowed, sums, base):
    allowed = np.asarray(allowed, dtype=bool)
    sums = np.asarray(sums, dtype=np.int64)
    k = allowed.shape[0]
    check_code_range(base, k)
    depth = max(0, k - _SUFFIX)
    suffix = permutation_table(k - depth)
    powers = base ** np.arange(k, dtype=np.int64)
    perm_blocks, code_blocks = [], []
    rows = np.arange(depth, k)
    for prefix in _prefixes(allowed, depth):
        free = np.array([c for c in range(k) if c not in prefix], dtype=np.int8)
        cols = free[suffix]
        ok = allowed[rows, cols].all(axis=1)
        if not ok.any():
            continue
        cols = cols[ok]
        perm = np.empty((cols.shape[0], k), np.int8)
        perm[:, :depth] = prefix
        perm[:, depth:] = cols
        vals = np.sort(sums[np.arange(k), perm], axis=1)
        perm_blocks.append(perm)
        code_blocks.append(vals @ powers)
    if not perm_blocks:
        return np.empty((0, k), np.int8), np.empty(0, np.int64)
    return np.concatenate(perm_blocks), np.concatenate(code_blocks)


def count_matchings_numpy(allowed):
    allowed = np.asarray(allowed, dtype=bool)
    k = allowed.shape[0]
    depth = max(0, k - _SUFFIX)
    suffix = permutation_table(k - depth)
    rows = np.arange(depth, k)
    total = 0
    for prefix in _prefixes(allowed, depth):
        free = np.array([c for c in range(k) if c not in prefix], dtype=np.int8)
        total += int(allowed[rows, free[suffix]].all(axis=1).sum())
    return total


def has_unique_code_numpy(codes):
    if codes.shape[0] == 0:
        return False
    _, counts = np.unique(codes, return_counts=True)
    return bool((counts == 1).any())


def unique_code_mask(codes: np.ndarray) -> np.ndarray:
    """Boolean mask of the codes that occur exactly once."""
    if codes.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    _, inverse, counts = np.unique(codes, return_inverse=True, return_counts=True)
    return counts[inverse] == 1


# -- subspace masks (F_q with q <= 64) ---------------------------------------

@njit
def _no_nonzero_overlap_numba(row_masks, col_masks, out):
    """out[i, j] = every mask in row_masks[i] meets col_masks[j] only in bit 0."""
    na = row_masks.shape[0]
    nb = col_masks.shape[0]
    width = row_masks.shape[1]
    one = np.uint64(1)
    for i in range(na):
        for j in range(nb):
            ok = True
            for w in range(width):
                m = row_masks[i, w]
                if m == 0:
                    continue
                if (m & col_masks[j]) != one:
                    ok = False
                    break
            out[i, j] = ok


def no_nonzero_overlap_numba(row_masks, col_masks):
    out = np.empty((row_masks.shape[0], col_masks.shape[0]), np.bool_)
    _no_nonzero_overlap_numba(np.ascontiguousarray(row_masks, np.uint64),
                              np.ascontiguousarray(col_masks, np.uint64), out)
    return out


def no_nonzero_overlap_numpy(row_masks, col_masks):
    row_masks = np.asarray(row_masks, np.uint64)
    col_masks = np.asarray(col_masks, np.uint64)
    out = np.ones((row_masks.shape[0], col_masks.shape[0]), bool)
    for w in range(row_masks.shape[1]):
        m = row_masks[:, w][:, None]
        live = m != 0
        out &= ~live | ((m & col_masks[None, :]) == np.uint64(1))
    return out


@njit
def _product_meets_numba(a_elems, b_elems, mul, a_member, out):
    for i in range(a_elems.shape[0]):
        for j in range(b_elems.shape[0]):
            hit = False
            for x in a_elems[i]:
                if x <= 0:
                    continue
                for y in b_elems[j]:
                    if y > 0 and a_member[i, mul[x, y]]:
                        hit = True
                        break
                if hit:
                    break
            out[i, j] = not hit


def product_avoids_numba(a_elems, b_elems, mul, a_member):
    """out[i, j] = (A_i * B_j) meets A_i only in 0; element lists padded with -1."""
    out = np.empty((a_elems.shape[0], b_elems.shape[0]), np.bool_)
    _product_meets_numba(np.ascontiguousarray(a_elems, np.int64), np.ascontiguousarray(b_elems, np.int64),
                         np.ascontiguousarray(mul, np.int64), np.ascontiguousarray(a_member, np.bool_), out)
    return out


def product_avoids_numpy(a_elems, b_elems, mul, a_member):
    a_elems = np.asarray(a_elems, np.int64)
    b_elems = np.asarray(b_elems, np.int64)
    out = np.empty((a_elems.shape[0], b_elems.shape[0]), bool)
    b_live = b_elems > 0
    b_safe = np.where(b_live, b_elems, 0)
    for i in range(a_elems.shape[0]):
        hit = np.zeros(b_elems.shape[0], bool)
        for x in a_elems[i]:
            if x <= 0:
                continue
            prods = mul[x][b_safe]
            hit |= (a_member[i][prods] & b_live).any(axis=1)
        out[i] = ~hit
    return out


if _accel.BACKEND == "numba":
    matching_codes = matching_codes_numba
    count_matchings = count_matchings_numba
    has_unique_code = has_unique_code_numba
    no_nonzero_overlap = no_nonzero_overlap_numba
    product_avoids = product_avoids_numba
else:
    matching_codes = matching_codes_numpy
    count_matchings = count_matchings_numpy
    has_unique_code = has_unique_code_numpy
    no_nonzero_overlap = no_nonzero_overlap_numpy
    product_avoids = product_avoids_numpy
