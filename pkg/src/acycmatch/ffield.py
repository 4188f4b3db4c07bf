"""Arithmetic in F_{p^m} = F_p[t] / (f) for a monic irreducible f of degree m.

Elements are coefficient vectors in the power basis 1, t, ..., t^{m-1}.
Bulk operations use the integer code ``sum(c_i * p**i)`` and discrete
log/exp tables; single-element inversion goes through the extended
Euclidean algorithm on polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Sequence

import numpy as np
from sympy import factorint, isprime

from .errors import ArgumentError, DomainError, ResourceError, StructuralError

MAX_TABLE = 2 ** 16


# -- polynomials over F_p as low-to-high coefficient lists --------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise DomainError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return _trim(q), a


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    m = len(f) - 1
    for d in range(1, m // 2 + 1):
        for low in product(range(p), repeat=d):
            g = list(low) + [1]
            if not _poly_divmod(f, g, p)[1]:
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m, ordering by (c_{m-1}, ..., c_0).

    Returned low-to-high including the leading 1, e.g. (1, 1, 1) for t^2+t+1.
    """
    if not isprime(p):
        raise ArgumentError(f"{p} is not prime")
    if m < 1:
        raise ArgumentError("degree must be >= 1")
    if p ** m > 2 ** 20:
        raise ResourceError("irreducibility scan limited to p^m <= 2^20")
    for high_to_low in product(range(p), repeat=m):
        f = list(reversed(high_to_low)) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True, order=True)
class FieldElement:
    coeffs: tuple[int, ...]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.coeffs)) + "]"


@dataclass(frozen=True)
class FieldSpec:
    """F_p subset F_{p^m}; ``modulus`` is low-to-high with leading coefficient 1."""

    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        mod = tuple(int(c) % self.p for c in self.modulus)
        if not isprime(self.p):
            raise ArgumentError(f"{self.p} is not prime")
        if self.m < 1 or len(mod) != self.m + 1 or mod[-1] != 1:
            raise ArgumentError(f"modulus {mod} is not monic of degree {self.m}")
        if not _is_irreducible(list(mod), self.p):
            raise ArgumentError(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @classmethod
    def default(cls, p: int, m: int) -> "FieldSpec":
        return cls(p, m, default_modulus(p, m))

    @property
    def q(self) -> int:
        return self.p ** self.m

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    # -- element conversion --

    def element(self, coeffs: Sequence[int] | int) -> FieldElement:
        if isinstance(coeffs, (int, np.integer)):
            return self.decode(int(coeffs))
        c = tuple(int(x) for x in coeffs)
        if len(c) != self.m:
            raise StructuralError(f"expected {self.m} coefficients, got {len(c)}")
        return FieldElement(tuple(x % self.p for x in c))

    def encode(self, x: FieldElement | Sequence[int]) -> int:
        c = x.coeffs if isinstance(x, FieldElement) else x
        return int(sum(int(ci) * self.p ** i for i, ci in enumerate(c)))

    def decode(self, code: int) -> FieldElement:
        return FieldElement(tuple(int(d) for d in self.digits[code]))

    @property
    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.m)

    @property
    def one(self) -> FieldElement:
        return FieldElement((1,) + (0,) * (self.m - 1))

    @property
    def t(self) -> FieldElement:
        if self.m == 1:
            raise ArgumentError("t is only defined for m >= 2")
        return FieldElement((0, 1) + (0,) * (self.m - 2))

    @cached_property
    def powers(self) -> np.ndarray:
        return self.p ** np.arange(self.m, dtype=np.int64)

    @cached_property
    def digits(self) -> np.ndarray:
        """``digits[code]`` is the coefficient vector of ``code``."""
        if self.q > MAX_TABLE:
            raise ResourceError(f"tables limited to q <= {MAX_TABLE}")
        codes = np.arange(self.q, dtype=np.int64)
        return (codes[:, None] // self.powers[None, :]) % self.p

    def codes_of(self, vectors: np.ndarray) -> np.ndarray:
        return (np.asarray(vectors, dtype=np.int64) % self.p) @ self.powers

    # -- arithmetic on coefficient vectors --

    def _reduce(self, poly: list[int]) -> tuple[int, ...]:
        r = _poly_divmod(poly, self.modulus, self.p)[1]
        return tuple(r + [0] * (self.m - len(r)))

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(tuple((x + y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(self._reduce(_poly_mul(a.coeffs, b.coeffs, self.p)))

    def inverse(self, a: FieldElement) -> FieldElement:
        """Extended Euclid on (a, modulus)."""
        if not any(a.coeffs):
            raise DomainError("zero has no inverse")
        p = self.p
        r0, r1 = list(self.modulus), _trim(list(a.coeffs))
        s0, s1 = [], [1]
        while r1:
            q, r = _poly_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, p), p)
        # r0 is a nonzero constant
        c = pow(r0[0], p - 2, p)
        return FieldElement(self._reduce(_poly_mul(s0, [c], p)))

    def power(self, a: FieldElement, e: int) -> FieldElement:
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- log/exp tables on codes --

    @cached_property
    def _log_exp(self) -> tuple[np.ndarray, np.ndarray]:
        if self.q > MAX_TABLE:
            raise ResourceError(f"tables limited to q <= {MAX_TABLE}")
        n = self.q - 1
        prime_factors = list(factorint(n)) if n > 1 else []
        gen = None
        for code in range(1, self.q):
            g = self.decode(code)
            if all(self.power(g, n // r) != self.one for r in prime_factors):
                gen = g
                break
        exp = np.zeros(n, dtype=np.int64)
        x = self.one
        for i in range(n):
            exp[i] = self.encode(x)
            x = self.mul(x, gen)
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp] = np.arange(n)
        return log, exp

    @property
    def log_table(self) -> np.ndarray:
        return self._log_exp[0]

    @property
    def exp_table(self) -> np.ndarray:
        return self._log_exp[1]

    def mul_codes(self, a, b):
        """Vectorised product of element codes (numpy broadcasting)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        log, exp = self._log_exp
        zero = (a == 0) | (b == 0)
        out = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where(zero, 0, out)

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no inverse")
        log, exp = self._log_exp
        return int(exp[(-log[a]) % (self.q - 1)])

    @cached_property
    def mul_table(self) -> np.ndarray:
        if self.q > 4096:
            raise ResourceError("full multiplication table limited to q <= 4096")
        c = np.arange(self.q)
        return self.mul_codes(c[:, None], c[None, :])

    # -- Frobenius and subfields --

    @cached_property
    def frobenius_matrix(self) -> np.ndarray:
        """Row i holds the coefficients of (t^i)^p, so x^p = x @ F (mod p)."""
        rows = []
        for i in range(self.m):
            basis_vec = [0] * self.m
            basis_vec[i] = 1
            rows.append(self.power(FieldElement(tuple(basis_vec)), self.p).coeffs)
        return np.array(rows, dtype=np.int64)

    def frobenius_power(self, d: int) -> np.ndarray:
        F = np.eye(self.m, dtype=np.int64)
        for _ in range(d):
            F = (F @ self.frobenius_matrix) % self.p
        return F

    @property
    def proper_subfield_degrees(self) -> list[int]:
        return [d for d in range(1, self.m) if self.m % d == 0]

    @cached_property
    def primitive_mask(self) -> np.ndarray:
        """``primitive_mask[code]``: the element generates F_{p^m} over F_p."""
        mask = np.zeros(self.q, dtype=bool)
        log = self.log_table
        nz = np.arange(1, self.q)
        mask[nz] = True
        for d in self.proper_subfield_degrees:
            in_sub = (log[nz] * (self.p ** d - 1)) % (self.q - 1) == 0
            mask[nz[in_sub]] = False
        return mask


def field_mul_inv(field: FieldSpec, a: FieldElement, b: FieldElement) -> tuple[FieldElement, FieldElement]:
    """Return ``(a*b, a^{-1})``; raises DomainError when a is zero."""
    return field.mul(a, b), field.inverse(a)


def degree_stats(field: FieldSpec) -> tuple[int, int]:
    """(smallest divisor of m above 1, largest proper divisor of m)."""
    m = field.m
    if m < 2:
        raise ArgumentError("degree_stats needs m >= 2")
    divisors = [d for d in range(1, m + 1) if m % d == 0]
    return min(d for d in divisors if d > 1), max(d for d in divisors if d < m)
