"""Arithmetic in GF(q), q = p^m.

Elements are integers in ``[0, q)``.  The base-p digits of an element are
the coefficients of a polynomial of degree < m over GF(p), least
significant digit first, so for GF(9) with modulus x^2 + 1 the element 5
is ``2 + 1*a``.

Addition and multiplication are tabulated at construction time; the tables
are derived from polynomial arithmetic and never the other way round.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

MAX_Q = 81


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- polynomials over GF(p), coefficient lists with the constant term first --

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo b over GF(p); b must be nonzero."""
    a = _poly_trim([c % p for c in a])
    b = _poly_trim([c % p for c in b])
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        factor = a[-1] * inv_lead % p
        for i, c in enumerate(b):
            a[i + shift] = (a[i + shift] - factor * c) % p
        _poly_trim(a)
    return a


def _monic_polys(p: int, deg: int):
    """Monic polynomials of the given degree in lexicographic order of
    their coefficient tuples, constant term first."""
    for low in product(range(p), repeat=deg):
        yield tuple(low) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for cand in _monic_polys(p, d):
            if not _poly_mod(poly, cand, p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    for cand in _monic_polys(p, m):
        if is_irreducible(cand, p):
            return cand
    raise ArithmeticError(f"no irreducible polynomial of degree {m} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^m) with a fixed irreducible modulus.

    Instances compare and hash by ``(p, m, modulus)``; the lookup tables
    ride along and are read-only.
    """

    p: int
    m: int
    modulus: tuple[int, ...]
    add_table: np.ndarray = field(init=False, repr=False, compare=False)
    mul_table: np.ndarray = field(init=False, repr=False, compare=False)
    neg_table: np.ndarray = field(init=False, repr=False, compare=False)
    inv_table: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise ValueError(f"extension degree must be >= 1, got {self.m}")
        if self.p ** self.m < 3:
            raise ValueError("field must have at least 3 elements")
        if self.p ** self.m > MAX_Q:
            raise ValueError(f"q = {self.p ** self.m} exceeds the supported maximum {MAX_Q}")
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over GF({self.p})")
        add, mul = _build_tables(self.p, self.m, self.modulus)
        q = self.q
        neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.uint8)
        inv = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        for name, arr in (("add_table", add), ("mul_table", mul), ("neg_table", neg), ("inv_table", inv)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def digits(self, a: int) -> tuple[int, ...]:
        """Polynomial coefficients of element ``a``, constant term first."""
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_digits(self, coeffs: Sequence[int]) -> int:
        rep = 0
        for c in reversed(list(coeffs)):
            rep = rep * self.p + (c % self.p)
        return rep

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.m, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            mono = "x" if i == 1 else f"x^{i}"
            if i == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)

    def element_str(self, a: int) -> str:
        """Human-readable element; integers for prime fields, polynomials in
        ``a`` otherwise."""
        if self.m == 1:
            return str(a)
        parts = []
        for i, c in enumerate(self.digits(a)):
            if c == 0:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts) if parts else "0"


def _build_tables(p: int, m: int, modulus: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    q = p ** m
    polys = []
    for a in range(q):
        coeffs = []
        for _ in range(m):
            coeffs.append(a % p)
            a //= p
        polys.append(coeffs)

    def encode(coeffs: list[int]) -> int:
        coeffs = list(coeffs) + [0] * (m - len(coeffs))
        rep = 0
        for c in reversed(coeffs[:m]):
            rep = rep * p + c
        return rep

    add = np.zeros((q, q), dtype=np.uint8)
    mul = np.zeros((q, q), dtype=np.uint8)
    for a in range(q):
        for b in range(q):
            add[a, b] = encode([(x + y) % p for x, y in zip(polys[a], polys[b])])
            prod = [0] * (2 * m - 1)
            for i, x in enumerate(polys[a]):
                if x:
                    for j, y in enumerate(polys[b]):
                        prod[i + j] = (prod[i + j] + x * y) % p
            mul[a, b] = encode(_poly_mod(prod, modulus, p) if any(prod) else [])
    return add, mul


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> FieldSpec:
    """GF(p^m) using the lexicographically smallest monic irreducible modulus
    (``x`` for prime fields)."""
    if m < 1:
        raise ValueError(f"extension degree must be >= 1, got {m}")
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if p ** m < 3:
        raise ValueError("field must have at least 3 elements")
    return FieldSpec(p, m, smallest_irreducible(p, m))


def field_of_order(q: int) -> FieldSpec:
    for p in range(2, q + 1):
        if is_prime(p):
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if m and r == 1:
                return make_field(p, m)
            if q % p == 0:
                break
    raise ValueError(f"{q} is not a prime power")


def _check(spec: FieldSpec, *elems: int) -> None:
    for a in elems:
        if not 0 <= a < spec.q:
            raise ValueError(f"element {a} out of range for GF({spec.q})")


def add(spec: FieldSpec, a: int, b: int) -> int:
    _check(spec, a, b)
    return int(spec.add_table[a, b])


def neg(spec: FieldSpec, a: int) -> int:
    _check(spec, a)
    return int(spec.neg_table[a])


def sub(spec: FieldSpec, a: int, b: int) -> int:
    _check(spec, a, b)
    return int(spec.add_table[a, spec.neg_table[b]])


def mul(spec: FieldSpec, a: int, b: int) -> int:
    _check(spec, a, b)
    return int(spec.mul_table[a, b])


def inv(spec: FieldSpec, a: int) -> int:
    _check(spec, a)
    if a == 0:
        raise ZeroDivisionError("0 has no multiplicative inverse")
    return int(spec.inv_table[a])


def power(spec: FieldSpec, a: int, e: int) -> int:
    _check(spec, a)
    if e < 0:
        return power(spec, inv(spec, a), -e)
    result, base = 1, a
    while e:
        if e & 1:
            result = int(spec.mul_table[result, base])
        base = int(spec.mul_table[base, base])
        e >>= 1
    return result


def elements(spec: FieldSpec) -> list[int]:
    return list(range(spec.q))


# -- vectorised helpers ------------------------------------------------------

def vadd(spec: FieldSpec, a, b) -> np.ndarray:
    return spec.add_table[a, b]


def vmul(spec: FieldSpec, a, b) -> np.ndarray:
    return spec.mul_table[a, b]


def matmul(spec: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over GF(q) of uint8 arrays ``a`` (r x s) and ``b`` (s x c)."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if spec.is_prime_field:
        return ((a.astype(np.int64) @ b.astype(np.int64)) % spec.p).astype(np.uint8)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint8)
    for j in range(a.shape[1]):
        out = spec.add_table[out, spec.mul_table[a[:, j, None], b[None, j, :]]]
    return out
