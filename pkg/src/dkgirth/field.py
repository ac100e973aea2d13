"""Arithmetic in GF(p^m).

Elements are identified by a canonical integer index: the polynomial
c_0 + c_1 x + ... + c_{m-1} x^{m-1} over GF(p) maps to sum(c_i * p**i).
Index 0 is zero and index 1 is one.  All arithmetic goes through
precomputed q x q tables, which is fine for the small fields used here
(q up to a few hundred).

The hot paths elsewhere in the package work on raw indices and the
``FieldSpec`` tables directly; ``Elem`` is the checked, user-facing
wrapper.
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "FieldSpec",
    "Elem",
    "mk_field",
    "parse_q",
    "factor_prime_power",
    "is_prime",
    "is_irreducible",
    "add",
    "neg",
    "mul",
    "inv",
    "units",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factor_prime_power(n: int) -> tuple[int, int]:
    """Return (p, m) with n == p**m, or raise ValueError."""
    if n < 2:
        raise ValueError(f"{n} is not a prime power")
    p = next(d for d in itertools.count(2) if n % d == 0)
    m = 0
    r = n
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise ValueError(f"{n} is not a prime power")
    return p, m


def parse_q(text: str) -> tuple[int, int]:
    """Parse ``"P^M"`` or ``"N"`` into (p, m)."""
    text = text.strip()
    match = re.fullmatch(r"(\d+)\s*\^\s*(\d+)", text)
    if match:
        p, m = int(match.group(1)), int(match.group(2))
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        return p, m
    if not text.isdigit():
        raise ValueError(f"cannot parse field size {text!r}")
    return factor_prime_power(int(text))


# -- polynomials over GF(p), coefficient lists low degree first ------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _monic_polys(p: int, degree: int) -> Iterable[list[int]]:
    # lexicographic in (c_{d-1}, ..., c_0) read as base-p digits of the index
    for idx in range(p ** degree):
        coeffs = [(idx // p ** i) % p for i in range(degree)]
        yield coeffs + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Exhaustive irreducibility test for a monic polynomial over GF(p)."""
    poly = _trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(poly, f, p):
                return False
    return True


def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    for f in _monic_polys(p, m):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("an irreducible polynomial exists for every degree")


class FieldSpec:
    """GF(p^m) with a fixed modulus.  Immutable; equality is by (p, m, modulus)."""

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = (0, 1) if m == 1 else _smallest_irreducible(p, m)
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {m}")
        if any(not 0 <= c < p for c in modulus):
            raise ValueError(f"modulus coefficients must lie in [0, {p})")
        if m > 1 and not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "q", p ** m)
        object.__setattr__(self, "modulus", modulus)

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    # -- encoding ----------------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple((a // self.p ** i) % self.p for i in range(self.m))

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.m:
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
        return sum((c % self.p) * self.p ** i for i, c in enumerate(coeffs))

    # -- tables ------------------------------------------------------------

    @cached_property
    def add_table(self) -> list[list[int]]:
        p, q = self.p, self.q
        if self.m == 1:
            return [[(a + b) % p for b in range(q)] for a in range(q)]
        cs = [self.coeffs(a) for a in range(q)]
        return [[self.from_coeffs([(x + y) % p for x, y in zip(cs[a], cs[b])])
                 for b in range(q)] for a in range(q)]

    @cached_property
    def mul_table(self) -> list[list[int]]:
        p, q = self.p, self.q
        if self.m == 1:
            return [[(a * b) % p for b in range(q)] for a in range(q)]
        cs = [self.coeffs(a) for a in range(q)]
        table = [[0] * q for _ in range(q)]
        for a in range(1, q):
            for b in range(a, q):
                prod = [0] * (2 * self.m - 1)
                for i, x in enumerate(cs[a]):
                    if x:
                        for j, y in enumerate(cs[b]):
                            prod[i + j] += x * y
                c = self.from_coeffs(_poly_mod([v % p for v in prod], self.modulus, p))
                table[a][b] = table[b][a] = c
        return table

    @cached_property
    def neg_table(self) -> list[int]:
        return [self.add_table[a].index(0) for a in range(self.q)]

    @cached_property
    def inv_table(self) -> list[int]:
        # inv_table[0] is a sentinel; callers must reject zero first
        return [0] + [self.mul_table[a].index(1) for a in range(1, self.q)]

    # -- raw index arithmetic ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul_table[a][self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        mt = self.mul_table
        while e:
            if e & 1:
                result = mt[result][a]
            a = mt[a][a]
            e >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(q)."""
        return n % self.p

    def elem(self, a: int) -> Elem:
        return Elem(self, a)

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}


class Elem:
    """A field element: a canonical index plus the field it lives in."""

    __slots__ = ("field", "index")

    def __init__(self, field: FieldSpec, index: int):
        if not 0 <= index < field.q:
            raise ValueError(f"index {index} out of range for {field!r}")
        self.field = field
        self.index = index

    def _other(self, other) -> int:
        if isinstance(other, Elem):
            if other.field != self.field:
                raise ValueError(f"mixed fields: {self.field!r} and {other.field!r}")
            return other.index
        if isinstance(other, int):
            return self.field.from_int(other)
        raise TypeError(f"cannot combine Elem with {type(other).__name__}")

    def __add__(self, other):
        return Elem(self.field, self.field.add(self.index, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Elem(self.field, self.field.sub(self.index, self._other(other)))

    def __rsub__(self, other):
        return Elem(self.field, self.field.sub(self._other(other), self.index))

    def __neg__(self):
        return Elem(self.field, self.field.neg(self.index))

    def __mul__(self, other):
        return Elem(self.field, self.field.mul(self.index, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Elem(self.field, self.field.div(self.index, self._other(other)))

    def __pow__(self, e: int):
        return Elem(self.field, self.field.pow(self.index, e))

    def inverse(self) -> Elem:
        return Elem(self.field, self.field.inv(self.index))

    def __eq__(self, other) -> bool:
        if isinstance(other, Elem):
            return self.field == other.field and self.index == other.index
        if isinstance(other, int):
            return self.index == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.index))

    def __int__(self) -> int:
        return self.index

    __index__ = __int__

    def __bool__(self) -> bool:
        return self.index != 0

    def __repr__(self) -> str:
        return f"Elem({self.index}, {self.field!r})"


def mk_field(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build GF(p^m).

    When ``modulus`` is omitted and m > 1 the lexicographically smallest
    monic irreducible of degree m is used, so element indices are
    reproducible.

    >>> mk_field(2, 2).modulus
    (1, 1, 1)
    """
    return FieldSpec(p, m, modulus)


def add(a: Elem, b: Elem) -> Elem:
    return a + b


def neg(a: Elem) -> Elem:
    return -a


def mul(a: Elem, b: Elem) -> Elem:
    return a * b


def inv(a: Elem) -> Elem:
    return a.inverse()


def units(spec: FieldSpec) -> list[Elem]:
    """The q-1 nonzero elements in index order."""
    return [Elem(spec, a) for a in range(1, spec.q)]
