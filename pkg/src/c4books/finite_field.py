"""Arithmetic in GF(p^k).

Elements are stored as k coefficients (low degree first) of a residue
modulo a fixed monic irreducible polynomial.  Every element also has an
integer index in ``range(q)`` whose natural order agrees with the
lexicographic order of the coefficient tuple; the vectorised table paths
used by the polarity-graph builder work on these indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

MAX_ORDER = 2**16
SCAN_INVERSE_LIMIT = 256
TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for sp in small:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


# -- polynomials over GF(p): tuples of ints, low degree first, no trailing zeros

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_divmod(a, b, p):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        c = rem[-1] * inv_lead % p
        quot[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] = (rem[shift + i] - c * y) % p
        rem = _trim(rem)
    return _trim(quot), rem


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def monic_polys(p: int, degree: int):
    """All monic polynomials of the given degree, lexicographic low-degree first."""
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(low) + (1,)


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim(poly)
    k = len(poly) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for f in monic_polys(p, d):
            if not poly_divmod(poly, f, p)[1]:
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    for f in monic_polys(p, k):
        if is_irreducible(f, p):
            return f
    raise AssertionError(f"no irreducible polynomial of degree {k} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^k) defined by a monic irreducible ``modulus`` (k+1 coefficients, low first)."""

    p: int
    k: int
    modulus: tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.k < 1:
            raise ValueError("extension degree must be >= 1")
        if self.p**self.k > MAX_ORDER:
            raise ValueError(f"field order {self.p}^{self.k} exceeds {MAX_ORDER}")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise ValueError("modulus coefficients out of range")
        if self.k > 1 and not is_irreducible(self.modulus, self.p):
            raise ValueError("modulus is reducible")
        object.__setattr__(self, "q", self.p**self.k)

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    # element construction

    def element(self, value) -> FieldElement:
        """Build an element from an int (prime field residue) or a coefficient sequence."""
        if isinstance(value, FieldElement):
            self._check(value)
            return value
        if isinstance(value, int):
            if self.k == 1:
                return FieldElement(self, (value % self.p,))
            if 0 <= value < self.p:
                return FieldElement(self, (value,) + (0,) * (self.k - 1))
            raise ValueError("integers denote prime-subfield elements; use from_index")
        coeffs = tuple(int(c) for c in value)
        if len(coeffs) != self.k or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"expected {self.k} coefficients in [0, {self.p})")
        return FieldElement(self, coeffs)

    def from_index(self, index: int) -> FieldElement:
        if not 0 <= index < self.q:
            raise ValueError("index out of range")
        coeffs = []
        for _ in range(self.k):
            index, c = divmod(index, self.p)
            coeffs.append(c)
        return FieldElement(self, tuple(reversed(coeffs)))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.k)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.k - 1))

    @property
    def x(self) -> FieldElement:
        """The class of the indeterminate (only meaningful for k > 1)."""
        if self.k == 1:
            raise ValueError("prime field has no generator x")
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def elements(self) -> list[FieldElement]:
        return [self.from_index(i) for i in range(self.q)]

    def _check(self, a: FieldElement):
        if a.field != self:
            raise ValueError(f"element of {a.field!r} used with {self!r}")

    # arithmetic

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        self._check(a)
        self._check(b)
        return FieldElement(self, tuple((x + y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: FieldElement) -> FieldElement:
        self._check(a)
        return FieldElement(self, tuple(-x % self.p for x in a.coeffs))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.add(a, self.neg(b))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        self._check(a)
        self._check(b)
        if self.k == 1:
            return FieldElement(self, (a.coeffs[0] * b.coeffs[0] % self.p,))
        prod = poly_mul(_trim(a.coeffs), _trim(b.coeffs), self.p)
        rem = poly_divmod(prod, self.modulus, self.p)[1]
        return FieldElement(self, tuple(rem) + (0,) * (self.k - len(rem)))

    def inv(self, a: FieldElement) -> FieldElement:
        if self.q <= SCAN_INVERSE_LIMIT:
            return self.inv_scan(a)
        return self.inv_euclid(a)

    def inv_scan(self, a: FieldElement) -> FieldElement:
        self._check(a)
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero")
        one = self.one
        for i in range(1, self.q):
            b = self.from_index(i)
            if self.mul(a, b) == one:
                return b
        raise AssertionError("no inverse found; modulus is not irreducible")

    def inv_euclid(self, a: FieldElement) -> FieldElement:
        self._check(a)
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero")
        p = self.p
        if self.k == 1:
            return FieldElement(self, (pow(a.coeffs[0], p - 2, p),))
        # extended Euclid: track s with s*a = r (mod modulus)
        r0, r1 = list(self.modulus), _trim(a.coeffs)
        s0, s1 = [], [1]
        while r1:
            quot, rem = poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, poly_sub(s0, poly_mul(quot, s1, p), p)
        # r0 is a nonzero constant
        c = pow(r0[0], p - 2, p)
        s = [x * c % p for x in s0]
        s = poly_divmod(s, self.modulus, p)[1]
        return FieldElement(self, tuple(s) + (0,) * (self.k - len(s)))

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        if e < 0:
            a, e = self.inv(a), -e
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # index tables for vectorised work

    @cached_property
    def add_table(self) -> np.ndarray:
        return self._table(self.add)

    @cached_property
    def mul_table(self) -> np.ndarray:
        return self._table(self.mul)

    def _table(self, op) -> np.ndarray:
        if self.q > TABLE_LIMIT:
            raise ValueError(f"tables are limited to q <= {TABLE_LIMIT}")
        els = self.elements()
        t = np.empty((self.q, self.q), dtype=np.int32)
        for i, a in enumerate(els):
            for j in range(i, self.q):
                t[i, j] = t[j, i] = op(a, els[j]).index
        return t


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec = field(repr=False, compare=True)
    coeffs: tuple[int, ...]

    @property
    def index(self) -> int:
        out = 0
        for c in self.coeffs:
            out = out * self.field.p + c
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        return self.field.add(self, self.field.element(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.field.sub(self, self.field.element(other))

    def __neg__(self):
        return self.field.neg(self)

    def __mul__(self, other):
        return self.field.mul(self, self.field.element(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self.field.mul(self, self.field.inv(self.field.element(other)))

    def __pow__(self, e: int):
        return self.field.pow(self, e)

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def __str__(self):
        if self.field.k == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"{c}{mono}" if c != 1 or i == 0 else mono)
        return "+".join(reversed(terms)) or "0"


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldSpec:
    """GF(p^k) with the lexicographically smallest monic irreducible modulus."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if p**k > MAX_ORDER:
        raise ValueError(f"field order {p}^{k} exceeds {MAX_ORDER}")
    return FieldSpec(p, k, smallest_irreducible(p, k))


def field_of_order(q: int) -> FieldSpec:
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    return make_field(*pk)


def fe_add(fld: FieldSpec, a: FieldElement, b: FieldElement) -> FieldElement:
    return fld.add(a, b)


def fe_mul(fld: FieldSpec, a: FieldElement, b: FieldElement) -> FieldElement:
    return fld.mul(a, b)


def fe_inv(fld: FieldSpec, a: FieldElement) -> FieldElement:
    return fld.inv(a)
