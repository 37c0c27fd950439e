"""Exact arithmetic in GF(p^m) for odd primes p.

Polynomials over GF(p) are coefficient tuples in ascending degree.  A field
element is the coefficient tuple of its residue modulo the defining
polynomial and always has length ``m``.  The integer encoding of an element
is ``sum(c_i * p**i)``; the additive embedding is chosen so that this
encoding equals the rank of the image in ``Z_p^m``.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass

from pdskit._arith import is_prime
from pdskit.group import MAX_ORDER, AbelianGroup, GroupElement, make_group

Poly = tuple[int, ...]


def _trim(a: Sequence[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = a[:]
    while len(r) >= len(b):
        c = r[-1] * inv_lead % p
        shift = len(r) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] = (r[shift + i] - c * y) % p
        r = _trim(r)
    return _trim(q), r


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = poly_divmod(a, f, p)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base, p), f, p)[1]
        base = poly_divmod(poly_mul(base, base, p), f, p)[1]
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: ``gcd(x^(p^i) - x, f) == 1`` for ``i <= deg(f) / 2``."""
    f = _trim(f)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(m // 2):
        xp = poly_powmod(xp, p, f, p)
        if len(poly_gcd(f, poly_sub(xp, x, p), p)) != 1:
            return False
    return True


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]

    def __repr__(self) -> str:
        return f"FieldElement{self.coeffs}"


@dataclass(frozen=True)
class FiniteField:
    """GF(p^m) as GF(p)[x] / (modulus)."""

    p: int
    m: int
    modulus: Poly

    @property
    def q(self) -> int:
        return self.p**self.m

    def __str__(self) -> str:
        return f"GF({self.q})"

    def from_int(self, n: int) -> FieldElement:
        if not 0 <= n < self.q:
            raise ValueError(f"{n} does not encode an element of {self}")
        digits = []
        for _ in range(self.m):
            n, d = divmod(n, self.p)
            digits.append(d)
        return FieldElement(tuple(digits))

    def to_int(self, a: FieldElement) -> int:
        return sum(c * self.p**i for i, c in enumerate(a.coeffs))

    def element(self, coeffs: Sequence[int]) -> FieldElement:
        """Reduce an arbitrary coefficient sequence into the field."""
        r = poly_divmod([c % self.p for c in coeffs], self.modulus, self.p)[1]
        return FieldElement(tuple(r + [0] * (self.m - len(r))))

    def elements(self) -> Iterator[FieldElement]:
        return (self.from_int(n) for n in range(self.q))

    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.m)

    def one(self) -> FieldElement:
        return FieldElement((1,) + (0,) * (self.m - 1))

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(tuple((x + y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: FieldElement) -> FieldElement:
        return FieldElement(tuple(-x % self.p for x in a.coeffs))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if self.m == 1:
            return FieldElement((a.coeffs[0] * b.coeffs[0] % self.p,))
        return self.element(poly_mul(a.coeffs, b.coeffs, self.p))

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: FieldElement) -> FieldElement:
        if not any(a.coeffs):
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.q - 2)


def make_field(p: int, m: int = 1) -> FiniteField:
    """GF(p^m) with the deterministic modulus.

    The modulus is the irreducible monic degree-``m`` polynomial whose lower
    coefficients have the smallest encoding ``sum(c_i * p**i)``.  For ``m == 1``
    the modulus is ``x`` and arithmetic is plain arithmetic mod ``p``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        raise ValueError("characteristic 2 is not supported")
    if m < 1:
        raise ValueError(f"extension degree {m} must be >= 1")
    if p**m > MAX_ORDER:
        raise ValueError(f"field order {p}^{m} exceeds the supported limit")
    if m == 1:
        return FiniteField(p, 1, (0, 1))
    for enc in range(p**m):
        low = []
        n = enc
        for _ in range(m):
            n, d = divmod(n, p)
            low.append(d)
        f = tuple(low) + (1,)
        if is_irreducible(f, p):
            return FiniteField(p, m, f)
    raise AssertionError("no irreducible polynomial found")  # unreachable: one always exists


def nonzero_squares(F: FiniteField) -> frozenset[FieldElement]:
    return frozenset(F.mul(x, x) for x in F.elements() if any(x.coeffs))


def additive_embedding(F: FiniteField) -> tuple[AbelianGroup, Callable[[FieldElement], GroupElement]]:
    """``(F, +)`` as ``Z_p^m``; the leading coefficient becomes ``coords[0]``."""
    G = make_group([F.p] * F.m)

    def embed(a: FieldElement) -> GroupElement:
        return tuple(reversed(a.coeffs))

    return G, embed
