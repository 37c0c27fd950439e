"""Small exact integer helpers shared by the group, field and existence modules."""

from __future__ import annotations

from math import isqrt

Factorization = list[tuple[int, int]]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def factor(v: int) -> Factorization:
    """Prime factorization of ``v`` by trial division, primes ascending."""
    if v < 2:
        raise ValueError(f"cannot factor {v}: need an integer >= 2")
    out: Factorization = []
    n = v
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, a)`` with ``n == p**a`` and ``a >= 1``, or None."""
    if n < 2:
        return None
    f = factor(n)
    return f[0] if len(f) == 1 else None


def exact_sqrt(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None
