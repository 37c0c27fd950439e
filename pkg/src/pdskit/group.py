"""Finite abelian groups in primary decomposition.

A group is a direct product of cyclic groups ``Z_{p^a}`` listed in
ascending ``(p, a)`` order.  Elements are plain tuples of residues.  Elements
are ranked in mixed radix with ``coords[0]`` as the most significant digit, so
in ``Z3 x Z5`` the element ``(1, 0)`` has rank 5.  Persisted subsets store
these ranks, so the convention is frozen.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from pdskit._arith import factor, prime_power

GroupElement = tuple[int, ...]

MAX_ORDER = 2**32


@dataclass(frozen=True)
class AbelianGroup:
    """Direct product of cyclic groups of prime-power order."""

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        factors = tuple(int(f) for f in self.factors)
        object.__setattr__(self, "factors", factors)
        keys = []
        for f in factors:
            pp = prime_power(f)
            if pp is None:
                raise ValueError(f"factor {f} is not a prime power >= 2")
            keys.append(pp)
        if keys != sorted(keys):
            raise ValueError(f"factors {factors} are not in canonical (prime, exponent) order")
        if math.prod(factors) > MAX_ORDER:
            raise ValueError(f"group order {math.prod(factors)} exceeds the supported limit 2**32")

    @cached_property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(sorted({prime_power(f)[0] for f in self.factors}))

    @cached_property
    def exponent(self) -> int:
        """Least common multiple of the cyclic factors."""
        return math.lcm(*self.factors) if self.factors else 1

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " x ".join(f"Z{f}" for f in self.factors)

    def descriptor(self) -> str:
        """Canonical text form, e.g. ``"3,3,5"``."""
        return ",".join(map(str, self.factors)) if self.factors else "1"

    # -- group law ---------------------------------------------------------

    def element(self, coords: Iterable[int]) -> GroupElement:
        """Validate ``coords`` as an element of this group."""
        g = tuple(int(c) for c in coords)
        if len(g) != len(self.factors):
            raise ValueError(f"element {g} has {len(g)} coordinates, group has {len(self.factors)} factors")
        for c, f in zip(g, self.factors):
            if not 0 <= c < f:
                raise ValueError(f"coordinate {c} not reduced modulo {f}")
        return g

    def identity(self) -> GroupElement:
        return (0,) * len(self.factors)

    def add(self, g: Sequence[int], h: Sequence[int]) -> GroupElement:
        if len(g) != len(self.factors) or len(h) != len(self.factors):
            raise ValueError("coordinate-length mismatch")
        return tuple((a + b) % f for a, b, f in zip(g, h, self.factors))

    def neg(self, g: Sequence[int]) -> GroupElement:
        if len(g) != len(self.factors):
            raise ValueError("coordinate-length mismatch")
        return tuple(-a % f for a, f in zip(g, self.factors))

    def sub(self, g: Sequence[int], h: Sequence[int]) -> GroupElement:
        return self.add(g, self.neg(h))

    # -- ranking -----------------------------------------------------------

    @cached_property
    def weights(self) -> tuple[int, ...]:
        w = []
        acc = 1
        for f in reversed(self.factors):
            w.append(acc)
            acc *= f
        return tuple(reversed(w))

    def rank(self, g: Sequence[int]) -> int:
        g = self.element(g)
        return sum(c * w for c, w in zip(g, self.weights))

    def unrank(self, i: int) -> GroupElement:
        if not 0 <= i < self.order:
            raise ValueError(f"index {i} out of range for group of order {self.order}")
        return tuple((i // w) % f for w, f in zip(self.weights, self.factors))

    def elements(self) -> Iterator[GroupElement]:
        """All elements in rank order, identity first."""
        return itertools.product(*(range(f) for f in self.factors))

    # -- vectorised tables (rank space) --------------------------------------

    @cached_property
    def coords(self) -> np.ndarray:
        """``(order, n_factors)`` array; row ``i`` holds ``unrank(i)``."""
        if not self.factors:
            return np.zeros((1, 0), dtype=np.int64)
        return np.indices(self.factors, dtype=np.int64).reshape(len(self.factors), -1).T.copy()

    @cached_property
    def neg_ranks(self) -> np.ndarray:
        """``neg_ranks[i] == rank(neg(unrank(i)))``."""
        return self.diff_ranks(np.zeros(1, dtype=np.int64), np.arange(self.order))[0]

    def diff_ranks(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Matrix with entry ``[i, j] = rank(unrank(a[i]) - unrank(b[j]))``."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros((a.size, b.size), dtype=np.int64)
        for i, (f, w) in enumerate(zip(self.factors, self.weights)):
            ca = self.coords[a, i]
            cb = self.coords[b, i]
            out += ((ca[:, None] - cb[None, :]) % f) * w
        return out

    # -- subgroups -----------------------------------------------------------

    def hall_subgroup(self, primes: Iterable[int]) -> tuple[AbelianGroup, Embedding]:
        return hall_subgroup(self, primes)


@dataclass(frozen=True)
class Embedding:
    """Injective homomorphism H -> G padding unselected coordinates with 0."""

    source: AbelianGroup
    target: AbelianGroup
    positions: tuple[int, ...]

    def __call__(self, h: Sequence[int]) -> GroupElement:
        h = self.source.element(h)
        g = [0] * len(self.target.factors)
        for pos, c in zip(self.positions, h):
            g[pos] = c
        return tuple(g)

    def image_ranks(self) -> np.ndarray:
        """Ranks in the target of the images of all source elements, in source rank order."""
        w = np.array([self.target.weights[p] for p in self.positions], dtype=np.int64)
        return self.source.coords @ w if self.positions else np.zeros(1, dtype=np.int64)


def make_group(orders: Iterable[int]) -> AbelianGroup:
    """Group ``Z_{o1} x Z_{o2} x ...`` brought to canonical primary form."""
    return presentation(orders)[0]


def presentation(orders: Iterable[int]) -> tuple[AbelianGroup, Callable[[Sequence[int]], GroupElement]]:
    """Canonical group for ``Z_{o1} x ...`` and the isomorphism into it.

    The returned function maps a tuple ``(x1, x2, ...)`` with ``xi`` taken
    modulo ``oi`` to the corresponding canonical element (Chinese remainder
    split, then a stable sort of the prime-power parts).
    """
    orders = [int(o) for o in orders]
    if not orders:
        raise ValueError("need at least one cyclic order")
    parts = []
    for idx, o in enumerate(orders):
        if o < 2:
            raise ValueError(f"cyclic order {o} must be >= 2")
        for p, a in factor(o):
            parts.append((p, a, idx))
    parts.sort(key=lambda t: (t[0], t[1]))
    group = AbelianGroup(tuple(p**a for p, a, _ in parts))

    def convert(values: Sequence[int]) -> GroupElement:
        if len(values) != len(orders):
            raise ValueError(f"expected {len(orders)} coordinates, got {len(values)}")
        return tuple(values[idx] % (p**a) for p, a, idx in parts)

    return group, convert


def parse_group(text: str) -> AbelianGroup:
    """Parse a descriptor such as ``"3,15"``."""
    items = [s.strip() for s in text.split(",")]
    if not items or any(not s for s in items):
        raise ValueError(f"malformed group descriptor {text!r}")
    try:
        orders = [int(s) for s in items]
    except ValueError:
        raise ValueError(f"malformed group descriptor {text!r}") from None
    return make_group(orders)


def hall_subgroup(G: AbelianGroup, primes: Iterable[int]) -> tuple[AbelianGroup, Embedding]:
    """The subgroup collecting every cyclic factor whose prime lies in ``primes``."""
    chosen = set(primes)
    positions = tuple(i for i, f in enumerate(G.factors) if prime_power(f)[0] in chosen)
    H = AbelianGroup(tuple(G.factors[i] for i in positions))
    return H, Embedding(H, G, positions)


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def abelian_groups(v: int) -> list[AbelianGroup]:
    """Every abelian group of order ``v`` up to isomorphism."""
    if v < 1:
        raise ValueError(f"order {v} must be positive")
    if v == 1:
        return [AbelianGroup(())]
    per_prime = []
    for p, e in factor(v):
        per_prime.append([tuple(p**a for a in sorted(part)) for part in _partitions(e)])
    return [AbelianGroup(sum(choice, ())) for choice in itertools.product(*per_prime)]


def span(G: AbelianGroup, generators: Iterable[Sequence[int]]) -> np.ndarray:
    """Membership vector (by rank) of the subgroup generated by ``generators``."""
    gens = [G.rank(g) for g in generators]
    member = np.zeros(G.order, dtype=bool)
    member[0] = True
    frontier = np.array([0], dtype=np.int64)
    neg = G.neg_ranks
    while frontier.size:
        # x + g == x - (-g)
        step = G.diff_ranks(frontier, neg[gens]).ravel() if gens else np.zeros(0, dtype=np.int64)
        fresh = np.unique(step[~member[step]])
        member[fresh] = True
        frontier = fresh
    return member
