"""Concrete partial difference sets used as fixtures and witnesses."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from pdskit._arith import factor, prime_power
from pdskit.errors import HypothesisError
from pdskit.field import additive_embedding, make_field, nonzero_squares
from pdskit.group import AbelianGroup, hall_subgroup, presentation, span
from pdskit.pds import SubsetInGroup, is_subgroup


def paley(q: int) -> SubsetInGroup:
    """Nonzero squares of GF(q) inside ``(GF(q), +) = Z_p^m``."""
    if q % 2 == 0:
        raise HypothesisError(f"q = {q} is even; Paley sets need odd characteristic")
    pp = prime_power(q)
    if pp is None:
        raise ValueError(f"q = {q} is not a prime power")
    if q % 4 != 1:
        raise HypothesisError(
            f"q = {q} is 3 mod 4: -1 is a non-square, so the squares are not closed under negation"
        )
    F = make_field(*pp)
    G, embed = additive_embedding(F)
    return SubsetInGroup.from_elements(G, (embed(x) for x in nonzero_squares(F)))


def trivial_pds(
    G: AbelianGroup,
    *,
    generators: Iterable[Sequence[int]] | None = None,
    primes: Iterable[int] | None = None,
    members: Iterable[Sequence[int]] | None = None,
) -> SubsetInGroup:
    """``H \\ {e}`` for a subgroup H given by generators, a Hall prime set, or its members."""
    given = [x is not None for x in (generators, primes, members)]
    if sum(given) != 1:
        raise ValueError("give exactly one of generators, primes, members")
    if generators is not None:
        bits = span(G, generators)
    elif primes is not None:
        H, embed = hall_subgroup(G, primes)
        bits = np.zeros(G.order, dtype=bool)
        bits[embed.image_ranks()] = True
    else:
        bits = SubsetInGroup.from_elements(G, members).membership.copy()
        if not is_subgroup(G, bits):
            raise HypothesisError("the given elements are not closed under the group law")
    bits[0] = False
    return SubsetInGroup(G, bits)


def latin_square_lines(n: int, r: int) -> SubsetInGroup:
    """Union of the lines ``y = a x`` for slopes ``a = 0..r-1`` in ``Z_n x Z_n``, minus 0.

    Parameters are ``(n^2, r(n-1), n + r^2 - 3r, r^2 - r)``.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n = {n} must be odd and >= 3")
    if r < 1:
        raise ValueError(f"line count r = {r} must be >= 1")
    smallest = factor(n)[0][0]
    if r > smallest:
        raise HypothesisError(
            f"slope difference {smallest} is not a unit mod {n}; lines would meet outside the identity"
        )
    G, convert = presentation([n, n])
    elems = {convert((x, a * x)) for a in range(r) for x in range(n)}
    D = SubsetInGroup.from_elements(G, elems)
    bits = D.membership.copy()
    bits[0] = False
    return SubsetInGroup(G, bits)


def lines_parameters(n: int, r: int) -> tuple[int, int, int, int]:
    return (n * n, r * (n - 1), n + r * r - 3 * r, r * r - r)


__all__ = ["paley", "trivial_pds", "latin_square_lines", "lines_parameters"]
