"""Brute-force oracles shared by the tests.

These work element by element through the group law and never touch the
vectorised rank arithmetic used by the library.
"""

from collections import Counter

import pytest

from pdskit.group import AbelianGroup


def brute_counts(G: AbelianGroup, elems) -> Counter:
    elems = [tuple(e) for e in elems]
    out = Counter()
    for g in elems:
        for h in elems:
            if g != h:
                out[G.sub(g, h)] += 1
    return out


def brute_pds_params(G: AbelianGroup, elems):
    """(v, k, lambda, mu) by direct counting, or None when D is not a PDS."""
    elems = {tuple(e) for e in elems}
    counts = brute_counts(G, elems)
    e = G.identity()
    inside = {counts[x] for x in G.elements() if x != e and x in elems}
    outside = {counts[x] for x in G.elements() if x != e and x not in elems}
    if len(inside) > 1 or len(outside) > 1:
        return None
    lam = inside.pop() if inside else 0
    mu = outside.pop() if outside else 0
    return (G.order, len(elems), lam, mu)


def trial_division_irreducible(f, p):
    """Monic ``f`` (ascending coefficients) has no monic factor of degree 1..deg/2."""
    m = len(f) - 1

    def divides(g):
        r = list(f)
        while len(r) >= len(g):
            c = r[-1] * pow(g[-1], -1, p) % p
            shift = len(r) - len(g)
            for i, y in enumerate(g):
                r[shift + i] = (r[shift + i] - c * y) % p
            while r and r[-1] == 0:
                r.pop()
        return not r

    for d in range(1, m // 2 + 1):
        for enc in range(p**d):
            low = [(enc // p**i) % p for i in range(d)]
            if divides(low + [1]):
                return False
    return True


@pytest.fixture
def oracle():
    class Oracle:
        counts = staticmethod(brute_counts)
        params = staticmethod(brute_pds_params)
        irreducible = staticmethod(trial_division_irreducible)

    return Oracle
