"""Exhaustive search for Paley-type partial difference sets in small groups.

In a group of odd order no non-identity element is its own negative, so the
non-identity elements split into ``(v - 1) / 2`` pairs ``{x, -x}``.  A
regular subset is a union of such pairs, and a Paley-type PDS is a union of
exactly ``(v - 1) / 4`` of them.  The search walks those unions depth first in
lexicographic order of pair indices, keeping exact running difference counts.

Because every count is the same on ``x`` and ``-x``, counts are stored per
pair.  Adding pair ``{x, -x}`` next to an existing pair ``{z, -z}`` raises the
count of the pairs containing ``x - z`` and ``x + z`` by 2 each; the pair
itself adds 1 to the pair containing ``2x``.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from pdskit.errors import HypothesisError, InconsistencyError
from pdskit.group import AbelianGroup
from pdskit.pds import SubsetInGroup, classify, is_paley_type, is_regular

log = logging.getLogger(__name__)

EXHAUSTIVE_BOUND = 49
PRUNED_BOUND = 121


def incremental_prune(counts: Sequence[int], v: int) -> bool:
    """Keep/cut decision for a partial selection: False (cut) once a count exceeds ``(v - 1) / 4``.

    Counts never decrease as pairs are added, so no Paley-type completion is
    ever cut.
    """
    cap = (v - 1) // 4
    return all(c <= cap for c in counts)


@dataclass(frozen=True)
class _Tables:
    pair_ranks: tuple[tuple[int, int], ...]
    plus: tuple[tuple[int, ...], ...]
    minus: tuple[tuple[int, ...], ...]
    double: tuple[int, ...]
    choose: int
    lam: int
    mu: int


def _tables(G: AbelianGroup) -> _Tables:
    v = G.order
    neg = G.neg_ranks
    reps = [r for r in range(1, v) if r < neg[r]]
    pair_of = np.empty(v, dtype=np.int64)
    for i, r in enumerate(reps):
        pair_of[r] = pair_of[neg[r]] = i
    reps_arr = np.array(reps, dtype=np.int64)
    minus = pair_of[G.diff_ranks(reps_arr, reps_arr)]
    plus = pair_of[G.diff_ranks(reps_arr, neg[reps_arr])]
    double = pair_of[G.diff_ranks(reps_arr, neg[reps_arr]).diagonal()]
    return _Tables(
        tuple((r, int(neg[r])) for r in reps),
        tuple(tuple(int(x) for x in row) for row in plus),
        tuple(tuple(int(x) for x in row) for row in minus),
        tuple(int(x) for x in double),
        (v - 1) // 4,
        (v - 5) // 4,
        (v - 1) // 4,
    )


def _search_branch(t: _Tables, first: int, prune: bool, limit: int | None) -> tuple[list[tuple[int, ...]], int]:
    """All Paley selections whose smallest pair index is ``first``."""
    n_pairs = len(t.pair_ranks)
    need = t.choose
    cap = t.mu
    lam, mu = t.lam, t.mu
    plus, minus, double = t.plus, t.minus, t.double
    counts = [0] * n_pairs
    chosen: list[int] = []
    found: list[tuple[int, ...]] = []
    nodes = 0

    def push(i: int) -> bool:
        ok = True
        pi, mi = plus[i], minus[i]
        for j in chosen:
            a = pi[j]
            b = mi[j]
            counts[a] += 2
            counts[b] += 2
            if counts[a] > cap or counts[b] > cap:
                ok = False
        d = double[i]
        counts[d] += 1
        if counts[d] > cap:
            ok = False
        chosen.append(i)
        return ok

    def pop() -> None:
        i = chosen.pop()
        pi, mi = plus[i], minus[i]
        for j in chosen:
            counts[pi[j]] -= 2
            counts[mi[j]] -= 2
        counts[double[i]] -= 1

    def leaf() -> None:
        member = set(chosen)
        for i, c in enumerate(counts):
            if c != (lam if i in member else mu):
                return
        found.append(tuple(chosen))

    def walk(start: int) -> bool:
        nonlocal nodes
        depth = len(chosen)
        if depth == need:
            leaf()
            return limit is not None and len(found) >= limit
        for i in range(start, n_pairs - (need - depth) + 1):
            nodes += 1
            ok = push(i)
            stop = (ok or not prune) and walk(i + 1)
            pop()
            if stop:
                return True
        return False

    nodes += 1
    if push(first) or not prune:
        walk(first + 1)
    pop()
    return found, nodes


def _run_branch(args: tuple) -> tuple[list[tuple[int, ...]], int]:
    return _search_branch(*args)


@dataclass(frozen=True)
class SearchOutcome:
    group: AbelianGroup
    results: tuple[SubsetInGroup, ...]
    nodes: int
    pruned: bool


def paley_search(
    G: AbelianGroup,
    limit: int | None = None,
    prune: bool = True,
    bound: int | None = None,
    workers: int = 1,
) -> SearchOutcome:
    """Search with statistics; see ``exhaustive_paley_search``."""
    v = G.order
    if v % 4 != 1:
        raise HypothesisError(f"|G| = {v} is not 1 mod 4, so no Paley parameters exist")
    if bound is None:
        bound = PRUNED_BOUND if prune else EXHAUSTIVE_BOUND
    if v > bound:
        raise HypothesisError(f"|G| = {v} exceeds the search bound {bound}")
    if limit is not None and limit < 1:
        raise ValueError("limit must be positive")
    t = _tables(G)
    n_first = len(t.pair_ranks) - t.choose + 1
    tasks = [(t, first, prune, limit) for first in range(n_first)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_branch, tasks))
    else:
        parts = []
        for task in tasks:
            parts.append(_run_branch(task))
            if limit is not None and sum(len(p[0]) for p in parts) >= limit:
                break
    selections = [sel for found, _ in parts for sel in found]
    if limit is not None:
        selections = selections[:limit]
    nodes = sum(n for _, n in parts)
    log.info("searched %s: %d nodes, %d hits, prune=%s", G, nodes, len(selections), prune)

    results = []
    for sel in selections:
        D = SubsetInGroup.from_ranks(G, (r for i in sel for r in t.pair_ranks[i]))
        rep = classify(D)
        if not (rep.is_pds and is_paley_type(rep.params) and is_regular(D)):
            raise InconsistencyError(f"search accepted {D.to_text()} but full verification rejects it")
        results.append(D)
    results.sort(key=lambda D: D.ranks)
    return SearchOutcome(G, tuple(results), nodes, prune)


def exhaustive_paley_search(
    G: AbelianGroup,
    limit: int | None = None,
    prune: bool = True,
    bound: int | None = None,
    workers: int = 1,
) -> list[SubsetInGroup]:
    """Every Paley-type PDS in ``G``, sorted by rank vector.

    Each hit is re-verified with ``classify``.  ``limit`` caps the number of
    hits (taken in search order, so parallel and serial runs agree).  The
    default ``bound`` is 49 without pruning and 121 with it.  ``workers > 1``
    splits the search on the first chosen pair across processes.
    """
    return list(paley_search(G, limit, prune, bound, workers).results)
