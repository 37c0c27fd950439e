"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v``.
"""

import random
import time

import numpy as np
import pytest
import sympy

from pdskit._arith import exact_sqrt
from pdskit.construct import latin_square_lines, paley
from pdskit.existence import Verdict, classify_order, ma84_filter
from pdskit.group import abelian_groups, make_group
from pdskit.pds import (
    PdsParameters,
    SubsetInGroup,
    character_parameters,
    character_verify,
    classify,
    difference_count_vector,
    is_regular,
)
from pdskit.restrict import check_certificate, paley_nonexistence_witness, restrict_and_verify
from pdskit.search import exhaustive_paley_search


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail, elapsed, budget):
        within = elapsed <= budget
        status = "PASS" if ok and within else "FAIL"
        with capsys.disabled():
            print(f"\n{status} criterion {number}: {detail} ({elapsed:.2f} s, budget {budget} s)")
        assert ok, detail
        assert within, f"took {elapsed:.2f} s, budget {budget} s"

    return emit


def test_criterion_1_paley_construction(report):
    start = time.perf_counter()
    qs = [q for q in range(5, 1370, 4) if len(sympy.factorint(q)) == 1]
    bad = []
    for q in qs:
        params = classify(paley(q)).params
        if params is None or params.as_tuple() != (q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4):
            bad.append(q)
    powers = [q for q in qs if not sympy.isprime(q)]
    # 529 = 23^2 also qualifies and is covered
    named = {9, 25, 49, 81, 121, 125, 169, 289, 361, 625, 729, 841, 961, 1369} <= set(powers)
    detail = f"{len(qs)} prime powers q = 1 mod 4 up to 1369 ({len(powers)} proper powers), mismatches {bad}"
    report(1, not bad and named, detail, time.perf_counter() - start, 60)


def test_criterion_2_restriction(report):
    start = time.perf_counter()
    cases = [(15, 2, {3}), (15, 2, {5}), (21, 2, {3}), (21, 2, {7}), (15, 3, {3}), (15, 3, {5})]
    failures = []
    sizes = {}
    for n, r, primes in cases:
        rep = restrict_and_verify(latin_square_lines(n, r), primes, strict=False)
        size = rep.restricted.size
        sizes[(n, r, rep.h)] = size
        ok = rep.consistent and size in rep.prediction.k1_candidates and rep.classification.is_pds
        if 0 < size < rep.h - 1:
            ok = ok and rep.classification.params.delta_sq == rep.prediction.pi ** 2
        if not ok:
            failures.append((n, r, rep.h, rep.checks))
    ok = not failures and sizes[(15, 2, 9)] == 4
    detail = f"lines fixtures restricted to Hall subgroups, sizes {sizes}, failures {failures}"
    report(2, ok, detail, time.perf_counter() - start, 10)


def _needs_certificate(v):
    f = sympy.factorint(v)
    if len(f) == 1:
        return False
    if all(e % 4 == 0 for e in f.values()):
        return False
    g = dict(f)
    if g.get(3, 0) >= 2:
        g[3] -= 2
        if all(e % 4 == 0 for e in g.values()):
            return False
    return True


def test_criterion_3_certificates(report):
    start = time.perf_counter()
    targets = [m * m for m in range(3, 101, 2) if _needs_certificate(m * m)]
    invalid = []
    for v in targets:
        cert = paley_nonexistence_witness(v)
        if cert is None or check_certificate(cert):
            invalid.append(v)
    spurious = [v for v in (81, 625, 729, 50625) if paley_nonexistence_witness(v) is not None]
    named = all(v in targets for v in (225, 441, 1089, 2025))
    detail = f"{len(targets)} odd squares up to 10^4 certified, invalid {invalid}, spurious {spurious}"
    report(3, not invalid and not spurious and named, detail, time.perf_counter() - start, 5)


def test_criterion_4_classifier_vs_search(report):
    start = time.perf_counter()
    problems = []
    counts = {}
    for v in (5, 9, 13, 17, 21, 25, 29, 33, 37, 41, 45):
        verdict = classify_order(v)
        per_group = {G.descriptor(): len(exhaustive_paley_search(G)) for G in abelian_groups(v)}
        counts[v] = per_group
        if verdict.verdict is Verdict.NOT_EXISTS:
            if any(per_group.values()):
                problems.append((v, "NotExists but found", per_group))
        elif verdict.verdict is Verdict.EXISTS_PRIME_POWER:
            p, m = sympy.factorint(v).popitem()
            additive = make_group([p] * m).descriptor()
            if per_group[additive] < 1:
                problems.append((v, "Exists but additive group empty", per_group))
    exact = counts[5] == {"5": 2} and counts[13] == {"13": 2}
    detail = f"searched {sum(len(c) for c in counts.values())} groups, problems {problems}, Z5 {counts[5]}, Z13 {counts[13]}"
    report(4, not problems and exact, detail, time.perf_counter() - start, 600)


def _negation_closed(G, rng, density):
    chosen = set()
    for r in range(1, G.order):
        s = int(G.neg_ranks[r])
        if r <= s and rng.random() < density:
            chosen.update((r, s))
    return SubsetInGroup.from_ranks(G, chosen)


def _perturb(D, rng):
    G = D.group
    ranks = set(D.ranks)
    r = rng.randrange(1, G.order)
    ranks.symmetric_difference_update({r, int(G.neg_ranks[r])})
    if rng.random() < 0.3:
        ranks.symmetric_difference_update({rng.randrange(G.order)})
    return SubsetInGroup.from_ranks(G, ranks)


def _corpus(seed=2024):
    rng = random.Random(seed)
    base = [paley(q) for q in (5, 9, 13, 17, 25, 29, 37, 41, 49, 53, 61, 73, 81, 89, 97, 101, 109, 113, 121)]
    base += [latin_square_lines(n, r) for n in (3, 5, 7, 9, 11) for r in range(1, min(sympy.factorint(n)) + 1)]
    corpus = list(base)
    for D in base:
        corpus += [_perturb(D, rng) for _ in range(3)]
    groups = [make_group(o) for o in ([5], [9], [3, 3], [15], [25], [5, 5], [3, 3, 5], [7, 7], [9, 9], [11, 11], [121], [3, 27])]
    for G in groups:
        corpus += [_negation_closed(G, rng, d) for d in (0.2, 0.5, 0.8)]
    return corpus


def test_criterion_5_cross_verifier(report):
    start = time.perf_counter()
    corpus = _corpus()
    failures = []
    checked = 0
    for D in corpus:
        vec = difference_count_vector(D)
        if vec.sum() != D.size * (D.size - 1) or not np.array_equal(vec, vec[D.group.neg_ranks]):
            failures.append(("counts", D.to_text()))
            continue
        if not is_regular(D):
            continue
        rep = classify(D)
        inferred = character_parameters(D)
        if rep.is_pds and rep.params.delta is not None:
            exact = character_verify(D, rep.params, method="exact")
            approx = character_verify(D, rep.params, method="float")
            checked += 1
            if not (exact.passed and approx.passed and inferred == rep.params):
                failures.append(("characters", D.to_text()))
        elif not rep.is_pds and inferred is not None:
            failures.append(("character route accepts non-PDS", D.to_text()))
    ok = len(corpus) >= 200 and not failures and checked > 0
    detail = f"{len(corpus)} subsets, {checked} square-delta PDS checked exactly and approximately, failures {failures[:3]}"
    report(5, ok, detail, time.perf_counter() - start, 120)


def _reference_ma84(v, k, lam, mu):
    # independent statement of the two conditions: Paley shape, and v = p^(2s+1) with p = 1 mod 4
    if (4 * k, 4 * lam, 4 * mu) != (2 * (v - 1), v - 5, v - 1):
        return False
    f = sympy.factorint(v)
    if len(f) != 1:
        return False
    (p, e), = f.items()
    return e % 2 == 1 and p % 4 == 1


def test_criterion_6_ma84_filter(report):
    start = time.perf_counter()
    tuples = 0
    mismatches = []
    for v in range(3, 201, 2):
        for k in range(0, (v - 1) // 2 + 1):
            for lam in range(0, k + 1):
                rest = k * (k - 1) - lam * k
                free = v - 1 - k
                if rest < 0 or rest % free:
                    continue
                mu = rest // free
                if mu > k:
                    continue
                params = PdsParameters(v, k, lam, mu)
                if exact_sqrt(params.delta_sq) is not None:
                    continue
                tuples += 1
                passed = ma84_filter(params).status == "consistent"
                if passed != _reference_ma84(v, k, lam, mu):
                    mismatches.append((v, k, lam, mu))
    detail = f"{tuples} non-square parameter tuples with v <= 200, mismatches {mismatches[:5]}"
    report(6, tuples > 0 and not mismatches, detail, time.perf_counter() - start, 10)
