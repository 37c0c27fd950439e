"""Partial difference sets: subsets, difference counting and verification.

A subset ``D`` of an abelian group ``G`` is a ``(v, k, lambda, mu)`` partial
difference set when every non-identity element of ``D`` arises exactly
``lambda`` times as a difference ``g - h`` of distinct ``g, h`` in ``D``, and
every non-identity element outside ``D`` arises exactly ``mu`` times.

Two independent verifiers live here.  ``classify`` counts differences
directly.  ``character_verify`` evaluates every character sum over ``D``,
exactly in the cyclotomic integers when the sums must be rational integers.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cache

import numpy as np
import sympy

from pdskit._arith import exact_sqrt
from pdskit.errors import HypothesisError
from pdskit.group import AbelianGroup, GroupElement, parse_group

# Rows per block when counting differences; bounds peak memory at ~4 MB of int64.
_BLOCK = 512

CHARACTER_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class SubsetInGroup:
    """A subset of ``group`` stored as a membership vector indexed by rank."""

    group: AbelianGroup
    membership: np.ndarray

    def __post_init__(self) -> None:
        bits = np.array(self.membership, dtype=bool).ravel()
        if bits.size != self.group.order:
            raise ValueError(f"membership vector has length {bits.size}, group order is {self.group.order}")
        bits.setflags(write=False)
        object.__setattr__(self, "membership", bits)

    @classmethod
    def from_ranks(cls, group: AbelianGroup, ranks: Iterable[int]) -> SubsetInGroup:
        bits = np.zeros(group.order, dtype=bool)
        for r in ranks:
            r = int(r)
            if not 0 <= r < group.order:
                raise ValueError(f"rank {r} out of range for group of order {group.order}")
            bits[r] = True
        return cls(group, bits)

    @classmethod
    def from_elements(cls, group: AbelianGroup, elements: Iterable[Sequence[int]]) -> SubsetInGroup:
        return cls.from_ranks(group, (group.rank(g) for g in elements))

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.membership))

    @property
    def size(self) -> int:
        return int(self.membership.sum())

    def __len__(self) -> int:
        return self.size

    def __contains__(self, g: Sequence[int]) -> bool:
        return bool(self.membership[self.group.rank(g)])

    def elements(self) -> list[GroupElement]:
        return [self.group.unrank(r) for r in self.ranks]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubsetInGroup):
            return NotImplemented
        return self.group == other.group and np.array_equal(self.membership, other.membership)

    def __hash__(self) -> int:
        return hash((self.group, self.membership.tobytes()))

    def __repr__(self) -> str:
        return f"SubsetInGroup({self.to_text()})"

    def to_text(self) -> str:
        return f"{self.group.descriptor()} : [{','.join(map(str, self.ranks))}]"

    def to_json(self) -> dict:
        return {"group": self.group.descriptor(), "ranks": list(self.ranks)}


_SUBSET_RE = re.compile(r"^\s*([^:\[\]]+?)\s*:\s*\[([^\]]*)\]\s*$")


def parse_subset(text: str) -> SubsetInGroup:
    """Parse ``"<orders> : [<rank>,...]"``, e.g. ``"13 : [1,3,4,9,10,12]"``."""
    m = _SUBSET_RE.match(text)
    if not m:
        raise ValueError(f"malformed subset text {text!r}")
    group = parse_group(m.group(1))
    body = m.group(2).strip()
    items = [s.strip() for s in body.split(",")] if body else []
    try:
        ranks = [int(s) for s in items]
    except ValueError:
        raise ValueError(f"malformed rank list in {text!r}") from None
    if len(set(ranks)) != len(ranks):
        raise ValueError(f"duplicate ranks in {text!r}")
    return SubsetInGroup.from_ranks(group, ranks)


@dataclass(frozen=True)
class PdsParameters:
    v: int
    k: int
    lam: int
    mu: int

    def __post_init__(self) -> None:
        if self.v < 1 or not 0 <= self.k <= self.v:
            raise ValueError(f"invalid (v, k) = ({self.v}, {self.k})")
        if not (0 <= self.lam <= self.k and 0 <= self.mu <= self.k):
            raise ValueError(f"lambda={self.lam}, mu={self.mu} must lie in [0, k={self.k}]")

    @property
    def beta(self) -> int:
        return self.lam - self.mu

    @property
    def delta_sq(self) -> int:
        return self.beta**2 + 4 * (self.k - self.mu)

    @property
    def delta(self) -> int | None:
        """Integer square root of ``delta_sq``, or None when it is not a square."""
        return exact_sqrt(self.delta_sq)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)

    def to_json(self) -> dict:
        out = {"v": self.v, "k": self.k, "lambda": self.lam, "mu": self.mu, "beta": self.beta, "delta_sq": self.delta_sq}
        if self.delta is not None:
            out["delta"] = self.delta
        return out


def paley_parameters(v: int) -> PdsParameters:
    if v % 4 != 1:
        raise ValueError(f"Paley parameters need v = 1 mod 4, got {v}")
    return PdsParameters(v, (v - 1) // 2, (v - 5) // 4, (v - 1) // 4)


@dataclass(frozen=True)
class Counterexample:
    element: GroupElement
    count: int
    expected: int
    in_subset: bool


@dataclass(frozen=True)
class VerificationReport:
    is_pds: bool
    params: PdsParameters | None = None
    counterexample: Counterexample | None = None

    def __post_init__(self) -> None:
        if (self.params is None) == (self.counterexample is None):
            raise ValueError("exactly one of params / counterexample must be set")


def difference_count_vector(D: SubsetInGroup) -> np.ndarray:
    """``out[r]`` = number of ordered pairs ``g != h`` in ``D`` with ``rank(g - h) == r``."""
    G = D.group
    ranks = np.flatnonzero(D.membership)
    counts = np.zeros(G.order, dtype=np.int64)
    for start in range(0, ranks.size, _BLOCK):
        block = G.diff_ranks(ranks[start : start + _BLOCK], ranks)
        counts += np.bincount(block.ravel(), minlength=G.order)
    # the k diagonal pairs g == h all land on the identity
    counts[0] -= ranks.size
    return counts


def difference_counts(D: SubsetInGroup) -> dict[GroupElement, int]:
    """Count of each non-identity element as a difference of distinct members."""
    vec = difference_count_vector(D)
    G = D.group
    return {G.unrank(r): int(vec[r]) for r in range(1, G.order)}


def classify(D: SubsetInGroup) -> VerificationReport:
    counts = difference_count_vector(D)
    nonid = np.ones(D.group.order, dtype=bool)
    nonid[0] = False
    found: dict[bool, int] = {}
    worst: Counterexample | None = None
    for inside in (True, False):
        idx = np.flatnonzero(nonid & (D.membership == inside))
        if idx.size == 0:
            found[inside] = 0
            continue
        vals = counts[idx]
        found[inside] = int(vals[0])
        bad = np.flatnonzero(vals != vals[0])
        if bad.size:
            r = int(idx[bad[0]])
            if worst is None or r < D.group.rank(worst.element):
                worst = Counterexample(D.group.unrank(r), int(counts[r]), int(vals[0]), inside)
    if worst is not None:
        return VerificationReport(False, counterexample=worst)
    return VerificationReport(True, params=PdsParameters(D.group.order, D.size, found[True], found[False]))


def is_regular(D: SubsetInGroup) -> bool:
    m = D.membership
    return not m[0] and bool(np.array_equal(m, m[D.group.neg_ranks]))


def is_subgroup(group: AbelianGroup, membership: np.ndarray) -> bool:
    """Nonempty and closed under subtraction, checked over all pairs."""
    ranks = np.flatnonzero(membership)
    if ranks.size == 0 or group.order % ranks.size:
        return False
    for start in range(0, ranks.size, _BLOCK):
        if not membership[group.diff_ranks(ranks[start : start + _BLOCK], ranks)].all():
            return False
    return True


def is_trivial(D: SubsetInGroup) -> bool:
    with_identity = D.membership.copy()
    with_identity[0] = True
    return is_subgroup(D.group, with_identity) or is_subgroup(D.group, ~D.membership)


def is_paley_type(params: PdsParameters) -> bool:
    v = params.v
    return v % 4 == 1 and (params.k, params.lam, params.mu) == ((v - 1) // 2, (v - 5) // 4, (v - 1) // 4)


# -- characters ----------------------------------------------------------------


@cache
def _cyclotomic_reduction(n: int) -> np.ndarray:
    """Row ``j`` holds the coefficients of ``x^j mod Phi_n(x)`` (ascending)."""
    x = sympy.Symbol("x")
    phi = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs())]
    deg = len(phi) - 1
    rows = np.zeros((n, deg), dtype=np.int64)
    cur = [0] * deg
    cur[0] = 1
    for j in range(n):
        rows[j] = cur
        # multiply by x, then fold the x^deg term back using the monic Phi_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return rows


def _exponent_matrix(D: SubsetInGroup) -> np.ndarray:
    """``E[a, j]`` with ``chi_a(d_j) = zeta_N ** E[a, j]``, N the group exponent."""
    G = D.group
    N = G.exponent
    ranks = np.flatnonzero(D.membership)
    E = np.zeros((G.order, ranks.size), dtype=np.int64)
    for i, f in enumerate(G.factors):
        a = G.coords[:, i]
        d = G.coords[ranks, i]
        E += ((a[:, None] * d[None, :]) % f) * (N // f)
    return E % N


def character_sums(D: SubsetInGroup) -> np.ndarray:
    """Floating-point character sums, indexed by character rank."""
    E = _exponent_matrix(D)
    return np.exp(2j * np.pi * E / D.group.exponent).sum(axis=1)


def integral_character_sums(D: SubsetInGroup) -> np.ndarray | None:
    """Exact character sums when every one is a rational integer, else None.

    Each sum is reduced in ``Z[x] / Phi_N`` where it has a unique
    representation, so integrality is decided without rounding.
    """
    G = D.group
    N = G.exponent
    E = _exponent_matrix(D)
    hist = np.zeros((G.order, N), dtype=np.int64)
    np.add.at(hist, (np.repeat(np.arange(G.order), E.shape[1]), E.ravel()), 1)
    reduced = hist @ _cyclotomic_reduction(N)
    if reduced[:, 1:].any():
        return None
    return reduced[:, 0].copy()


@dataclass(frozen=True)
class CharacterCheck:
    applicable: bool
    passed: bool | None
    approximate: bool
    reason: str = ""

    @property
    def status(self) -> str:
        if not self.applicable:
            return "not_applicable"
        return "pass" if self.passed else "fail"


def character_verify(D: SubsetInGroup, params: PdsParameters, method: str = "auto") -> CharacterCheck:
    """Check that every nontrivial character sum over ``D`` is ``(beta +- delta) / 2``.

    ``method="auto"`` evaluates exactly and reports "not applicable" when
    ``delta_sq`` is not a perfect square.  ``method="float"`` uses complex
    floating point with tolerance ``CHARACTER_TOLERANCE`` and flags the result
    as approximate.
    """
    if method not in ("auto", "exact", "float"):
        raise ValueError(f"unknown method {method!r}")
    if not is_regular(D):
        raise HypothesisError("character check needs a regular subset (D = -D, identity excluded)")
    if params.v != D.group.order:
        raise ValueError(f"parameters are for v={params.v}, group has order {D.group.order}")
    delta = params.delta
    if method == "float":
        roots = np.array([(params.beta + s * math.sqrt(params.delta_sq)) / 2 for s in (1, -1)])
        sums = character_sums(D)
        ok = abs(sums[0] - params.k) < CHARACTER_TOLERANCE
        dist = np.abs(sums[1:, None] - roots[None, :]).min(axis=1)
        ok = ok and bool((dist < CHARACTER_TOLERANCE).all())
        return CharacterCheck(True, ok, True)
    if delta is None:
        return CharacterCheck(False, None, False, f"delta_sq = {params.delta_sq} is not a perfect square")
    sums = integral_character_sums(D)
    if sums is None:
        return CharacterCheck(True, False, False, "some character sum is not a rational integer")
    allowed = {(params.beta + delta) // 2, (params.beta - delta) // 2}
    ok = int(sums[0]) == params.k and all(int(s) in allowed for s in sums[1:])
    return CharacterCheck(True, ok, False)


def character_parameters(D: SubsetInGroup) -> PdsParameters | None:
    """Recover PDS parameters from the character sums alone.

    A regular subset whose nontrivial character sums are integers taking at
    most two values ``r > s`` is a PDS with ``beta = r + s`` and
    ``k - mu = -r * s``.  Returns None when the sums do not have that shape,
    which for a regular subset means it is not a PDS with square ``delta_sq``.
    """
    if not is_regular(D):
        raise HypothesisError("character parameters need a regular subset")
    sums = integral_character_sums(D)
    if sums is None:
        return None
    v, k = D.group.order, int(sums[0])
    values = sorted({int(s) for s in sums[1:]})
    if len(values) > 2:
        return None
    if not values:
        return PdsParameters(v, k, 0, 0)
    if len(values) == 1:
        r = values[0]
        lam = mu = k - r * r
    else:
        s, r = values
        mu = k + r * s
        lam = r + s + mu
    # an empty difference class carries no constraint and is reported as 0
    if k == 0:
        lam = mu = 0
    elif k == v - 1:
        mu = 0
    if not (0 <= lam <= k and 0 <= mu <= k):
        return None
    return PdsParameters(v, k, lam, mu)
