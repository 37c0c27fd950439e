"""Restriction of a partial difference set to a Hall subgroup.

For a nontrivial regular PDS ``D`` in ``G`` with ``delta_sq = delta**2`` and a
subgroup ``H`` with ``gcd(|H|, |G|/|H|) = 1`` and odd index, ``D & H`` is again
a regular PDS.  Its parameters are predicted from
``pi = gcd(|H|, delta)``, the integer ``theta`` with
``(2 theta - 1) pi <= beta < (2 theta + 1) pi``, ``beta1 = beta - 2 theta pi``
and ``delta1_sq = pi**2``.  If moreover ``delta = p**r * pi`` for a prime
``p >= 5`` coprime to ``pi > 1`` and ``D & H`` is neither empty nor
``H \\ {e}``, then ``theta`` is pinned modulo ``p - 1`` by the parity of ``r``.

Paley parameters have ``beta = -1``, which forces ``theta = 0`` in every
Hall subgroup.  An odd ``r`` then contradicts the parity clause; the
certificates below spell out that argument for a concrete order.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from pdskit._arith import exact_sqrt, factor, is_prime, prime_power
from pdskit.errors import HypothesisError, InconsistencyError
from pdskit.group import hall_subgroup
from pdskit.pds import (
    PdsParameters,
    SubsetInGroup,
    VerificationReport,
    classify,
    is_regular,
    is_trivial,
    paley_parameters,
)


@dataclass(frozen=True)
class RestrictionPrediction:
    h: int
    pi: int
    theta: int
    beta1: int
    delta1_sq: int
    k1_candidates: tuple[int, ...]

    def to_json(self) -> dict:
        return {**asdict(self), "k1_candidates": list(self.k1_candidates)}


@dataclass(frozen=True)
class ParityRequirement:
    """``theta`` must be congruent to ``residue`` modulo ``p - 1``."""

    p: int
    r: int
    residue: int

    @property
    def modulus(self) -> int:
        return self.p - 1

    def satisfied_by(self, theta: int) -> bool:
        return theta % self.modulus == self.residue

    def to_json(self) -> dict:
        return {"p": self.p, "r": self.r, "modulus": self.modulus, "residue": self.residue}


def theta_of(beta: int, pi: int) -> int:
    """The unique integer with ``(2 theta - 1) pi <= beta < (2 theta + 1) pi``."""
    if pi < 1:
        raise ValueError(f"pi = {pi} must be positive")
    # (2t - 1) pi <= beta < (2t + 1) pi  <=>  2t pi <= beta + pi < 2(t + 1) pi
    return (beta + pi) // (2 * pi)


def check_hall_order(v: int, h: int) -> None:
    """Raise HypothesisError unless ``h`` is a Hall divisor of ``v`` with odd index."""
    if h < 1 or v % h:
        raise HypothesisError(f"subgroup order {h} does not divide {v}")
    index = v // h
    if math.gcd(h, index) != 1:
        raise HypothesisError(f"gcd(|H|, |G|/|H|) = gcd({h}, {index}) != 1")
    if index % 2 == 0:
        raise HypothesisError(f"index |G|/|H| = {index} is even")


def k1_values(h: int, beta1: int, delta1_sq: int) -> tuple[int, ...]:
    """Sizes ``1/2 [(h + beta1) +- sqrt((h + beta1)^2 - (delta1_sq - beta1^2)(h - 1))]``.

    Only branches giving an integer in ``[0, h - 1]`` are kept.
    """
    disc = (h + beta1) ** 2 - (delta1_sq - beta1 * beta1) * (h - 1)
    root = exact_sqrt(disc)
    if root is None:
        return ()
    out = set()
    for num in (h + beta1 + root, h + beta1 - root):
        if num % 2 == 0 and 0 <= num // 2 <= h - 1:
            out.add(num // 2)
    return tuple(sorted(out))


def predict_restriction(params: PdsParameters, h: int) -> RestrictionPrediction:
    delta = params.delta
    if delta is None:
        raise HypothesisError(f"delta_sq = {params.delta_sq} is not a perfect square")
    check_hall_order(params.v, h)
    pi = math.gcd(h, delta)
    theta = theta_of(params.beta, pi)
    beta1 = params.beta - 2 * theta * pi
    delta1_sq = pi * pi
    k1 = k1_values(h, beta1, delta1_sq)
    if delta1_sq == h:
        # simplified form when delta1_sq = |H|: 1/2 [h + beta1 +- (beta1 + 1) sqrt(h)]
        short = set()
        for sign in (1, -1):
            num = h + beta1 + sign * (beta1 + 1) * pi
            if num % 2 == 0 and 0 <= num // 2 <= h - 1:
                short.add(num // 2)
        if tuple(sorted(short)) != k1:
            raise InconsistencyError(f"k1 forms disagree at h={h}: general {k1}, simplified {sorted(short)}")
    return RestrictionPrediction(h, pi, theta, beta1, delta1_sq, k1)


def theta_parity_requirement(delta: int, pi: int) -> ParityRequirement | None:
    """Congruence for ``theta`` when ``delta = p**r * pi``, else None (not applicable).

    Applies only for a single prime ``p >= 5`` with ``gcd(p, pi) = 1`` and
    ``pi > 1``.
    """
    if delta < 1 or pi < 1:
        raise ValueError("delta and pi must be positive")
    if delta % pi:
        raise ValueError(f"pi = {pi} does not divide delta = {delta}")
    ratio = delta // pi
    if pi == 1 or ratio == 1:
        return None
    pp = prime_power(ratio)
    if pp is None:
        return None
    p, r = pp
    if p < 5 or math.gcd(p, pi) != 1:
        return None
    return ParityRequirement(p, r, 0 if r % 2 == 0 else (p - 1) // 2)


@dataclass(frozen=True)
class RestrictionReport:
    primes: tuple[int, ...]
    h: int
    prediction: RestrictionPrediction | None
    parity: ParityRequirement | None
    restricted: SubsetInGroup
    classification: VerificationReport
    regular: bool
    checks: dict[str, bool] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    @property
    def consistent(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        c = self.classification
        return {
            "primes": list(self.primes),
            "h": self.h,
            "prediction": self.prediction.to_json() if self.prediction else None,
            "parity": self.parity.to_json() if self.parity else None,
            "actual": {
                "subset": self.restricted.to_json(),
                "size": self.restricted.size,
                "is_pds": c.is_pds,
                "regular": self.regular,
                "params": c.params.to_json() if c.params else None,
            },
            "checks": dict(self.checks),
            "consistent": self.consistent,
            "notes": list(self.notes),
        }


def restrict_and_verify(D: SubsetInGroup, primes, strict: bool = True) -> RestrictionReport:
    """Intersect ``D`` with the Hall subgroup for ``primes`` and test the predictions.

    When ``delta_sq`` is not a square no prediction exists; the intersection
    is still computed and classified.  With ``strict`` a failed check raises
    InconsistencyError, since for a verified input it can only mean a bug.
    """
    G = D.group
    report = classify(D)
    if not report.is_pds:
        raise HypothesisError("input is not a partial difference set")
    if not is_regular(D):
        raise HypothesisError("input PDS is not regular")
    if is_trivial(D):
        raise HypothesisError("input PDS is trivial")
    params = report.params
    primes = tuple(sorted(set(primes)))
    H, embed = hall_subgroup(G, primes)
    h = H.order
    check_hall_order(G.order, h)

    D1 = SubsetInGroup(H, D.membership[embed.image_ranks()])
    c1 = classify(D1)
    reg1 = is_regular(D1)
    checks: dict[str, bool] = {}
    notes: list[str] = []
    prediction = parity = None
    if params.delta is None:
        notes.append(f"delta_sq = {params.delta_sq} is not a perfect square; no prediction")
    else:
        prediction = predict_restriction(params, h)
        checks["is_pds"] = c1.is_pds
        checks["regular"] = reg1
        checks["size_in_candidates"] = D1.size in prediction.k1_candidates
        degenerate = D1.size in (0, h - 1)
        if c1.is_pds and not degenerate:
            checks["delta1_matches"] = c1.params.delta_sq == prediction.delta1_sq
        elif degenerate:
            notes.append("restriction is empty or all of H \\ {e}; delta1 check is vacuous")
        parity = theta_parity_requirement(params.delta, prediction.pi)
        if parity is not None and not degenerate:
            checks["theta_parity"] = parity.satisfied_by(prediction.theta)
    out = RestrictionReport(primes, h, prediction, parity, D1, c1, reg1, checks, tuple(notes))
    if strict and not out.consistent:
        failed = [k for k, ok in checks.items() if not ok]
        raise InconsistencyError(f"restriction to h={h} failed checks {failed}")
    return out


# -- nonexistence certificates -------------------------------------------------


@dataclass(frozen=True)
class NonexistenceCertificate:
    v: int
    p: int
    r: int
    u: int
    pi: int
    theta_actual: int
    theta_required: int
    theta_modulus: int
    k1: int
    steps: tuple[str, ...]
    conclusion: str

    def to_json(self) -> dict:
        return {**asdict(self), "steps": list(self.steps)}


def paley_nonexistence_witness(v: int) -> NonexistenceCertificate | None:
    """Certificate that no abelian group of order ``v`` holds a Paley-type PDS.

    Looks for a prime ``p >= 5`` with ``v = p**(2r) u**2``, ``r`` odd,
    ``u > 1`` and ``gcd(p, u) = 1``, taking the smallest such ``p``.  Returns
    None when there is none, including when ``v`` is not a perfect square
    (those orders are settled by the non-square argument instead).
    """
    if v <= 1 or v % 2 == 0:
        raise ValueError(f"order must be odd and > 1, got {v}")
    if exact_sqrt(v) is None:
        return None
    for p, e in factor(v):
        r = e // 2
        if p < 5 or r % 2 == 0:
            continue
        u = exact_sqrt(v // p**e)
        if u is None or u == 1:
            continue
        return _certificate(v, p, r, u)
    return None


def _certificate(v: int, p: int, r: int, u: int) -> NonexistenceCertificate:
    params = paley_parameters(v)
    delta = params.delta
    h = u * u
    pred = predict_restriction(params, h)
    parity = theta_parity_requirement(delta, pred.pi)
    k1 = (h - 1) // 2
    if (
        pred.pi != u
        or pred.theta != 0
        or pred.beta1 != -1
        or pred.k1_candidates != (k1,)
        or parity is None
        or parity.satisfied_by(pred.theta)
    ):
        raise InconsistencyError(f"certificate replay for v={v}, p={p} did not reach a contradiction")
    steps = (
        f"Suppose D is a Paley-type PDS in an abelian group G of order v = {v}.",
        f"Its parameters are {params.as_tuple()}, so beta = -1 and delta_sq = v = {delta}^2, delta = {delta}.",
        f"Factor v = {p}^{2 * r} * {u}^2 with p = {p} >= 5 prime, r = {r} odd, u = {u} > 1, gcd(p, u) = 1.",
        f"Let H be the subgroup of order u^2 = {h}; gcd({h}, {p ** (2 * r)}) = 1 and the index {p ** (2 * r)} is odd.",
        f"pi = gcd(|H|, delta) = gcd({h}, {delta}) = {pred.pi}.",
        f"theta satisfies (2 theta - 1) * {pred.pi} <= -1 < (2 theta + 1) * {pred.pi}, hence theta = {pred.theta}.",
        f"beta1 = -1 - 2 * {pred.theta} * {pred.pi} = {pred.beta1} and delta1_sq = pi^2 = {h} = |H|.",
        f"|D & H| = k1 = (u^2 - 1)/2 = {k1}: nonempty since u > 1, and not H \\ {{e}} since {k1} != {h - 1}.",
        f"delta = {p}^{r} * {pred.pi} with r = {r} odd, so theta = {parity.residue} (mod {parity.modulus}) is required.",
        f"But theta = {pred.theta} and {pred.theta} mod {parity.modulus} = {pred.theta % parity.modulus} != {parity.residue}.",
    )
    conclusion = (
        f"Contradiction: no abelian group of order {v} contains a Paley-type PDS "
        f"(the exponent of {p} in v is {2 * r}, with {r} odd)."
    )
    return NonexistenceCertificate(
        v, p, r, u, pred.pi, pred.theta, parity.residue, parity.modulus, k1, steps, conclusion
    )


def check_certificate(cert: NonexistenceCertificate) -> list[str]:
    """Re-derive every numeric claim of ``cert``; returns the failed claims."""
    fails = []
    v, p, r, u = cert.v, cert.p, cert.r, cert.u

    def need(ok: bool, what: str) -> None:
        if not ok:
            fails.append(what)

    need(v == p ** (2 * r) * u * u, "v = p^(2r) u^2")
    need(is_prime(p) and p >= 5, "p is a prime >= 5")
    need(r % 2 == 1, "r is odd")
    need(u > 1, "u > 1")
    need(math.gcd(p, u) == 1, "gcd(p, u) = 1")
    need(cert.pi == math.gcd(u * u, p**r * u) == u, "pi = gcd(u^2, delta) = u")
    t = cert.theta_actual
    need((2 * t - 1) * u <= -1 < (2 * t + 1) * u, "theta brackets beta = -1")
    need(t == 0, "theta = 0")
    need(cert.theta_modulus == p - 1, "modulus = p - 1")
    need(cert.theta_required == (p - 1) // 2, "required residue = (p - 1)/2")
    need(t % cert.theta_modulus != cert.theta_required, "theta violates the parity clause")
    need(2 * cert.k1 == u * u - 1 and 0 < cert.k1 < u * u - 1, "k1 = (u^2 - 1)/2 is neither 0 nor |H| - 1")
    return fails


__all__ = [
    "NonexistenceCertificate",
    "ParityRequirement",
    "RestrictionPrediction",
    "RestrictionReport",
    "check_certificate",
    "check_hall_order",
    "k1_values",
    "paley_nonexistence_witness",
    "predict_restriction",
    "restrict_and_verify",
    "theta_of",
    "theta_parity_requirement",
]
