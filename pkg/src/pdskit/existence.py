"""Which odd orders admit a Paley-type partial difference set.

An odd ``v > 1`` is the order of some abelian group containing a Paley-type
PDS exactly when ``v`` is a prime power congruent to 1 mod 4, or ``v = n**4``,
or ``v = 9 n**4`` for an odd ``n > 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from pdskit._arith import Factorization, exact_sqrt, prime_power
from pdskit._arith import factor as _factor
from pdskit.pds import PdsParameters, is_paley_type
from pdskit.restrict import NonexistenceCertificate, paley_nonexistence_witness


def factor(v: int) -> Factorization:
    """Prime factorization ``[(p, e), ...]`` with primes ascending."""
    if v > 2**63 - 1:
        raise ValueError(f"{v} exceeds the supported range")
    return _factor(v)


class Verdict(str, Enum):
    EXISTS_PRIME_POWER = "ExistsPrimePower"
    EXISTS_FOURTH_POWER = "ExistsFourthPower"
    EXISTS_NINE_FOURTH_POWER = "ExistsNineFourthPower"
    NOT_EXISTS = "NotExists"


@dataclass(frozen=True)
class FourthPowerForm:
    form: str  # "n^4" or "9n^4"
    n: int


def fourth_power_form(v: int) -> FourthPowerForm | None:
    if v % 2 == 0 or v <= 1:
        raise ValueError(f"order must be odd and > 1, got {v}")

    def quartic_root(w: int) -> int | None:
        if w <= 1:
            return None
        n = 1
        for p, e in factor(w):
            if e % 4:
                return None
            n *= p ** (e // 4)
        return n

    n = quartic_root(v)
    if n is not None:
        return FourthPowerForm("n^4", n)
    if v % 9 == 0:
        n = quartic_root(v // 9)
        if n is not None:
            return FourthPowerForm("9n^4", n)
    return None


@dataclass(frozen=True)
class ExistenceVerdict:
    v: int
    verdict: Verdict
    witness: tuple[dict, ...]
    reason: str
    certificate: NonexistenceCertificate | None = field(default=None)

    @property
    def exists(self) -> bool:
        return self.verdict is not Verdict.NOT_EXISTS

    def to_json(self) -> dict:
        return {
            "v": self.v,
            "verdict": self.verdict.value,
            "witness": [dict(w) for w in self.witness],
            "reason": self.reason,
            "certificate": self.certificate.to_json() if self.certificate else None,
        }


def classify_order(v: int) -> ExistenceVerdict:
    if v % 2 == 0 or v <= 1:
        raise ValueError("order must be odd and > 1")
    witnesses: list[dict] = []
    verdicts: list[Verdict] = []
    pp = prime_power(v)
    if pp is not None and v % 4 == 1:
        witnesses.append({"clause": "prime_power", "q": v, "p": pp[0], "m": pp[1]})
        verdicts.append(Verdict.EXISTS_PRIME_POWER)
    fp = fourth_power_form(v)
    if fp is not None:
        if fp.form == "n^4":
            witnesses.append({"clause": "fourth_power", "n": fp.n})
            verdicts.append(Verdict.EXISTS_FOURTH_POWER)
        else:
            witnesses.append({"clause": "nine_fourth_power", "n": fp.n})
            verdicts.append(Verdict.EXISTS_NINE_FOURTH_POWER)
    if verdicts:
        if verdicts[0] is Verdict.EXISTS_PRIME_POWER:
            reason = f"{v} = {pp[0]}^{pp[1]} is a prime power and {v} = 1 mod 4"
        elif verdicts[0] is Verdict.EXISTS_FOURTH_POWER:
            reason = f"{v} = {fp.n}^4 with {fp.n} odd and > 1"
        else:
            reason = f"{v} = 9 * {fp.n}^4 with {fp.n} odd and > 1"
        return ExistenceVerdict(v, verdicts[0], tuple(witnesses), reason)

    if v % 4 == 3:
        reason = f"{v} = 3 mod 4, so the Paley parameters (v-5)/4 and (v-1)/4 are not integers"
        return ExistenceVerdict(v, Verdict.NOT_EXISTS, (), reason)
    if exact_sqrt(v) is None:
        reason = (
            f"delta_sq = v = {v} is not a square, which forces v = p^(2s+1) with p = 1 mod 4 prime; "
            + (f"{v} = {pp[0]}^{pp[1]} with p = 3 mod 4" if pp else f"{v} is not a prime power")
        )
        return ExistenceVerdict(v, Verdict.NOT_EXISTS, (), reason)
    cert = paley_nonexistence_witness(v)
    if cert is None:  # pragma: no cover - every rejected square has an offending prime >= 5
        reason = f"{v} is a square but neither a prime power nor of the form n^4 or 9n^4"
    else:
        reason = (
            f"{v} is a square that is neither a prime power nor n^4 / 9n^4: "
            f"the prime {cert.p} occurs to the power {2 * cert.r} with {cert.r} odd (see certificate)"
        )
    return ExistenceVerdict(v, Verdict.NOT_EXISTS, (), reason, cert)


@dataclass(frozen=True)
class FilterResult:
    status: str  # "consistent", "contradiction" or "not_applicable"
    reason: str

    def to_json(self) -> dict:
        return {"status": self.status, "reason": self.reason}


def ma84_filter(params: PdsParameters) -> FilterResult:
    """Parameter test for abelian regular PDS with non-square ``delta_sq``.

    Such a PDS must be of Paley type on ``p**(2s+1)`` points for a prime
    ``p = 1 mod 4``.
    """
    d = params.delta_sq
    if exact_sqrt(d) is not None:
        return FilterResult("not_applicable", f"delta_sq = {d} is a perfect square")
    if not is_paley_type(params):
        return FilterResult("contradiction", f"delta_sq = {d} is not a square but {params.as_tuple()} is not Paley type")
    pp = prime_power(params.v)
    if pp is None:
        return FilterResult("contradiction", f"Paley-shaped but v = {params.v} is not a prime power")
    p, a = pp
    if a % 2 == 0 or p % 4 != 1:
        return FilterResult(
            "contradiction", f"v = {p}^{a} is not an odd power of a prime = 1 mod 4"
        )
    return FilterResult("consistent", f"Paley type with v = {p}^{a}, {p} = 1 mod 4")


__all__ = [
    "ExistenceVerdict",
    "FilterResult",
    "FourthPowerForm",
    "Verdict",
    "classify_order",
    "factor",
    "fourth_power_form",
    "ma84_filter",
]
