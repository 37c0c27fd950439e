import math

import pytest
import sympy

from pdskit.existence import Verdict, classify_order, factor, fourth_power_form, ma84_filter
from pdskit.pds import PdsParameters, paley_parameters
from pdskit.restrict import check_certificate


def sympy_verdict(v):
    """Reference classification written straight from the factorization."""
    f = sympy.factorint(v)
    if len(f) == 1 and v % 4 == 1:
        return "prime_power"
    if all(e % 4 == 0 for e in f.values()):
        return "fourth"
    g = dict(f)
    if g.get(3, 0) >= 2:
        g[3] -= 2
        if all(e % 4 == 0 for e in g.values()) and math.prod(p**e for p, e in g.items()) > 1:
            return "nine_fourth"
    return "none"


def test_factor_examples():
    assert factor(225) == [(3, 2), (5, 2)]
    assert factor(1_000_003**2 * 7) == [(7, 1), (1_000_003, 2)]
    assert factor(3**39) == [(3, 39)]
    with pytest.raises(ValueError):
        factor(2**63)


@pytest.mark.parametrize(
    "v, expected",
    [(81, ("n^4", 3)), (625, ("n^4", 5)), (729, ("9n^4", 3)), (50625, ("n^4", 15)), (5625, ("9n^4", 5)), (225, None), (9, None)],
)
def test_fourth_power_form(v, expected):
    fp = fourth_power_form(v)
    assert (None if fp is None else (fp.form, fp.n)) == expected


@pytest.mark.parametrize(
    "v, verdict",
    [
        (5, Verdict.EXISTS_PRIME_POWER),
        (9, Verdict.EXISTS_PRIME_POWER),
        (81, Verdict.EXISTS_PRIME_POWER),
        (729, Verdict.EXISTS_PRIME_POWER),
        (50625, Verdict.EXISTS_FOURTH_POWER),
        (5625, Verdict.EXISTS_NINE_FOURTH_POWER),
        (45, Verdict.NOT_EXISTS),
        (21, Verdict.NOT_EXISTS),
        (225, Verdict.NOT_EXISTS),
        (7, Verdict.NOT_EXISTS),
        (27, Verdict.NOT_EXISTS),
    ],
)
def test_classify_order_examples(v, verdict):
    assert classify_order(v).verdict is verdict


def test_multiple_witnesses_are_listed():
    res = classify_order(81)
    assert [w["clause"] for w in res.witness] == ["prime_power", "fourth_power"]
    assert [w["clause"] for w in classify_order(729).witness] == ["prime_power", "nine_fourth_power"]


def test_reasons():
    assert "3 mod 4" in classify_order(27).reason
    assert "not a square" in classify_order(45).reason
    res = classify_order(225)
    assert res.certificate is not None and check_certificate(res.certificate) == []
    assert res.to_json()["certificate"]["p"] == 5
    with pytest.raises(ValueError):
        classify_order(4)
    with pytest.raises(ValueError):
        classify_order(1)


def test_classification_against_factorization_oracle():
    for v in range(3, 100_001, 2):
        res = classify_order(v)
        ref = sympy_verdict(v)
        assert res.exists == (ref != "none"), v
        if res.exists:
            assert res.witness
        elif v % 4 == 1 and math.isqrt(v) ** 2 == v:
            assert res.certificate is not None and check_certificate(res.certificate) == [], v


def test_ma84_examples():
    assert ma84_filter(paley_parameters(13)).status == "consistent"
    assert ma84_filter(paley_parameters(125)).status == "consistent"
    assert ma84_filter(paley_parameters(45)).status == "contradiction"
    # 27 = 3^3 with 3 = 3 mod 4: Paley parameters are not even integral
    assert ma84_filter(PdsParameters(343, 171, 85, 85)).status == "contradiction"
    assert ma84_filter(paley_parameters(25)).status == "not_applicable"
    assert ma84_filter(PdsParameters(225, 28, 13, 2)).status == "not_applicable"
