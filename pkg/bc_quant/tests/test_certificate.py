"""
Тесты сертификатов и их JSON-схемы.
"""

from fractions import Fraction

import pytest

from bc_quant.errors import ConfigError
from bc_quant.numerics.enclosure import RatInterval
from bc_quant.theorems.certificate import (
    Certificate,
    MetastableWitness,
    TheoremTag,
    Verdict,
    build_certificate,
    side_margin,
    undecided_certificate,
    validate_certificate,
)


def test_side_margin_rationals():
    """Тест запаса для точных чисел."""
    assert side_margin(Fraction(3, 4), Fraction(1, 2)) == (Fraction(1, 4), True)
    assert side_margin(Fraction(1, 2), Fraction(1, 2)) == (0, True)
    assert side_margin(Fraction(1, 4), Fraction(1, 2)) == (Fraction(-1, 4), False)


def test_side_margin_intervals():
    """Тест запаса для интервальных частей."""
    interval = RatInterval(Fraction(1, 4), Fraction(1, 2))
    assert side_margin(Fraction(3, 4), interval) == (Fraction(1, 4), True)
    assert side_margin(Fraction(1, 8), interval) == (Fraction(-1, 8), False)
    margin, status = side_margin(Fraction(1, 3), interval)
    assert status is None
    assert margin == Fraction(1, 3) - Fraction(1, 2)


def test_build_certificate_verdicts():
    """Тест выбора вердикта."""
    passed = build_certificate(TheoremTag.KS_ALGEBRA, {}, Fraction(1), Fraction(1, 2))
    assert passed.verdict == Verdict.PASS
    assert passed.passed

    failed = build_certificate(
        TheoremTag.KS_ALGEBRA, {}, Fraction(1), Fraction(1, 2), hypotheses={"h": False}
    )
    assert failed.verdict == Verdict.FAIL
    assert failed.trace["hypotheses"] == {"h": False}

    overlap = RatInterval(Fraction(0), Fraction(1))
    undecided = build_certificate(TheoremTag.KS_ALGEBRA, {}, Fraction(1, 2), overlap)
    assert undecided.verdict == Verdict.UNDECIDED


def test_undecided_certificate_keeps_trace():
    """Тест сертификата нерешенного сравнения."""
    cert = undecided_certificate(
        TheoremTag.SECOND_BC,
        {"n": 1},
        Fraction(1, 2),
        RatInterval(Fraction(1, 4), Fraction(3, 4)),
        trace={"window": [1, 6]},
    )
    assert cert.verdict == Verdict.UNDECIDED
    assert cert.trace == {"window": [1, 6]}


def test_certificate_dict_matches_schema():
    """Тест сериализации сертификата и проверки по схеме."""
    cert = build_certificate(
        TheoremTag.SECOND_BC,
        {"n": 1, "N": 1},
        Fraction(31031, 46656),
        RatInterval(Fraction(5, 8), Fraction(2, 3)),
        trace={"window": [1, 6]},
    )
    data = cert.to_dict()
    validate_certificate(data)
    assert data["lhs"] == "31031/46656"
    assert data["rhs"] == {"lo": "5/8", "hi": "2/3"}

    restored = Certificate.from_dict(data)
    assert restored.to_dict() == data
    assert restored.rhs == cert.rhs


@pytest.mark.parametrize(
    "patch",
    [
        {"verdict": "maybe"},
        {"theorem": "Unknown"},
        {"margin": "0.5"},
        {"lhs": {"lo": "1/2"}},
        {"extra": 1},
    ],
)
def test_certificate_schema_rejects_bad_dict(patch):
    """Тест отказа от словарей, нарушающих схему."""
    data = build_certificate(TheoremTag.YAN_RATIOS, {}, Fraction(1), Fraction(0)).to_dict()
    data.update(patch)
    with pytest.raises(ConfigError):
        Certificate.from_dict(data)


def test_metastable_witness_to_dict():
    """Тест сериализации свидетеля метастабильности."""
    witness = MetastableWitness(
        n=4,
        r=0,
        interval_end=5,
        per_j_margins=[(4, Fraction(3, 40)), (5, Fraction(1, 24))],
        bound=6,
        method="per_j",
        iterates=[4],
    )
    assert witness.all_margins_nonnegative
    assert witness.to_dict()["per_j_margins"] == [[4, "3/40"], [5, "1/24"]]
