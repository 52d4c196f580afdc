"""
Тесты сведения к последовательности Шпеккера.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bc_quant.errors import PreconditionError
from bc_quant.models.sequences import SpeckerSpec
from bc_quant.theorems import honest_phi, specker_certificate, specker_reduction, specker_report
from bc_quant.theorems.certificate import Verdict


@pytest.fixture
def short_enumeration():
    """Перечисление [2, 5, 3], раскрываемое по одному элементу за шаг."""
    return SpeckerSpec(enumeration=[2, 5, 3])


@pytest.fixture
def late_enumeration():
    """Один тяжелый элемент, раскрываемый на шаге 100."""
    return SpeckerSpec(enumeration=[1], reveal_steps=[100])


def test_honest_phi_short(short_enumeration):
    """Тест честной оценки: при l = 10 нужны все три шага."""
    phi = honest_phi(short_enumeration)
    assert phi(0, 10) == 3
    assert specker_reduction(short_enumeration, phi, 10) == Fraction(13, 64)
    # при l = 2 хватает первого элемента массы 1/8
    assert phi(0, 2) == 1


def test_honest_phi_respects_m(short_enumeration):
    """Тест условия phi(m, l) >= m + 1."""
    assert honest_phi(short_enumeration)(5, 1) == 6


def test_honest_phi_waits_for_late_element(late_enumeration):
    """Тест ожидания раскрытия тяжелого элемента."""
    phi = honest_phi(late_enumeration)
    assert phi(0, 2) == 100
    assert specker_reduction(late_enumeration, phi, 2) == Fraction(1, 4)
    # элемент массы 1/4 можно не ждать при l = 1
    assert phi(0, 1) == 1


def test_empty_enumeration():
    """Тест пустого перечисления."""
    spec = SpeckerSpec()
    phi = honest_phi(spec)
    assert phi(0, 5) == 1
    assert specker_reduction(spec, phi, 5) == 0


def test_specker_certificate(short_enumeration):
    """Тест сертификата для честной оценки."""
    cert = specker_certificate(short_enumeration, honest_phi(short_enumeration), 3)
    assert cert.passed
    assert cert.trace["heavy_elements"] == [{"element": 2, "step": 1}]
    assert cert.trace["limit"] == "13/64"


def test_specker_certificate_dishonest_phi(late_enumeration):
    """Тест вердикта fail для оценки, не ждущей раскрытия."""
    cert = specker_certificate(late_enumeration, lambda m, l: 1, 2)
    assert cert.verdict == Verdict.FAIL
    assert cert.trace["hypotheses"] == {"heavy_revealed": False}

    cert = specker_certificate(late_enumeration, lambda m, l: 1, 3)
    assert cert.verdict == Verdict.FAIL
    assert cert.rhs == Fraction(1, 4)


def test_specker_reduction_rejects_zero_index(short_enumeration):
    """Тест индекса phi(0, l) < 1."""
    with pytest.raises(PreconditionError):
        specker_reduction(short_enumeration, lambda m, l: 0, 1)


def test_specker_report(short_enumeration):
    """Тест отчета для l = 1..10."""
    report = specker_report(short_enumeration, 10)
    assert report.all_within
    assert len(report.rows) == 10
    indices = [row["phi_0_l"] for row in report.rows]
    assert indices == sorted(indices)
    assert indices[-1] == 3
    assert report.to_dict()["limit"] == "13/64"

    with pytest.raises(PreconditionError):
        specker_report(short_enumeration, 0)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(min_value=0, max_value=20), unique=True, max_size=8).flatmap(
        lambda enumeration: st.tuples(
            st.just(enumeration),
            st.lists(
                st.integers(min_value=1, max_value=500),
                min_size=len(enumeration),
                max_size=len(enumeration),
            ),
        )
    ),
    st.integers(min_value=1, max_value=16),
)
def test_honest_phi_is_sound(case, l):
    """Свойство: честная оценка дает точность 2^{-l} и ждет тяжелые элементы."""
    enumeration, steps = case
    spec = SpeckerSpec(enumeration=enumeration, reveal_steps=steps)
    cert = specker_certificate(spec, honest_phi(spec), l)
    assert cert.passed
    assert cert.rhs < Fraction(1, 2**l)
