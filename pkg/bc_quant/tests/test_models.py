"""
Тесты последовательностей и моделей событий.
"""

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bc_quant.config import config
from bc_quant.errors import (
    CapExceededError,
    ConfigError,
    IndexOverflowError,
    ModelInvariantError,
    PreconditionError,
)
from bc_quant.models.events import (
    IndependentBernoulli,
    MutuallyExclusive,
    NestedIntervals,
    build_model,
    model_from_dict,
)
from bc_quant.models.sequences import (
    AffineReciprocalSpec,
    ConstantSpec,
    GeometricSpec,
    RatioSpec,
    SpeckerSpec,
    TableSpec,
    parse_sequence,
)
from bc_quant.numerics.rational import ONE, ZERO


def test_constant_and_ratio_terms():
    """Тест простейших последовательностей."""
    assert ConstantSpec(c="1/3").term(7) == Fraction(1, 3)
    assert RatioSpec().term(2) == Fraction(2, 3)
    assert RatioSpec().limit() == 1


def test_table_tail_uses_absolute_index():
    """Тест хвоста таблицы с абсолютной нумерацией."""
    spec = TableSpec(prefix=["1/2", "2/3"], tail=RatioSpec())
    assert spec.term(2) == Fraction(2, 3)
    assert spec.term(3) == Fraction(3, 4)
    assert spec.limit() == 1


def test_table_without_tail_is_finite():
    """Тест конечной таблицы."""
    spec = TableSpec(prefix=["1/2"])
    with pytest.raises(IndexOverflowError):
        spec.term(2)
    assert spec.limit() is None


def test_affine_reciprocal_and_geometric():
    """Тест замкнутых формул q - c/(i+d) и ratio^i."""
    affine = AffineReciprocalSpec(q="1/2", c="1/2", d=1)
    assert affine.term(1) == Fraction(1, 4)
    assert affine.term(3) == Fraction(3, 8)
    assert affine.limit() == Fraction(1, 2)

    geometric = GeometricSpec(ratio="1/2")
    assert geometric.term(3) == Fraction(1, 8)
    assert geometric.limit() == 0


def test_term_preconditions():
    """Тест нумерации с единицы и предела индекса."""
    with pytest.raises(PreconditionError):
        ConstantSpec(c="1/2").term(0)

    config.models.max_index = 100
    with pytest.raises(IndexOverflowError):
        ConstantSpec(c="1/2").term(101)


def test_term_outside_unit_interval():
    """Тест проверки принадлежности члена отрезку [0, 1]."""
    with pytest.raises(ModelInvariantError):
        ConstantSpec(c="3/2").term(1)
    with pytest.raises(ModelInvariantError):
        AffineReciprocalSpec(q="0", c="1", d=1).term(1)


def test_parse_sequence_from_dict():
    """Тест разбора описания по полю kind."""
    spec = parse_sequence({"kind": "table", "prefix": ["1/2"], "tail": {"kind": "ratio"}})
    assert isinstance(spec, TableSpec)
    assert isinstance(spec.tail, RatioSpec)
    assert parse_sequence(spec) is spec


@pytest.mark.parametrize(
    "data",
    [
        {"kind": "constant", "c": 0.5},
        {"kind": "constant", "c": "1/2", "extra": 1},
        {"kind": "unknown"},
        {"kind": "geometric", "ratio": "3/2"},
    ],
)
def test_parse_sequence_rejects_bad_input(data):
    """Тест отказа от некорректных описаний."""
    with pytest.raises(ValueError):
        parse_sequence(data)


def test_specker_partial_sums():
    """Тест частичных сумм по перечислению [2, 5, 3]."""
    spec = SpeckerSpec(enumeration=[2, 5, 3])
    assert spec.term(1) == Fraction(1, 8)
    assert spec.term(2) == Fraction(9, 64)
    assert spec.term(3) == Fraction(13, 64)
    assert spec.term(10) == Fraction(13, 64)
    assert spec.limit() == Fraction(13, 64)


def test_specker_reveal_schedule():
    """Тест отложенного раскрытия элементов."""
    spec = SpeckerSpec(enumeration=[1], reveal_steps=[100])
    assert spec.term(99) == 0
    assert spec.term(100) == Fraction(1, 4)
    assert SpeckerSpec().limit() == 0


@pytest.mark.parametrize(
    "kwargs",
    [
        {"enumeration": [2, 2]},
        {"enumeration": [-1]},
        {"enumeration": [1, 2], "reveal_steps": [1]},
        {"enumeration": [1], "reveal_steps": [0]},
    ],
)
def test_specker_rejects_bad_enumeration(kwargs):
    """Тест проверки перечисления и расписания."""
    with pytest.raises(ValueError):
        SpeckerSpec(**kwargs)


def test_sum_stats_independent(half_independent):
    """Тест SumStats для независимых событий с p = 1/2."""
    stats = half_independent.sum_stats(4)
    assert stats.s == 2
    assert stats.a == 4
    assert stats.off_diag_prod == Fraction(3, 2)
    assert stats.off_diag_joint == Fraction(3, 2)
    assert stats.b == 5


def test_sum_stats_nested():
    """Тест SumStats для вложенных интервалов."""
    stats = NestedIntervals(ConstantSpec(c="1/2")).sum_stats(3)
    assert stats.s == Fraction(3, 2)
    assert stats.a == Fraction(9, 4)
    assert stats.b == Fraction(9, 2)


def test_sum_stats_exclusive(exclusive_half):
    """Тест SumStats для несовместных событий."""
    stats = exclusive_half.sum_stats(3)
    assert stats.s == Fraction(7, 8)
    assert stats.a == Fraction(49, 64)
    assert stats.b == Fraction(7, 8)
    assert stats.off_diag_joint == 0


def test_sum_stats_ratio_requires_positive_sum(null_independent):
    """Тест отношения b/a при нулевой сумме."""
    with pytest.raises(PreconditionError):
        _ = null_independent.sum_stats(3).ratio


def test_union_probabilities(nested_ratio, exclusive_half):
    """Тест вероятностей объединения для трех видов моделей."""
    independent = IndependentBernoulli(TableSpec(prefix=["1/2", "1/3", "1/4"]))
    assert independent.union_prob(1, 3) == Fraction(3, 4)
    assert nested_ratio.union_prob(2, 5) == Fraction(5, 6)
    assert exclusive_half.union_prob(3, 10) == Fraction(255, 1024)


def test_union_range_precondition(half_independent):
    """Тест проверки диапазона индексов."""
    with pytest.raises(PreconditionError):
        half_independent.union_prob(3, 2)
    with pytest.raises(PreconditionError):
        half_independent.range_sum(0, 2)


def test_complement_product_is_exact(half_independent):
    """Тест точного произведения на длинном окне."""
    assert half_independent.complement_product(1, 100) == Fraction(1, 2**100)
    assert IndependentBernoulli(ConstantSpec(c="1")).complement_product(1, 5) == 0


def test_nested_requires_monotone_sequence():
    """Тест проверки неубывания q_i."""
    model = NestedIntervals(TableSpec(prefix=["1/2", "1/3"]))
    assert model.prob(1) == Fraction(1, 2)
    with pytest.raises(ModelInvariantError):
        model.prob(2)


def test_exclusive_mass_above_one():
    """Тест нарушения условия суммы <= 1."""
    model = MutuallyExclusive(ConstantSpec(c="1/2"))
    with pytest.raises(ModelInvariantError):
        model.union_prob(1, 3)
    with pytest.raises(ModelInvariantError):
        model.sum_stats(3)
    with pytest.raises(ModelInvariantError):
        model.joint(1, 3)

    assert model.sum_stats(2).b == ONE
    assert model.joint(2, 2) == Fraction(1, 2)


def test_joint_examples(nested_ratio, half_independent, exclusive_half):
    """Тест вероятностей пересечений для трех видов моделей."""
    assert nested_ratio.joint(2, 5) == Fraction(2, 3)
    assert nested_ratio.joint(5, 2) == Fraction(2, 3)
    assert half_independent.joint(3, 7) == Fraction(1, 4)
    assert half_independent.joint(4, 4) == Fraction(1, 2)
    assert exclusive_half.joint(1, 2) == ZERO
    assert exclusive_half.joint(3, 3) == Fraction(1, 8)


def test_count_distribution_independent(half_independent, sure_independent):
    """Тест свертки для независимых событий."""
    dist = half_independent.count_distribution(2)
    assert dist.pmf == {0: Fraction(1, 4), 1: Fraction(1, 2), 2: Fraction(1, 4)}
    assert dist.mean == 1
    assert dist.variance == Fraction(1, 2)

    # нулевые веса не хранятся
    assert sure_independent.count_distribution(3).pmf == {3: 1}


def test_count_distribution_reuses_cache(half_independent):
    """Тест согласованности накопленной свертки при разном порядке запросов."""
    larger = half_independent.count_distribution(5)
    smaller = half_independent.count_distribution(3)
    assert larger.pmf[5] == Fraction(1, 32)
    assert smaller.pmf == {
        0: Fraction(1, 8),
        1: Fraction(3, 8),
        2: Fraction(3, 8),
        3: Fraction(1, 8),
    }


def test_count_distribution_nested():
    """Тест распределения для вложенных интервалов."""
    dist = NestedIntervals(TableSpec(prefix=["1/2", "2/3"])).count_distribution(2)
    assert dist.pmf == {0: Fraction(1, 3), 1: Fraction(1, 6), 2: Fraction(1, 2)}
    assert dist.mean == Fraction(7, 6)
    assert dist.second_moment == Fraction(13, 6)
    assert dist.prob_at_most(Fraction(7, 12)) == Fraction(1, 3)


def test_count_distribution_exclusive(exclusive_half):
    """Тест распределения для несовместных событий."""
    dist = exclusive_half.count_distribution(3)
    assert dist.pmf == {0: Fraction(1, 8), 1: Fraction(7, 8)}
    assert dist.total == 1


def test_count_distribution_cap(half_independent):
    """Тест предела размера свертки."""
    config.models.count_cap = 3
    with pytest.raises(CapExceededError):
        half_independent.count_distribution(4)


def test_build_model_and_round_trip():
    """Тест фабрики моделей и сериализации."""
    model = build_model("nested", {"kind": "ratio"})
    assert isinstance(model, NestedIntervals)
    restored = model_from_dict(model.to_dict())
    assert restored.to_dict() == {"kind": "nested", "sequence": {"kind": "ratio"}}

    with pytest.raises(ConfigError):
        build_model("bogus", {"kind": "ratio"})
    with pytest.raises(ConfigError):
        model_from_dict({"kind": "nested"})


def test_sum_stats_thread_safe():
    """Тест одинаковых SumStats при параллельных запросах."""
    model = NestedIntervals(RatioSpec())
    with ThreadPoolExecutor(max_workers=4) as executor:
        results = list(executor.map(model.sum_stats, [40, 10, 30, 20] * 4))

    reference = NestedIntervals(RatioSpec())
    assert results == [reference.sum_stats(n) for n in [40, 10, 30, 20] * 4]


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.fractions(min_value=0, max_value=1, max_denominator=12), min_size=1, max_size=8
    ),
    st.sampled_from(["independent", "nested"]),
)
def test_count_distribution_is_probability(values, kind):
    """Свойство: распределение числа событий нормировано и E[eta] = s."""
    if kind == "nested":
        values = sorted(values)
    model = build_model(kind, TableSpec(prefix=values))
    n = len(values)
    dist = model.count_distribution(n)
    assert dist.total == 1
    assert dist.mean == model.partial_sum(n)
    assert dist.second_moment == model.sum_stats(n).b


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.fractions(min_value=0, max_value=1, max_denominator=12), min_size=1, max_size=7
    ),
    st.sampled_from(["independent", "nested", "exclusive"]),
)
def test_joint_and_union_bounds(values, kind):
    """Свойство: пересечения симметричны и ограничены, объединения монотонны по m."""
    if kind == "nested":
        values = sorted(values)
    elif kind == "exclusive":
        values = [value / len(values) for value in values]
    model = build_model(kind, TableSpec(prefix=values))
    n = len(values)

    for i in range(1, n + 1):
        assert model.joint(i, i) == model.prob(i)
        for k in range(1, n + 1):
            joint = model.joint(i, k)
            assert joint == model.joint(k, i)
            assert ZERO <= joint <= min(model.prob(i), model.prob(k))

    for start in range(1, n + 1):
        previous = ZERO
        for end in range(start, n + 1):
            union = model.union_prob(start, end)
            highest = max(model.prob(i) for i in range(start, end + 1))
            assert highest <= union <= min(ONE, model.range_sum(start, end))
            assert union >= previous
            previous = union
