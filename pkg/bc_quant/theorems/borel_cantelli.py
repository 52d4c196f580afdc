"""
Количественные леммы Бореля-Кантелли.

Первая лемма: скорость сходимости ряда вероятностей переносится на
вероятность объединения хвоста. Вторая лемма: для независимых событий со
скоростью расходимости omega объединение окна [n, omega(n + N - 1)]
имеет вероятность не меньше 1 - e^{-N}.
"""

from fractions import Fraction
from typing import Any, Dict, Optional

from bc_quant.errors import PreconditionError, UndecidedError
from bc_quant.models.events import EventModel, IndependentBernoulli
from bc_quant.numerics.enclosure import (
    Ordering,
    compare_with_witness,
    exp_neg_enclosure,
    exp_neg_maker,
)
from bc_quant.numerics.rational import ONE, format_rational, pow2, render_decimal
from bc_quant.rates.checks import check_divergence_rate
from bc_quant.rates.functions import describe_rate
from bc_quant.theorems.certificate import (
    Certificate,
    TheoremTag,
    Verdict,
    build_certificate,
    undecided_certificate,
)


def first_bc(model: EventModel, phi, l: int, m: int) -> Certificate:
    """
    Первая лемма Бореля-Кантелли в количественной форме.

    Гипотеза: сумма P[A_i] по i от phi(l) до m не больше 2^{-l}.
    Заключение: P[объединение A_i по i от phi(l) до m] <= 2^{-l}.
    Сертификат записан как 2^{-l} >= union.

    Raises:
        PreconditionError: Если m <= phi(l)
    """
    start = phi(l)
    if m <= start:
        raise PreconditionError(f"Требуется m > phi({l}) = {start}, получено m={m}")

    bound = pow2(-l)
    hypothesis_sum = model.range_sum(start, m)
    union = model.union_prob(start, m)

    return build_certificate(
        TheoremTag.FIRST_BC,
        params={"model": model.to_dict(), "phi": describe_rate(phi), "l": l, "m": m},
        lhs=bound,
        rhs=union,
        trace={
            "phi_l": start,
            "hypothesis_sum": format_rational(hypothesis_sum),
            "union": format_rational(union),
            "sum_equals_union": hypothesis_sum == union,
        },
        hypotheses={"sum_within_bound": hypothesis_sum <= bound},
    )


def second_bc(
    model: EventModel,
    omega,
    n: int,
    big_n: int,
    precision_budget: Optional[int] = None,
) -> Certificate:
    """
    Вторая лемма Бореля-Кантелли в количественной форме.

    Вероятность объединения вычисляется точно как 1 - произведение (1 - p_i),
    а сравнение с 1 - e^{-N} сводится к сравнению этого произведения с
    e^{-N} по уточняемым интервальным оценкам.

    Raises:
        PreconditionError: Если модель не является независимой
    """
    if not isinstance(model, IndependentBernoulli):
        raise PreconditionError(
            f"Вторая лемма Бореля-Кантелли требует независимых событий, получено {model.kind}"
        )
    if n < 1 or big_n < 1:
        raise PreconditionError(f"Требуется n >= 1 и N >= 1, получено n={n}, N={big_n}")

    end = omega(n + big_n - 1)
    if end < n:
        raise PreconditionError(f"Пустое окно [{n}, {end}]: omega не является скоростью")

    omega_valid = check_divergence_rate(model, omega, n + big_n - 1).passed
    complement = model.complement_product(n, end)
    union = ONE - complement

    params: Dict[str, Any] = {
        "model": model.to_dict(),
        "omega": describe_rate(omega),
        "n": n,
        "N": big_n,
    }
    trace: Dict[str, Any] = {
        "window": [n, end],
        "complement_product": format_rational(complement),
        "union_decimal": render_decimal(union),
    }

    try:
        ordering, enclosure = compare_with_witness(
            complement, exp_neg_maker(big_n), budget=precision_budget
        )
    except UndecidedError as e:
        return undecided_certificate(
            TheoremTag.SECOND_BC, params, union, e.last_enclosure.one_minus(), trace
        )

    rhs = enclosure.one_minus()
    trace["exp_enclosure"] = enclosure.to_dict()
    trace["ordering"] = ordering.value

    if ordering == Ordering.GREATER:
        margin = union - rhs.lo
        trace["hypotheses"] = {"omega_valid": omega_valid}
        return Certificate(TheoremTag.SECOND_BC, params, union, rhs, margin, Verdict.FAIL, trace)

    return build_certificate(
        TheoremTag.SECOND_BC,
        params,
        lhs=union,
        rhs=rhs,
        trace=trace,
        hypotheses={"omega_valid": omega_valid},
    )


def die_power(k: int, big_n: int) -> Fraction:
    """(1 - 1/k)^{kN}: вероятность не выбросить грань за kN бросков k-гранной кости."""
    if k < 2 or big_n < 1:
        raise PreconditionError(f"Требуется k >= 2 и N >= 1, получено k={k}, N={big_n}")
    return (ONE - Fraction(1, k)) ** (k * big_n)


def die_tightness(
    k: int, big_n: int, prec: int = 20, precision_budget: Optional[int] = None
) -> Certificate:
    """
    Точность оценки второй леммы на примере k-гранной кости.

    Для P[A_i] = 1/k и omega(N) = kN дополнение объединения равно
    (1 - 1/k)^{kN}; это значение строго меньше e^{-N} и приближается к нему
    при росте k. Сертификат записан как e^{-N} >= (1 - 1/k)^{kN}.
    """
    value = die_power(k, big_n)
    params = {"mode": "tightness", "k": k, "N": big_n}
    trace: Dict[str, Any] = {"value_decimal": render_decimal(value)}

    try:
        _, enclosure = compare_with_witness(
            value, exp_neg_maker(big_n), budget=precision_budget
        )
    except UndecidedError as e:
        return undecided_certificate(TheoremTag.SECOND_BC, params, e.last_enclosure, value, trace)

    reference = exp_neg_enclosure(big_n, prec)
    trace["reference_enclosure"] = reference.to_dict()
    trace["gap_to_midpoint"] = format_rational(reference.midpoint - value)
    return build_certificate(TheoremTag.SECOND_BC, params, lhs=enclosure, rhs=value, trace=trace)
