"""
Проверка, вывод и итерирование функций скорости на моделях событий.

Все решения принимаются точным сравнением рациональных чисел. Поиски,
которые в общем случае лишь полуразрешимы, ограничены явным бюджетом и
при его исчерпании завершаются исключением.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from loguru import logger

from bc_quant.config import config
from bc_quant.errors import PreconditionError, RateValidationError, SearchBudgetExceeded
from bc_quant.models.events import EventModel
from bc_quant.models.sequences import SequenceBase
from bc_quant.numerics.rational import ZERO, format_rational, pow2
from bc_quant.rates.functions import TableOmega, one_plus_dyadic


@dataclass
class RateVerdict:
    """Результат проверки функции скорости."""

    passed: bool
    first_failure: Optional[Any] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def raise_if_failed(self, what: str) -> None:
        """Превращает отрицательный результат в RateValidationError."""
        if not self.passed:
            logger.error(f"{what}: проверка не пройдена на {self.first_failure}")
            raise RateValidationError(
                f"{what}: проверка не пройдена, первое нарушение при {self.first_failure}",
                first_failure=self.first_failure,
            )


@dataclass
class TailVerdict:
    """Результат проверки хвостовой оценки для скорости расходимости."""

    passed: bool
    window: Tuple[int, int]
    tail_sum: Fraction
    required: int


@dataclass
class MetastabilityReport:
    """Результат поиска устойчивого интервала [k, f(k)]."""

    k: Optional[int]
    l: int
    violations: Dict[int, Tuple[int, int]] = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.k is not None


def check_divergence_rate(model: EventModel, omega, n_max: int) -> RateVerdict:
    """
    Проверяет, что сумма P[A_i] по i <= omega(N) не меньше N при всех N <= n_max.

    Returns:
        RateVerdict: passed и первое нарушающее N
    """
    if n_max < 1:
        raise PreconditionError(f"n_max должно быть >= 1, получено {n_max}")

    for big_n in range(1, n_max + 1):
        index = omega(big_n)
        total = model.partial_sum(index)
        if total < big_n:
            logger.debug(
                f"omega({big_n}) = {index}: сумма {format_rational(total)} < {big_n}"
            )
            return RateVerdict(
                passed=False,
                first_failure=big_n,
                details={"omega": index, "sum": format_rational(total)},
            )
    return RateVerdict(passed=True)


def derive_divergence_rate(
    model: EventModel, n_max: int, budget: Optional[int] = None
) -> TableOmega:
    """
    Строит наименьшую скорость расходимости в табличной форме.

    omega(N) - наименьший индекс, при котором частичная сумма достигает N.

    Raises:
        SearchBudgetExceeded: Если сумма не достигла n_max в пределах бюджета
    """
    if n_max < 1:
        raise PreconditionError(f"n_max должно быть >= 1, получено {n_max}")
    budget = config.search.index_budget if budget is None else budget

    values: List[int] = []
    index = 0
    for big_n in range(1, n_max + 1):
        while model.partial_sum(index) < big_n:
            index += 1
            if index > budget:
                raise SearchBudgetExceeded(
                    f"Сумма вероятностей не достигла {big_n} в пределах бюджета {budget}"
                )
        values.append(max(index, 1))

    # минимальность: на шаге omega(N) - 1 сумма еще меньше N
    for big_n, index in enumerate(values, start=1):
        if model.partial_sum(index - 1) >= big_n:
            raise RateValidationError(
                f"omega({big_n}) = {index} не минимальна", first_failure=big_n
            )

    logger.debug(f"Выведена скорость расходимости: {values}")
    return TableOmega(values=values)


def tail_divergence_bound(model: EventModel, omega, n: int, big_n: int) -> TailVerdict:
    """Проверяет, что сумма P[A_i] по i от n до omega(n + N - 1) не меньше N."""
    if n < 1 or big_n < 1:
        raise PreconditionError(f"Требуется n >= 1 и N >= 1, получено n={n}, N={big_n}")
    end = omega(n + big_n - 1)
    tail = model.range_sum(n, end) if end >= n else ZERO
    return TailVerdict(passed=tail >= big_n, window=(n, end), tail_sum=tail, required=big_n)


def check_convergence_rate(model: EventModel, phi, l_max: int, m_max: int) -> RateVerdict:
    """
    Проверяет, что сумма P[A_i] по i от phi(l) до m не больше 2^{-l}.

    Проверяются все l <= l_max и phi(l) < m <= m_max.
    """
    for l in range(0, l_max + 1):
        start = phi(l)
        bound = pow2(-l)
        for m in range(start + 1, m_max + 1):
            total = model.range_sum(start, m)
            if total > bound:
                return RateVerdict(
                    passed=False,
                    first_failure=(l, m),
                    details={"sum": format_rational(total), "bound": format_rational(bound)},
                )
    return RateVerdict(passed=True)


def metastability_from_convergence(phi, l: int) -> int:
    """
    Индекс устойчивости, получаемый из скорости сходимости.

    Для частичных сумм x_n все m, n >= phi(l + 1) удовлетворяют
    |x_m - x_n| <= 2^{-(l+1)} < 2^{-l}, какова бы ни была функция f.
    """
    return phi(l + 1)


def _ratio_within(model: EventModel, m: int, l: int) -> bool:
    stats = model.sum_stats(m)
    if stats.a == ZERO:
        return False
    return stats.b <= one_plus_dyadic(l) * stats.a


def derive_liminf_witness(model: EventModel, l: int, n: int, budget: int) -> int:
    """
    Наименьший m из [n, budget], для которого b_m / a_m <= 1 + 2^{-l}.

    Raises:
        PreconditionError: Если budget < n
        SearchBudgetExceeded: Если такого m нет в пределах бюджета
    """
    if n < 1:
        raise PreconditionError(f"n должно быть >= 1, получено {n}")
    if budget < n:
        raise PreconditionError(f"Бюджет {budget} меньше начального индекса {n}")

    for m in range(n, budget + 1):
        if _ratio_within(model, m, l):
            logger.debug(f"Свидетель liminf для l={l}, n={n}: m={m}")
            return m

    raise SearchBudgetExceeded(
        f"Отношение b/a не опустилось до 1 + 2^-{l} на [{n}, {budget}]"
    )


def verify_liminf_value(model: EventModel, l: int, n: int, value: int) -> None:
    """
    Проверяет свойство свидетеля: value >= n и b/a <= 1 + 2^{-l} в точке value.

    Raises:
        RateValidationError: Если свойство нарушено
    """
    if value < n or not _ratio_within(model, value, l):
        raise RateValidationError(
            f"phi({l}, {n}) = {value} не является свидетелем liminf",
            first_failure=(l, n),
        )


def _as_accessor(x: Union[SequenceBase, Callable[[int], Fraction]]) -> Callable[[int], Fraction]:
    if isinstance(x, SequenceBase):
        return x.term
    return x


def check_metastability(
    x: Union[SequenceBase, Callable[[int], Fraction]], l: int, f, k_max: int
) -> MetastabilityReport:
    """
    Ищет наименьший k <= k_max, при котором |x_m - x_n| < 2^{-l} на [k, f(k)].

    Для каждого отвергнутого k в отчет записывается нарушающая пара
    (индексы максимума и минимума на интервале).
    """
    if k_max < 1:
        raise PreconditionError(f"k_max должно быть >= 1, получено {k_max}")

    accessor = _as_accessor(x)
    bound = pow2(-l)
    report = MetastabilityReport(k=None, l=l)

    for k in range(1, k_max + 1):
        end = f(k)
        values = [(accessor(i), i) for i in range(k, end + 1)]
        high_value, high_index = max(values)
        low_value, low_index = min(values)
        if high_value - low_value < bound:
            report.k = k
            return report
        report.violations[k] = (low_index, high_index)

    logger.debug(f"Устойчивый интервал для l={l} не найден до k={k_max}")
    return report

