"""
Модели последовательностей событий с точными вероятностями.

Каждая модель отвечает на вопросы о вероятностях отдельных событий, их
попарных пересечений и объединений, а также о распределении числа
наступивших событий. Модели неизменяемы; внутренние кэши (префиксные суммы,
накопленные суммы SumStats, свертки) защищены блокировкой, поэтому
модель можно разделять между потоками.
"""

import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Any, ClassVar, Dict, List, Type

from loguru import logger

from bc_quant.config import config
from bc_quant.errors import (
    CapExceededError,
    ConfigError,
    ModelInvariantError,
    PreconditionError,
)
from bc_quant.models.sequences import SequenceBase, parse_sequence
from bc_quant.numerics.rational import ONE, ZERO, format_rational


@dataclass(frozen=True)
class SumStats:
    """Суммы первых n вероятностей и попарных пересечений."""

    n: int
    s: Fraction
    a: Fraction
    b: Fraction
    off_diag_prod: Fraction
    off_diag_joint: Fraction

    @property
    def ratio(self) -> Fraction:
        """Отношение b/a; определено при s > 0."""
        if self.a == ZERO:
            raise PreconditionError(
                f"Отношение b/a не определено: сумма вероятностей при n={self.n} равна 0"
            )
        return self.b / self.a

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "s": format_rational(self.s),
            "a": format_rational(self.a),
            "b": format_rational(self.b),
            "off_diag_prod": format_rational(self.off_diag_prod),
            "off_diag_joint": format_rational(self.off_diag_joint),
        }


@dataclass(frozen=True)
class CountDistribution:
    """Распределение числа наступивших событий среди первых n."""

    n: int
    pmf: Dict[int, Fraction]
    mean: Fraction
    variance: Fraction

    @classmethod
    def from_weights(cls, n: int, weights: Dict[int, Fraction]) -> "CountDistribution":
        """Строит распределение, отбрасывая нулевые веса и вычисляя моменты."""
        pmf = {count: weight for count, weight in sorted(weights.items()) if weight != ZERO}
        mean = sum((count * weight for count, weight in pmf.items()), ZERO)
        second = sum((count * count * weight for count, weight in pmf.items()), ZERO)
        return cls(n=n, pmf=pmf, mean=mean, variance=second - mean * mean)

    @property
    def second_moment(self) -> Fraction:
        return self.variance + self.mean * self.mean

    @property
    def total(self) -> Fraction:
        return sum(self.pmf.values(), ZERO)

    def prob_at_most(self, threshold: Fraction) -> Fraction:
        """P[eta_n <= threshold]."""
        return sum((w for count, w in self.pmf.items() if count <= threshold), ZERO)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "pmf": {str(count): format_rational(w) for count, w in self.pmf.items()},
            "mean": format_rational(self.mean),
            "variance": format_rational(self.variance),
        }


class EventModel(ABC):
    """
    Базовый класс моделей событий (A_i), i >= 1.

    Подклассы задают вероятности пересечений, объединений и распределение
    числа событий; префиксные суммы и SumStats вычисляются здесь.
    """

    kind: ClassVar[str] = ""

    def __init__(self, sequence: SequenceBase):
        self.sequence = parse_sequence(sequence)
        self._lock = threading.RLock()
        self._prefix: List[Fraction] = [ZERO]
        self._stats: List[SumStats] = []

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.sequence!r})"

    # --- одиночные события ---

    def prob(self, i: int) -> Fraction:
        """P[A_i]."""
        return self.sequence.term(i)

    def partial_sum(self, n: int) -> Fraction:
        """Сумма P[A_i] по i от 1 до n (n = 0 дает 0)."""
        if n < 0:
            raise PreconditionError(f"Длина префикса не может быть отрицательной: {n}")
        with self._lock:
            if n >= len(self._prefix):
                total = self._prefix[-1]
                for i in range(len(self._prefix), n + 1):
                    total += self.prob(i)
                    self._prefix.append(total)
            return self._prefix[n]

    def range_sum(self, n: int, m: int) -> Fraction:
        """Сумма P[A_i] по i от n до m."""
        self._check_range(n, m)
        return self.partial_sum(m) - self.partial_sum(n - 1)

    # --- пары и объединения ---

    @abstractmethod
    def joint(self, i: int, k: int) -> Fraction:
        """P[A_i A_k]."""

    @abstractmethod
    def union_prob(self, n: int, m: int) -> Fraction:
        """P[объединение A_i по i от n до m]."""

    @abstractmethod
    def cross_joint(self, n: int) -> Fraction:
        """Сумма P[A_i A_n] по i < n."""

    # --- накопленные суммы ---

    def sum_stats(self, n: int) -> SumStats:
        """
        SumStats для первых n событий.

        Значения накапливаются по одному шагу: переход от n-1 к n требует
        одного вызова cross_joint и одного умножения.
        """
        if n < 1:
            raise PreconditionError(f"Число событий должно быть >= 1, получено {n}")

        with self._lock:
            if n > len(self._stats):
                if len(self._stats) == 0:
                    s, prod, joint = ZERO, ZERO, ZERO
                else:
                    last = self._stats[-1]
                    s, prod, joint = last.s, last.off_diag_prod, last.off_diag_joint
                start = len(self._stats) + 1
                for k in range(start, n + 1):
                    p_k = self.prob(k)
                    prod += p_k * s
                    joint += self.cross_joint(k)
                    s += p_k
                    self._stats.append(
                        SumStats(
                            n=k,
                            s=s,
                            a=s * s,
                            b=s + 2 * joint,
                            off_diag_prod=prod,
                            off_diag_joint=joint,
                        )
                    )
                logger.debug(f"{self.kind}: SumStats накоплены до n={n}")
            return self._stats[n - 1]

    # --- распределение числа событий ---

    @abstractmethod
    def count_distribution(self, n: int) -> CountDistribution:
        """Распределение eta_n = число наступивших событий среди A_1..A_n."""

    # --- служебное ---

    @staticmethod
    def _check_range(n: int, m: int) -> None:
        if n < 1 or m < n:
            raise PreconditionError(f"Некорректный диапазон индексов [{n}, {m}]")

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "sequence": self.sequence.model_dump(mode="json")}


class NestedIntervals(EventModel):
    """A_i = [0, q_i] в равномерном распределении на [0, 1], q_i не убывают."""

    kind = "nested"

    def __init__(self, sequence: SequenceBase):
        super().__init__(sequence)
        self._checked_upto = 0

    def ensure_monotone(self, upto: int) -> None:
        """Лениво проверяет неубывание q_i до номера upto."""
        with self._lock:
            if upto > self._checked_upto:
                self.sequence.ensure_non_decreasing(upto, start=max(1, self._checked_upto))
                self._checked_upto = upto

    def prob(self, i: int) -> Fraction:
        self.ensure_monotone(i)
        return super().prob(i)

    def joint(self, i: int, k: int) -> Fraction:
        self.ensure_monotone(max(i, k))
        return self.prob(min(i, k))

    def union_prob(self, n: int, m: int) -> Fraction:
        self._check_range(n, m)
        return self.prob(m)

    def cross_joint(self, n: int) -> Fraction:
        # P[A_i A_n] = q_i при i < n
        return self.partial_sum(n - 1)

    def count_distribution(self, n: int) -> CountDistribution:
        if n < 1:
            raise PreconditionError(f"Число событий должно быть >= 1, получено {n}")
        self.ensure_monotone(n)

        # eta_n = j ровно тогда, когда q_{n-j} < x <= q_{n-j+1}
        weights = {0: ONE - self.prob(n)}
        for j in range(1, n + 1):
            upper = self.prob(n - j + 1)
            lower = self.prob(n - j) if n - j >= 1 else ZERO
            weights[j] = upper - lower
        return CountDistribution.from_weights(n, weights)


class IndependentBernoulli(EventModel):
    """Взаимно независимые события с P[A_i] = p_i."""

    kind = "independent"

    def __init__(self, sequence: SequenceBase):
        super().__init__(sequence)
        self._pmf_cache: Dict[int, CountDistribution] = {}
        self._dense_pmf: List[Fraction] = [ONE]

    def joint(self, i: int, k: int) -> Fraction:
        if i == k:
            return self.prob(i)
        return self.prob(i) * self.prob(k)

    def cross_joint(self, n: int) -> Fraction:
        return self.prob(n) * self.partial_sum(n - 1)

    def complement_product(self, n: int, m: int) -> Fraction:
        """
        Произведение (1 - p_i) по i от n до m.

        Числители и знаменатели перемножаются как целые, дробь сокращается
        один раз в конце.
        """
        self._check_range(n, m)
        factors = [ONE - self.prob(i) for i in range(n, m + 1)]
        numerator = prod(f.numerator for f in factors)
        if numerator == 0:
            return ZERO
        return Fraction(numerator, prod(f.denominator for f in factors))

    def union_prob(self, n: int, m: int) -> Fraction:
        return ONE - self.complement_product(n, m)

    def count_distribution(self, n: int) -> CountDistribution:
        if n < 1:
            raise PreconditionError(f"Число событий должно быть >= 1, получено {n}")
        if n > config.models.count_cap:
            raise CapExceededError(
                f"Распределение числа событий для n={n} превышает предел "
                f"{config.models.count_cap}"
            )

        with self._lock:
            cached = self._pmf_cache.get(n)
            if cached is not None:
                return cached

            # свертка Пуассона-биномиального распределения по одному событию
            current = len(self._dense_pmf) - 1
            dense = self._dense_pmf if current <= n else [ONE]
            start = current + 1 if current <= n else 1
            for i in range(start, n + 1):
                p_i = self.prob(i)
                q_i = ONE - p_i
                extended = [ZERO] * (len(dense) + 1)
                for count, weight in enumerate(dense):
                    if weight == ZERO:
                        continue
                    extended[count] += weight * q_i
                    extended[count + 1] += weight * p_i
                dense = extended

            if len(dense) - 1 >= len(self._dense_pmf) - 1:
                self._dense_pmf = dense
            result = CountDistribution.from_weights(n, dict(enumerate(dense)))
            self._pmf_cache[n] = result
            return result


class MutuallyExclusive(EventModel):
    """Попарно несовместные события; сумма вероятностей не превосходит 1."""

    kind = "exclusive"

    def _check_mass(self, m: int) -> Fraction:
        total = self.partial_sum(m)
        if total > ONE:
            raise ModelInvariantError(
                f"Сумма вероятностей несовместных событий до {m} равна "
                f"{format_rational(total)} > 1"
            )
        return total

    def joint(self, i: int, k: int) -> Fraction:
        self._check_mass(max(i, k))
        return self.prob(i) if i == k else ZERO

    def cross_joint(self, n: int) -> Fraction:
        return ZERO

    def sum_stats(self, n: int) -> SumStats:
        self._check_mass(n)
        return super().sum_stats(n)

    def union_prob(self, n: int, m: int) -> Fraction:
        self._check_range(n, m)
        self._check_mass(m)
        return self.range_sum(n, m)

    def count_distribution(self, n: int) -> CountDistribution:
        if n < 1:
            raise PreconditionError(f"Число событий должно быть >= 1, получено {n}")
        total = self._check_mass(n)
        return CountDistribution.from_weights(n, {0: ONE - total, 1: total})


MODEL_KINDS: Dict[str, Type[EventModel]] = {
    NestedIntervals.kind: NestedIntervals,
    IndependentBernoulli.kind: IndependentBernoulli,
    MutuallyExclusive.kind: MutuallyExclusive,
}


def build_model(kind: str, sequence: Any) -> EventModel:
    """
    Создает модель событий по виду и описанию последовательности.

    Args:
        kind: "nested", "independent" или "exclusive"
        sequence: Описание последовательности (словарь или SequenceBase)

    Raises:
        ConfigError: Если вид модели неизвестен
    """
    model_cls = MODEL_KINDS.get(kind)
    if model_cls is None:
        raise ConfigError(f"Неизвестный вид модели: {kind!r}, допустимы {sorted(MODEL_KINDS)}")
    return model_cls(parse_sequence(sequence))


def model_from_dict(data: Dict[str, Any]) -> EventModel:
    """Создает модель из словаря {"kind": ..., "sequence": {...}}."""
    try:
        return build_model(data["kind"], data["sequence"])
    except KeyError as e:
        raise ConfigError(f"В описании модели отсутствует поле {e}") from e

