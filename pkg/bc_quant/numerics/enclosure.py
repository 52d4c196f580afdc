"""
Рациональные интервальные оценки трансцендентных констант.

e^{-N} вычисляется как величина, обратная частичной сумме ряда Тейлора
для e^N, с явной рациональной оценкой остатка. Никакой плавающей точки
на пути принятия решения нет.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Optional, Tuple

from loguru import logger

from bc_quant.config import config
from bc_quant.errors import PreconditionError, UndecidedError
from bc_quant.numerics.rational import ONE, format_rational, parse_rational, pow2


@dataclass(frozen=True)
class RatInterval:
    """Замкнутый интервал [lo, hi] с рациональными концами."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise PreconditionError(
                f"Нижняя граница интервала больше верхней: "
                f"{format_rational(self.lo)} > {format_rational(self.hi)}"
            )

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_nested_in(self, other: "RatInterval") -> bool:
        """Проверяет, что интервал целиком лежит внутри other."""
        return other.lo <= self.lo and self.hi <= other.hi

    def one_minus(self) -> "RatInterval":
        """Интервал значений 1 - x для x из данного интервала."""
        return RatInterval(ONE - self.hi, ONE - self.lo)

    def to_dict(self) -> Dict[str, str]:
        return {"lo": format_rational(self.lo), "hi": format_rational(self.hi)}

    @classmethod
    def from_dict(cls, data: Dict[str, str]) -> "RatInterval":
        return cls(parse_rational(data["lo"]), parse_rational(data["hi"]))


class Ordering(str, Enum):
    """Результат сравнения рационального числа с иррациональной целью."""

    LESS = "less"
    GREATER = "greater"


@lru_cache(maxsize=1024)
def _exp_neg_cached(n_value: int, target_bits: int) -> Tuple[Fraction, Fraction, int]:
    # S_K = sum_{k<=K} N^k/k!, остаток ряда не превосходит t_{K+1} / (1 - N/(K+2))
    target = pow2(-target_bits)
    partial = ONE
    term = ONE
    k = 0
    while True:
        k += 1
        term = term * n_value / k
        partial += term
        if k < n_value:
            continue
        next_term = term * n_value / (k + 1)
        tail = next_term / (1 - Fraction(n_value, k + 2))
        lo = 1 / (partial + tail)
        hi = 1 / partial
        if hi - lo <= target:
            return lo, hi, k


def exp_neg_enclosure(n_value: int, prec: int, guard_bits: Optional[int] = None) -> RatInterval:
    """
    Интервальная оценка e^{-N} шириной не более 2^{-prec}.

    Ряд усекается до ширины 2^{-(prec + guard_bits)}, поэтому возвращаемый
    интервал заметно уже требуемого. Оценки при росте prec вложены друг в
    друга: число членов ряда монотонно по prec.

    Args:
        n_value: Показатель N >= 1
        prec: Точность в битах, prec >= 1
        guard_bits: Запасные биты (по умолчанию из конфигурации)

    Returns:
        RatInterval: Интервал, содержащий e^{-N}, оба конца в (0, 1)
    """
    if n_value < 1:
        raise PreconditionError(f"Показатель экспоненты должен быть >= 1, получено {n_value}")
    if prec < 1:
        raise PreconditionError(f"Точность должна быть >= 1 бита, получено {prec}")

    if guard_bits is None:
        guard_bits = config.precision.guard_bits

    lo, hi, terms = _exp_neg_cached(n_value, prec + guard_bits)
    logger.debug(f"Оценка e^-{n_value} при точности {prec} бит: {terms} членов ряда")
    return RatInterval(lo, hi)


def compare_with_witness(
    value: Fraction,
    make_enclosure: Callable[[int], RatInterval],
    budget: Optional[int] = None,
    start: Optional[int] = None,
) -> Tuple[Ordering, RatInterval]:
    """
    Сравнивает value с иррациональным числом, заданным оценками.

    Точность удваивается начиная со start, пока value не окажется вне
    интервала или пока не будет исчерпан бюджет. Если очередная оценка не
    вложена в предыдущую, берется их пересечение, так что возвращаемые
    интервалы всегда сужаются.

    Returns:
        Порядок value относительно цели и интервал, на котором решено сравнение

    Raises:
        UndecidedError: Если сравнение не решено при точности budget
    """
    budget = config.precision.budget if budget is None else budget
    prec = config.precision.start if start is None else start
    prec = max(1, min(prec, budget))

    previous: Optional[RatInterval] = None
    while True:
        enclosure = make_enclosure(prec)
        if previous is not None and not enclosure.is_nested_in(previous):
            # пересечение двух оценок тоже содержит цель
            enclosure = RatInterval(max(enclosure.lo, previous.lo), min(enclosure.hi, previous.hi))
        previous = enclosure
        if value >= enclosure.hi:
            return Ordering.GREATER, enclosure
        if value <= enclosure.lo:
            return Ordering.LESS, enclosure
        if prec >= budget:
            logger.warning(
                f"Сравнение {format_rational(value)} не решено при точности {prec} бит"
            )
            raise UndecidedError(
                f"Сравнение с {format_rational(value)} не решено при бюджете {budget} бит",
                last_enclosure=enclosure,
            )
        logger.debug(f"Уточнение оценки: {prec} -> {min(prec * 2, budget)} бит")
        prec = min(prec * 2, budget)


def compare_rational_vs_enclosed(
    value: Fraction,
    make_enclosure: Callable[[int], RatInterval],
    budget: Optional[int] = None,
    start: Optional[int] = None,
) -> Ordering:
    """Сравнивает value с иррациональным числом, возвращая только порядок."""
    ordering, _ = compare_with_witness(value, make_enclosure, budget, start)
    return ordering


def exp_neg_maker(n_value: int) -> Callable[[int], RatInterval]:
    """Фабрика оценок e^{-N} для compare_rational_vs_enclosed."""
    return lambda prec: exp_neg_enclosure(n_value, prec)

