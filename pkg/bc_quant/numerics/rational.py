"""
Точные рациональные числа: разбор, сериализация и десятичное отображение.

Все вероятности в пакете хранятся как fractions.Fraction, который всегда
находится в несократимой форме со знаменателем > 0. Сериализация везде
одна: строка "числитель/знаменатель" в десятичной записи.
"""

import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Annotated, Union

from pydantic import PlainSerializer, PlainValidator

RationalLike = Union[Fraction, int, str]

# Знаменатели точных сумм растут как НОК(1..n) и уже при n ~ 10^4 превышают
# предел длины десятичной записи целых (4300 цифр), введенный в Python 3.10.7
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(value: RationalLike) -> Fraction:
    """
    Разбирает рациональное число из строки, целого или Fraction.

    Допустимые строки: "a/b", "a", а также конечные десятичные дроби
    ("0.25"). Числа с плавающей точкой отвергаются, так как их двоичное
    представление не совпадает с записанным в конфигурации значением.

    Raises:
        ValueError: Если значение не является точным рациональным числом
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"Логическое значение не является рациональным числом: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError(
            f"Число с плавающей точкой {value!r} не допускается, используйте строку 'a/b'"
        )
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Некорректная запись рационального числа: {value!r}") from e
    raise ValueError(f"Неподдерживаемый тип рационального числа: {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """Возвращает каноническую запись "num/den" (знаменатель пишется всегда)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def render_decimal(value: Fraction, digits: int = 12) -> str:
    """
    Десятичное отображение с заданным числом значащих цифр.

    Используется только для вывода; решения никогда не принимаются по нему.
    """
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = digits
        result = Decimal(value.numerator) / Decimal(value.denominator)
    return str(result)


def pow2(exponent: int) -> Fraction:
    """Точное значение 2^exponent для целого (в том числе отрицательного) показателя."""
    if exponent >= 0:
        return Fraction(1 << exponent)
    return Fraction(1, 1 << -exponent)


def ceil_fraction(value: Fraction) -> int:
    """Точный потолок рационального числа."""
    return -((-value.numerator) // value.denominator)


# Тип поля pydantic-моделей: разбирается parse_rational, пишется как "num/den"
RationalField = Annotated[
    Fraction,
    PlainValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str),
]
