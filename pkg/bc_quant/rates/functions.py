"""
Представления функций скорости omega, phi и g.

Все функции задаются замкнутыми термами или явными таблицами, а не
произвольным кодом, поэтому их можно без потерь встроить в сертификат и
воспроизвести запуск по файлу конфигурации.
"""

import threading
from fractions import Fraction
from typing import Annotated, Callable, Dict, List, Literal, Optional, Tuple, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator

from bc_quant.config import config
from bc_quant.errors import (
    IndexOverflowError,
    PreconditionError,
    RateValidationError,
)
from bc_quant.numerics.rational import ONE, ZERO, RationalField, ceil_fraction, pow2
from bc_quant.rates.grammar import ClosedExpression, get_expression_parser, parse_closed_form


class _RateBase(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


def _check_index(value: int, what: str) -> int:
    if value > config.models.max_index:
        raise IndexOverflowError(
            f"Значение {what} = {value} превышает максимальный индекс {config.models.max_index}"
        )
    return value


# --- скорость расходимости omega ---


class _OmegaBase(_RateBase):
    def _evaluate(self, big_n: int) -> int:
        raise NotImplementedError

    def __call__(self, big_n: int) -> int:
        if big_n < 1:
            raise PreconditionError(f"omega определена на N >= 1, получено {big_n}")
        return _check_index(self._evaluate(big_n), f"omega({big_n})")


class LinearOmega(_OmegaBase):
    """omega(N) = k * N."""

    kind: Literal["linear"] = "linear"
    k: int = Field(ge=1)

    def _evaluate(self, big_n: int) -> int:
        return self.k * big_n


class CeilDivOmega(_OmegaBase):
    """omega(N) = ceil(N / q1)."""

    kind: Literal["ceildiv"] = "ceildiv"
    q1: RationalField

    @field_validator("q1")
    @classmethod
    def _check_q1(cls, value: Fraction) -> Fraction:
        if value <= ZERO:
            raise ValueError("q1 должно быть положительным")
        return value

    def _evaluate(self, big_n: int) -> int:
        return ceil_fraction(Fraction(big_n) / self.q1)


class TableOmega(_OmegaBase):
    """Явная таблица omega(1..len) с необязательным линейным хвостом."""

    kind: Literal["table"] = "table"
    values: List[int]
    tail: Optional[LinearOmega] = None

    @field_validator("values")
    @classmethod
    def _check_values(cls, values: List[int]) -> List[int]:
        if any(v < 1 for v in values):
            raise ValueError("Значения omega должны быть >= 1")
        return values

    def _evaluate(self, big_n: int) -> int:
        if big_n <= len(self.values):
            return self.values[big_n - 1]
        if self.tail is None:
            raise IndexOverflowError(
                f"omega({big_n}) вне таблицы длины {len(self.values)} без хвоста"
            )
        return self.tail._evaluate(big_n)


DivergenceRate = Annotated[
    Union[LinearOmega, CeilDivOmega, TableOmega], Field(discriminator="kind")
]


# --- скорость сходимости phi ---


class AffinePhi(_RateBase):
    """phi(l) = l + c."""

    kind: Literal["affine"] = "affine"
    c: int

    def __call__(self, l: int) -> int:
        if l < 0:
            raise PreconditionError(f"phi определена на l >= 0, получено {l}")
        value = l + self.c
        if value < 1:
            raise RateValidationError(f"phi({l}) = {value} < 1", first_failure=l)
        return value


class TablePhi(_RateBase):
    """Явная таблица phi(0..len-1) с необязательным аффинным хвостом."""

    kind: Literal["table"] = "table"
    values: List[int]
    tail: Optional[AffinePhi] = None

    def __call__(self, l: int) -> int:
        if l < 0:
            raise PreconditionError(f"phi определена на l >= 0, получено {l}")
        if l < len(self.values):
            return self.values[l]
        if self.tail is None:
            raise IndexOverflowError(f"phi({l}) вне таблицы длины {len(self.values)} без хвоста")
        return self.tail(l)


ConvergenceRate = Annotated[Union[AffinePhi, TablePhi], Field(discriminator="kind")]


# --- свидетель liminf phi(l, n) ---


class ClosedWitness(_RateBase):
    """phi(l, n), заданная замкнутым выражением, например "max(n, 2^l)"."""

    kind: Literal["closed"] = "closed"
    expr: str

    @field_validator("expr")
    @classmethod
    def _check_expr(cls, value: str) -> str:
        ok, error = get_expression_parser().try_parse(value)
        if not ok:
            raise ValueError(str(error))
        return value

    def bind(self, model) -> Callable[[int, int], int]:
        return BoundClosedWitness(parse_closed_form(self.expr))


class SearchedWitness(_RateBase):
    """phi(l, n), найденная поиском наименьшего индекса."""

    kind: Literal["searched"] = "searched"
    budget: Optional[int] = Field(default=None, ge=1)

    def bind(self, model) -> Callable[[int, int], int]:
        return BoundSearchedWitness(model, self.budget)


LiminfWitness = Annotated[Union[ClosedWitness, SearchedWitness], Field(discriminator="kind")]


class BoundClosedWitness:
    """Замкнутое выражение, не зависящее от модели."""

    def __init__(self, expression: ClosedExpression):
        self.expression = expression

    def __call__(self, l: int, n: int) -> int:
        return _check_index(self.expression(l, n), f"phi({l}, {n})")

    def describe(self) -> Dict[str, str]:
        return {"kind": "closed", "expr": self.expression.text}


class BoundSearchedWitness:
    """
    Поиск наименьшего свидетеля с кэшем найденных значений.

    Кэш защищен блокировкой; результат не зависит от порядка запросов.
    """

    def __init__(self, model, budget: Optional[int] = None):
        self.model = model
        self.budget = budget
        self._lock = threading.Lock()
        self._cache: Dict[Tuple[int, int], int] = {}

    def __call__(self, l: int, n: int) -> int:
        # импорт здесь: checks зависит от этого модуля
        from bc_quant.rates.checks import derive_liminf_witness

        key = (l, n)
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached

        budget = self.budget if self.budget is not None else config.search.liminf_budget
        found = derive_liminf_witness(self.model, l, n, max(budget, n))
        with self._lock:
            self._cache[key] = found
        return found

    @property
    def cache(self) -> Dict[Tuple[int, int], int]:
        with self._lock:
            return dict(self._cache)

    def describe(self) -> Dict[str, object]:
        return {"kind": "searched", "budget": self.budget}


# --- функция g ---


class _GBase(_RateBase):
    def _evaluate(self, i: int) -> int:
        raise NotImplementedError

    def __call__(self, i: int) -> int:
        """
        Значение g(i) с проверкой g(i) > i.

        Raises:
            RateValidationError: Если g(i) <= i
            IndexOverflowError: Если g(i) превышает максимальный индекс
        """
        if i < 0:
            raise PreconditionError(f"g определена на i >= 0, получено {i}")
        value = self._evaluate(i)
        if value <= i:
            raise RateValidationError(f"g({i}) = {value} не больше {i}", first_failure=i)
        return _check_index(value, f"g({i})")


class AffineG(_GBase):
    """g(n) = a * n + c."""

    kind: Literal["affine"] = "affine"
    a: int = Field(ge=1)
    c: int = Field(ge=0)

    def _evaluate(self, i: int) -> int:
        return self.a * i + self.c


class PowerG(_GBase):
    """g(n) = n^e."""

    kind: Literal["power"] = "power"
    e: int = Field(ge=2)

    def _evaluate(self, i: int) -> int:
        return i**self.e


class TableG(_GBase):
    """Явная таблица g(1..len) с необязательным хвостом."""

    kind: Literal["table"] = "table"
    values: List[int]
    tail: Optional[Annotated[Union[AffineG, PowerG], Field(discriminator="kind")]] = None

    def _evaluate(self, i: int) -> int:
        if 1 <= i <= len(self.values):
            return self.values[i - 1]
        if self.tail is None:
            raise IndexOverflowError(f"g({i}) вне таблицы длины {len(self.values)} без хвоста")
        return self.tail._evaluate(i)


GFunction = Annotated[Union[AffineG, PowerG, TableG], Field(discriminator="kind")]


_omega_adapter = TypeAdapter(DivergenceRate)
_phi_adapter = TypeAdapter(ConvergenceRate)
_liminf_adapter = TypeAdapter(LiminfWitness)
_g_adapter = TypeAdapter(GFunction)


def parse_omega(data) -> Union[LinearOmega, CeilDivOmega, TableOmega]:
    return data if isinstance(data, _RateBase) else _omega_adapter.validate_python(data)


def parse_phi(data) -> Union[AffinePhi, TablePhi]:
    return data if isinstance(data, _RateBase) else _phi_adapter.validate_python(data)


def parse_liminf(data) -> Union[ClosedWitness, SearchedWitness]:
    return data if isinstance(data, _RateBase) else _liminf_adapter.validate_python(data)


def parse_g(data) -> Union[AffineG, PowerG, TableG]:
    return data if isinstance(data, _RateBase) else _g_adapter.validate_python(data)


def iterate_g(g: _GBase, r: int, start: int) -> int:
    """
    Применяет g к start r раз.

    Raises:
        PreconditionError: Если r < 0
        IndexOverflowError: Если очередное значение превышает максимальный индекс
    """
    if r < 0:
        raise PreconditionError(f"Число итераций должно быть >= 0, получено {r}")
    value = start
    for _ in range(r):
        value = g(value)
    return value


def dyadic(l: int) -> Fraction:
    """2^{-l}."""
    return pow2(-l)


def one_plus_dyadic(l: int) -> Fraction:
    """1 + 2^{-l}."""
    return ONE + pow2(-l)


def describe_rate(rate) -> Dict[str, object]:
    """Сериализует функцию скорости для встраивания в сертификат."""
    if isinstance(rate, _RateBase):
        return rate.model_dump(mode="json")
    if hasattr(rate, "describe"):
        return rate.describe()
    logger.warning(f"Функция скорости {rate!r} не сериализуема, записывается repr")
    return {"repr": repr(rate)}
