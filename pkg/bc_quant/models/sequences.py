"""
Грамматика рациональных последовательностей.

Последовательность задается небольшим замкнутым набором вариантов,
различаемых по полю "kind". Такие описания сериализуются в JSON без потерь
и встраиваются в сертификаты как есть.
"""

from bisect import bisect_right
from fractions import Fraction
from functools import cached_property
from itertools import accumulate
from typing import Annotated, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator, model_validator

from bc_quant.config import config
from bc_quant.errors import IndexOverflowError, ModelInvariantError, PreconditionError
from bc_quant.numerics.rational import ONE, ZERO, RationalField, format_rational, pow2


class SequenceBase(BaseModel):
    """Общая часть всех вариантов последовательностей."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    def _value(self, i: int) -> Fraction:
        raise NotImplementedError

    def term(self, i: int) -> Fraction:
        """
        Возвращает i-й член последовательности (нумерация с 1).

        Raises:
            PreconditionError: Если i < 1
            IndexOverflowError: Если i вне области определения
            ModelInvariantError: Если член не лежит в [0, 1]
        """
        if i < 1:
            raise PreconditionError(f"Индекс должен быть >= 1, получено {i}")
        if i > config.models.max_index:
            raise IndexOverflowError(
                f"Индекс {i} превышает максимально допустимый {config.models.max_index}"
            )

        value = self._value(i)
        if value < ZERO or value > ONE:
            raise ModelInvariantError(
                f"Член последовательности {self.kind}[{i}] = {format_rational(value)} "
                f"вне отрезка [0, 1]"
            )
        return value

    def limit(self) -> Optional[Fraction]:
        """Предел последовательности в замкнутой форме или None."""
        return None

    def ensure_non_decreasing(self, upto: int, start: int = 1) -> None:
        """
        Проверяет неубывание членов с номерами start..upto.

        Raises:
            ModelInvariantError: С указанием первого убывающего номера
        """
        previous = self.term(start - 1) if start > 1 else None
        for i in range(start, upto + 1):
            current = self.term(i)
            if previous is not None and current < previous:
                raise ModelInvariantError(
                    f"Последовательность {self.kind} убывает на шаге {i}: "
                    f"{format_rational(current)} < {format_rational(previous)}"
                )
            previous = current


class ConstantSpec(SequenceBase):
    """term_i = c."""

    kind: Literal["constant"] = "constant"
    c: RationalField

    def _value(self, i: int) -> Fraction:
        return self.c

    def limit(self) -> Optional[Fraction]:
        return self.c


class TableSpec(SequenceBase):
    """
    Явная таблица первых членов с необязательным хвостом.

    Хвост вычисляется по абсолютному номеру: term_i = tail(i) при
    i > len(prefix). Без хвоста таблица конечна.
    """

    kind: Literal["table"] = "table"
    prefix: List[RationalField]
    tail: Optional["SequenceSpec"] = None

    def _value(self, i: int) -> Fraction:
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        if self.tail is None:
            raise IndexOverflowError(
                f"Индекс {i} за пределами таблицы длины {len(self.prefix)} без хвоста"
            )
        return self.tail.term(i)

    def limit(self) -> Optional[Fraction]:
        return self.tail.limit() if self.tail is not None else None


class AffineReciprocalSpec(SequenceBase):
    """term_i = q - c / (i + d)."""

    kind: Literal["affine_reciprocal"] = "affine_reciprocal"
    q: RationalField
    c: RationalField
    d: int = Field(ge=1)

    def _value(self, i: int) -> Fraction:
        return self.q - self.c / (i + self.d)

    def limit(self) -> Optional[Fraction]:
        return self.q


class RatioSpec(SequenceBase):
    """term_i = i / (i + 1)."""

    kind: Literal["ratio"] = "ratio"

    def _value(self, i: int) -> Fraction:
        return Fraction(i, i + 1)

    def limit(self) -> Optional[Fraction]:
        return ONE


class GeometricSpec(SequenceBase):
    """term_i = ratio^i."""

    kind: Literal["geometric"] = "geometric"
    ratio: RationalField

    @field_validator("ratio")
    @classmethod
    def _check_ratio(cls, value: Fraction) -> Fraction:
        if value < ZERO or value > ONE:
            raise ValueError(f"Знаменатель прогрессии вне [0, 1]: {format_rational(value)}")
        return value

    def _value(self, i: int) -> Fraction:
        return self.ratio**i

    def limit(self) -> Optional[Fraction]:
        return ONE if self.ratio == ONE else ZERO


class SpeckerSpec(SequenceBase):
    """
    Частичные суммы по конечному перечислению с расписанием раскрытия.

    Элемент e_j раскрывается на шаге reveal_steps[j] (по умолчанию j + 1),
    term_i = сумма 2^{-(e_j + 1)} по всем раскрытым к шагу i элементам.
    """

    kind: Literal["specker"] = "specker"
    enumeration: List[int] = Field(default_factory=list)
    reveal_steps: Optional[List[int]] = None

    @model_validator(mode="after")
    def _check_enumeration(self) -> "SpeckerSpec":
        if any(e < 0 for e in self.enumeration):
            raise ModelInvariantError("Элементы перечисления должны быть неотрицательными")
        if len(set(self.enumeration)) != len(self.enumeration):
            raise ModelInvariantError(
                f"Перечисление содержит повторяющиеся элементы: {self.enumeration}"
            )
        if self.reveal_steps is not None:
            if len(self.reveal_steps) != len(self.enumeration):
                raise ModelInvariantError(
                    "Длина расписания раскрытия не совпадает с длиной перечисления"
                )
            if any(step < 1 for step in self.reveal_steps):
                raise ModelInvariantError("Шаги раскрытия должны быть >= 1")
        return self

    @property
    def steps(self) -> List[int]:
        if self.reveal_steps is not None:
            return list(self.reveal_steps)
        return list(range(1, len(self.enumeration) + 1))

    def mass(self, element: int) -> Fraction:
        return pow2(-(element + 1))

    @cached_property
    def reveal_table(self) -> Tuple[List[int], List[Fraction]]:
        events = sorted(zip(self.steps, self.enumeration))
        reveal = [step for step, _ in events]
        sums = list(accumulate((self.mass(e) for _, e in events), initial=ZERO))
        return reveal, sums

    def _value(self, i: int) -> Fraction:
        reveal, sums = self.reveal_table
        return sums[bisect_right(reveal, i)]

    def limit(self) -> Optional[Fraction]:
        return self.reveal_table[1][-1]


SequenceSpec = Annotated[
    Union[ConstantSpec, TableSpec, AffineReciprocalSpec, RatioSpec, GeometricSpec, SpeckerSpec],
    Field(discriminator="kind"),
]

TableSpec.model_rebuild()

_sequence_adapter = TypeAdapter(SequenceSpec)


def parse_sequence(data) -> SequenceBase:
    """Строит описание последовательности из словаря (или возвращает готовое)."""
    if isinstance(data, SequenceBase):
        return data
    return _sequence_adapter.validate_python(data)
