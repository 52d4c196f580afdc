"""
Конфигурация запуска командной строки.

Файл запуска (JSON или YAML) описывает модель событий, функции скорости,
сетку параметров и пути вывода. Значение параметра сетки задается целым,
списком целых или диапазоном "a..b" (концы включаются).
"""

from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

import yaml
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from bc_quant.errors import ConfigError
from bc_quant.models.events import EventModel, build_model
from bc_quant.models.sequences import SequenceSpec, SpeckerSpec
from bc_quant.numerics.rational import RationalField
from bc_quant.rates.checks import derive_divergence_rate
from bc_quant.rates.functions import (
    CeilDivOmega,
    ConvergenceRate,
    GFunction,
    LiminfWitness,
    LinearOmega,
    TableOmega,
)
from bc_quant.utils.file_utils import load_structured

ParamValue = Union[int, List[int], str]


def expand_param(value: ParamValue) -> List[int]:
    """
    Раскрывает значение параметра сетки в список целых.

    Raises:
        ConfigError: Если запись не является целым, списком или диапазоном "a..b"
    """
    if isinstance(value, bool):
        raise ConfigError(f"Некорректное значение параметра: {value!r}")
    if isinstance(value, int):
        return [value]
    if isinstance(value, list):
        return list(value)

    low, sep, high = value.partition("..")
    try:
        if not sep:
            return [int(value)]
        start, end = int(low), int(high)
    except ValueError as e:
        raise ConfigError(f"Некорректный диапазон параметра: {value!r}") from e
    if end < start:
        raise ConfigError(f"Пустой диапазон параметра: {value!r}")
    return list(range(start, end + 1))


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ModelSection(_Section):
    """Вид модели и описание последовательности вероятностей."""

    kind: Literal["nested", "independent", "exclusive"]
    sequence: SequenceSpec

    def build(self) -> EventModel:
        return build_model(self.kind, self.sequence)


class DerivedOmega(_Section):
    """Наименьшая скорость расходимости, выводимая по модели до n_max."""

    kind: Literal["derived"] = "derived"
    n_max: int = Field(ge=1)


OmegaSection = Annotated[
    Union[LinearOmega, CeilDivOmega, TableOmega, DerivedOmega], Field(discriminator="kind")
]


class RatesSection(_Section):
    omega: Optional[OmegaSection] = None
    phi: Optional[ConvergenceRate] = None
    liminf: Optional[LiminfWitness] = None
    g: Optional[GFunction] = None


class AlgebraSection(_Section):
    a: RationalField
    b: RationalField
    alpha: RationalField
    beta: RationalField
    epsilon: RationalField


class SpeckerSection(_Section):
    sequence: SpeckerSpec = Field(default_factory=SpeckerSpec)
    l_max: int = Field(default=10, ge=1)


class OracleSection(_Section):
    seed: int = 0
    instances: int = Field(default=300, ge=1)
    manifest: Optional[str] = None


class OutputSection(_Section):
    certificates: Optional[str] = None
    sweep: Optional[str] = None
    report: Optional[str] = None


class RunConfig(_Section):
    """Полная конфигурация одного запуска."""

    model: Optional[ModelSection] = None
    rates: RatesSection = Field(default_factory=RatesSection)
    params: Dict[str, ParamValue] = Field(default_factory=dict)
    tolerance: RationalField = Fraction(1, 50)
    target: Optional[RationalField] = None
    exhaustive: bool = False
    algebra: Optional[AlgebraSection] = None
    specker: Optional[SpeckerSection] = None
    oracle: OracleSection = Field(default_factory=OracleSection)
    output: OutputSection = Field(default_factory=OutputSection)
    precision_budget: Optional[int] = Field(default=None, ge=1)

    @field_validator("params")
    @classmethod
    def _check_params(cls, params: Dict[str, ParamValue]) -> Dict[str, ParamValue]:
        for name, value in params.items():
            try:
                expand_param(value)
            except ConfigError as e:
                raise ValueError(f"{name}: {e}") from e
        return params

    def grid_values(self, name: str) -> List[int]:
        """
        Значения параметра сетки.

        Raises:
            ConfigError: Если параметр не задан
        """
        if name not in self.params:
            raise ConfigError(f"В конфигурации запуска не задан параметр '{name}'")
        return expand_param(self.params[name])

    def require_model(self) -> EventModel:
        if self.model is None:
            raise ConfigError("В конфигурации запуска не задана модель")
        return self.model.build()

    def resolve_omega(self, model: EventModel):
        """Скорость расходимости из конфигурации; вариант "derived" выводится по модели."""
        omega = self.rates.omega
        if omega is None:
            raise ConfigError("В конфигурации запуска не задана скорость расходимости omega")
        if isinstance(omega, DerivedOmega):
            return derive_divergence_rate(model, omega.n_max)
        return omega


def parse_run_config(data: Dict[str, Any]) -> RunConfig:
    """
    Проверяет словарь конфигурации запуска.

    Raises:
        ConfigError: С описанием первой ошибки
    """
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "<корень>"
        raise ConfigError(f"Ошибка в конфигурации запуска ({location}): {first['msg']}") from e


def load_run_config(file_path: Union[str, Path]) -> RunConfig:
    """
    Загружает конфигурацию запуска из JSON или YAML.

    Raises:
        ConfigError: Если файл не найден или содержит ошибки
    """
    path = Path(file_path)
    if not path.exists():
        raise ConfigError(f"Файл конфигурации запуска не найден: {path}")
    try:
        data = load_structured(path)
    except (ValueError, yaml.YAMLError) as e:
        raise ConfigError(f"Не удалось прочитать конфигурацию запуска {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"Конфигурация запуска {path} должна быть объектом")
    logger.debug(f"Загружена конфигурация запуска: {path}")
    return parse_run_config(data)
