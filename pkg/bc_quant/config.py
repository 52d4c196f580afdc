"""
Модуль конфигурации проекта.

Этот модуль содержит классы и функции для работы с настройками приложения,
включая загрузку параметров из файлов, переменных окружения и их валидацию.
"""

import json
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from loguru import logger
from pydantic import BaseModel, Field

# Префикс переменных окружения: BCQ_<СЕКЦИЯ>_<КЛЮЧ>=значение
ENV_PREFIX = "BCQ_"


class LogConfig(BaseModel):
    """Конфигурация логирования."""

    level: str = Field(default="INFO", description="Уровень логирования")
    format: str = Field(
        default="{time:YYYY-MM-DD HH:mm:ss} | {level} | {message}",
        description="Формат сообщений лога",
    )
    file: Optional[str] = Field(default=None, description="Путь к файлу лога")


class PrecisionConfig(BaseModel):
    """Конфигурация точности рациональных оценок трансцендентных констант."""

    budget: int = Field(default=512, ge=1, description="Максимальная точность уточнения (бит)")
    start: int = Field(default=8, ge=1, description="Начальная точность уточнения (бит)")
    guard_bits: int = Field(
        default=4, ge=0, description="Запасные биты при усечении ряда Тейлора"
    )


class ModelsConfig(BaseModel):
    """Конфигурация моделей событий."""

    count_cap: int = Field(
        default=4096, ge=1, description="Максимальное n для распределения числа событий"
    )
    max_index: int = Field(
        default=2**63 - 1, ge=1, description="Максимально допустимое значение индекса"
    )


class SearchConfig(BaseModel):
    """Конфигурация бюджетов поиска."""

    index_budget: int = Field(
        default=1_000_000, ge=1, description="Бюджет индексов при выводе скорости расходимости"
    )
    liminf_budget: int = Field(
        default=1_000_000, ge=1, description="Бюджет индексов при поиске свидетеля liminf"
    )
    margin_window_cap: int = Field(
        default=64,
        ge=0,
        description="Наибольшее окно [n, g(n)], для которого запасы по j пишутся всегда",
    )


class RunnerConfig(BaseModel):
    """Конфигурация пакетного запуска."""

    workers: int = Field(default=4, ge=1, description="Число потоков при обходе сетки")


class AppConfig(BaseModel):
    """Основная конфигурация приложения."""

    log: LogConfig = Field(default_factory=LogConfig)
    precision: PrecisionConfig = Field(default_factory=PrecisionConfig)
    models: ModelsConfig = Field(default_factory=ModelsConfig)
    search: SearchConfig = Field(default_factory=SearchConfig)
    runner: RunnerConfig = Field(default_factory=RunnerConfig)
    debug: bool = Field(default=False, description="Режим отладки")


def _apply_env_overrides(config_dict: Dict[str, Any]) -> Dict[str, Any]:
    """
    Применяет переопределения из переменных окружения.

    Имя переменной разбивается по первому символу '_' после префикса:
    BCQ_PRECISION_BUDGET задает precision.budget, BCQ_MODELS_COUNT_CAP
    задает models.count_cap, а BCQ_DEBUG задает ключ верхнего уровня.
    """
    for env_name, env_value in os.environ.items():
        if not env_name.startswith(ENV_PREFIX):
            continue

        section, _, key = env_name[len(ENV_PREFIX) :].lower().partition("_")
        if not key:
            config_dict[section] = env_value
            continue

        current = config_dict.setdefault(section, {})
        if not isinstance(current, dict):
            logger.warning(f"Переменная {env_name} конфликтует с ключом '{section}'")
            continue
        current[key] = env_value

    return config_dict


def load_config(config_path: Optional[str] = None) -> AppConfig:
    """
    Загружает конфигурацию из файла и/или переменных окружения.

    Args:
        config_path: Путь к файлу конфигурации (YAML или JSON)

    Returns:
        AppConfig: Объект конфигурации
    """
    config_dict: Dict[str, Any] = {}

    if config_path:
        path = Path(config_path)
        if path.exists():
            try:
                if path.suffix.lower() in (".yaml", ".yml"):
                    with open(path, "r", encoding="utf-8") as f:
                        config_dict = yaml.safe_load(f) or {}
                elif path.suffix.lower() == ".json":
                    with open(path, "r", encoding="utf-8") as f:
                        config_dict = json.load(f)
                else:
                    logger.warning(f"Неподдерживаемый формат файла: {path.suffix}")
            except Exception as e:
                logger.error(f"Ошибка при загрузке конфигурации из {path}: {e}")
        else:
            logger.warning(f"Файл конфигурации не найден: {path}")

    return AppConfig(**_apply_env_overrides(config_dict))


# Глобальный экземпляр конфигурации
config = load_config()


def replace_config(new_config: AppConfig) -> None:
    """
    Заменяет содержимое глобальной конфигурации на месте.

    Модули импортируют объект config напрямую, поэтому подмена выполняется
    по секциям, а не присваиванием новой ссылки.
    """
    for field_name in AppConfig.model_fields:
        setattr(config, field_name, getattr(new_config, field_name))


def setup_logger() -> None:
    """Настраивает логирование согласно конфигурации."""
    logger.remove()

    # stdout занят выводом команд, поэтому лог пишется в stderr
    logger.add(sink=sys.stderr, level=config.log.level, format=config.log.format)

    if config.log.file:
        logger.add(
            sink=config.log.file,
            level=config.log.level,
            format=config.log.format,
            rotation="10 MB",
            compression="zip",
        )
