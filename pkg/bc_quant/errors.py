"""
Иерархия исключений пакета.

Каждое исключение наследуется от BCQuantError и от ближайшего встроенного
исключения, чтобы вызывающий код мог перехватывать их привычным образом.
"""

from typing import Any, Optional


class BCQuantError(Exception):
    """Базовое исключение пакета."""


class PreconditionError(BCQuantError, ValueError):
    """Нарушено предусловие операции."""


class ModelInvariantError(BCQuantError, ValueError):
    """Нарушен инвариант модели или последовательности."""


class IndexOverflowError(BCQuantError, OverflowError):
    """Индекс вышел за пределы области определения."""


class CapExceededError(BCQuantError, RuntimeError):
    """Превышен настроенный предел размера вычисления."""


class SearchBudgetExceeded(BCQuantError, RuntimeError):
    """Поиск не завершился в пределах заданного бюджета индексов."""


class UndecidedError(BCQuantError, ArithmeticError):
    """Сравнение не решено при максимальной допустимой точности."""

    def __init__(self, message: str, last_enclosure: Any = None):
        super().__init__(message)
        self.last_enclosure = last_enclosure


class RateValidationError(BCQuantError, ValueError):
    """Функция скорости не прошла проверку на модели."""

    def __init__(self, message: str, first_failure: Optional[Any] = None):
        super().__init__(message)
        self.first_failure = first_failure


class ConfigError(BCQuantError, ValueError):
    """Некорректная конфигурация запуска."""
