"""
Утилиты для работы с файлами.

Этот модуль содержит функции для чтения и записи файлов конфигурации
запусков, сертификатов (JSON) и таблиц параметрических обходов (CSV).
JSON всегда пишется с отсортированными ключами и завершающим переводом
строки, чтобы повторные запуски давали побайтно одинаковые файлы.
"""

import csv
import io
import json
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import yaml
from loguru import logger


def read_file(file_path: Union[str, Path], encoding: str = "utf-8") -> str:
    """
    Читает содержимое файла.

    Args:
        file_path: Путь к файлу
        encoding: Кодировка файла (по умолчанию utf-8)

    Returns:
        str: Содержимое файла

    Raises:
        FileNotFoundError: Если файл не найден
    """
    file_path = Path(file_path)

    if not file_path.exists():
        raise FileNotFoundError(f"Файл не найден: {file_path}")

    with open(file_path, "r", encoding=encoding) as f:
        return f.read()


def write_file(
    file_path: Union[str, Path], content: str, encoding: str = "utf-8", create_dirs: bool = True
) -> bool:
    """
    Записывает содержимое в файл.

    Args:
        file_path: Путь к файлу
        content: Содержимое для записи
        encoding: Кодировка файла (по умолчанию utf-8)
        create_dirs: Создавать директории, если они не существуют

    Returns:
        bool: True если операция успешна, иначе False
    """
    file_path = Path(file_path)

    if create_dirs and not ensure_directory(file_path.parent):
        return False

    try:
        # newline="" сохраняет переводы строк как есть на любой платформе
        with open(file_path, "w", encoding=encoding, newline="") as f:
            f.write(content)
        logger.debug(f"Файл записан: {file_path}")
        return True
    except Exception as e:
        logger.error(f"Ошибка при записи файла {file_path}: {e}")
        return False


def to_json_text(data: Union[Dict[str, Any], List[Any]], indent: int = 2) -> str:
    """Сериализует данные в канонический JSON-текст."""
    return json.dumps(data, indent=indent, ensure_ascii=False, sort_keys=True) + "\n"


def load_json(file_path: Union[str, Path], encoding: str = "utf-8") -> Optional[Any]:
    """
    Загружает данные из JSON-файла.

    Args:
        file_path: Путь к файлу
        encoding: Кодировка файла

    Returns:
        Загруженные данные или None в случае ошибки
    """
    try:
        return json.loads(read_file(file_path, encoding))
    except Exception as e:
        logger.error(f"Ошибка при загрузке JSON из файла {file_path}: {e}")
        return None


def load_structured(file_path: Union[str, Path], encoding: str = "utf-8") -> Any:
    """
    Загружает JSON или YAML в зависимости от расширения файла.

    В отличие от load_json ошибки не подавляются: конфигурация запуска
    обязана быть корректной.

    Raises:
        FileNotFoundError: Если файл не найден
        ValueError: Если формат файла не поддерживается
    """
    file_path = Path(file_path)
    content = read_file(file_path, encoding)
    suffix = file_path.suffix.lower()

    if suffix in (".yaml", ".yml"):
        return yaml.safe_load(content)
    if suffix == ".json":
        return json.loads(content)
    raise ValueError(f"Неподдерживаемый формат файла: {suffix}")


def write_csv(
    file_path: Optional[Union[str, Path]],
    header: Sequence[str],
    rows: Sequence[Sequence[Any]],
) -> str:
    """
    Формирует CSV-таблицу и при необходимости сохраняет ее в файл.

    Args:
        file_path: Путь к файлу или None, если нужен только текст
        header: Заголовки столбцов
        rows: Строки таблицы

    Returns:
        str: Текст таблицы
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    text = buffer.getvalue()

    if file_path is not None:
        write_file(file_path, text)
    return text


def ensure_directory(dir_path: Union[str, Path]) -> bool:
    """
    Убеждается, что указанная директория существует.

    Args:
        dir_path: Путь к директории

    Returns:
        bool: True если директория создана или уже существует, иначе False
    """
    try:
        os.makedirs(Path(dir_path), exist_ok=True)
        return True
    except Exception as e:
        logger.error(f"Ошибка при создании директории {dir_path}: {e}")
        return False
