"""
Модуль утилит и вспомогательных функций.

Содержит функции чтения и записи файлов результатов (сертификаты, таблицы
CSV, манифесты оракула), используемые командами CLI и тестами.
"""

from bc_quant.utils.file_utils import (
    ensure_directory,
    load_json,
    load_structured,
    read_file,
    to_json_text,
    write_csv,
    write_file,
)

__all__ = [
    "ensure_directory",
    "load_json",
    "load_structured",
    "read_file",
    "to_json_text",
    "write_csv",
    "write_file",
]
