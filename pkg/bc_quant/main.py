"""
Основной модуль приложения BC Quant.

Этот модуль содержит точку входа командной строки: проверку теорем с
выдачей сертификатов, обходы параметров, демонстрацию сведения к
последовательности Шпеккера и сверку с переборным оракулом.
"""

import argparse
import sys
from typing import List, Optional

from loguru import logger

from bc_quant.cli.commands import (
    EXIT_FAIL,
    EXIT_INVALID,
    SWEEP_QUANTITIES,
    THEOREMS,
    cmd_check,
    cmd_oracle_diff,
    cmd_specker,
    cmd_sweep,
)
from bc_quant.cli.run_config import load_run_config
from bc_quant.config import config, load_config, replace_config, setup_logger
from bc_quant.errors import BCQuantError


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Парсинг аргументов командной строки."""
    parser = argparse.ArgumentParser(
        prog="bc-quant",
        description="Точная проверка количественных лемм Бореля-Кантелли и их обобщений",
    )
    parser.add_argument("--settings", type=str, help="Файл настроек приложения (YAML или JSON)")
    parser.add_argument("--debug", action="store_true", help="Включить режим отладки")

    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="Проверить теорему на сетке параметров")
    check.add_argument("theorem", choices=sorted(set(THEOREMS) - {"die"}))
    check.add_argument("--config", required=True, help="Конфигурация запуска")
    check.add_argument("--out", help="Файл для сертификатов (по умолчанию stdout)")

    sweep = commands.add_parser("sweep", help="Таблица CSV по одной оси параметров")
    sweep.add_argument("quantity", choices=sorted(SWEEP_QUANTITIES))
    sweep.add_argument("--axis", required=True, help="Имя параметра оси")
    sweep.add_argument("--range", required=True, dest="range_text", help="Диапазон a..b")
    sweep.add_argument("--config", required=True, help="Конфигурация запуска")
    sweep.add_argument("--out", help="Файл для таблицы (по умолчанию stdout)")

    specker = commands.add_parser("specker", help="Отчет о сведении к последовательности Шпеккера")
    specker.add_argument("--config", required=True, help="Конфигурация запуска")
    specker.add_argument("--out", help="Файл для отчета (по умолчанию stdout)")

    oracle = commands.add_parser("oracle-diff", help="Сверка замкнутых формул с перебором")
    oracle.add_argument("--config", required=True, help="Конфигурация запуска")
    oracle.add_argument("--out", help="Файл для отчета (по умолчанию stdout)")

    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    """Основная функция приложения."""
    args = parse_args(argv)

    if args.settings:
        replace_config(load_config(args.settings))
    if args.debug:
        config.debug = True
        config.log.level = "DEBUG"
    setup_logger()

    try:
        run_config = load_run_config(args.config)
        if args.command == "check":
            return cmd_check(run_config, args.theorem, args.out)
        if args.command == "sweep":
            return cmd_sweep(run_config, args.quantity, args.axis, args.range_text, args.out)
        if args.command == "specker":
            return cmd_specker(run_config, args.out)
        return cmd_oracle_diff(run_config, args.out)

    except BCQuantError as e:
        logger.error(f"Ошибка конфигурации или проверки: {e}")
        if config.debug:
            logger.exception("Детали ошибки:")
        return EXIT_INVALID
    except Exception as e:
        logger.error(f"Ошибка при выполнении команды {args.command}: {e}")
        if config.debug:
            logger.exception("Детали ошибки:")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
