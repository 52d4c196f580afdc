"""
Обход сетки параметров и запись таблиц.

Точки сетки вычисляются параллельно в пуле потоков, но результаты всегда
упорядочены по координатам точек, поэтому вывод не зависит от
расписания потоков.
"""

from concurrent.futures import ThreadPoolExecutor
from itertools import product
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar, Union

from loguru import logger

from bc_quant.config import config
from bc_quant.numerics.enclosure import RatInterval
from bc_quant.numerics.rational import ZERO, format_rational, render_decimal
from bc_quant.theorems.certificate import Certificate, Side
from bc_quant.utils.file_utils import write_csv

Point = Dict[str, int]
T = TypeVar("T")


def build_grid(axes: Dict[str, List[int]]) -> List[Point]:
    """Декартово произведение осей, отсортированное по координатам в порядке имен осей."""
    names = sorted(axes)
    points = [dict(zip(names, values)) for values in product(*(axes[name] for name in names))]
    return sorted(points, key=lambda point: tuple(point[name] for name in names))


def run_grid(
    points: Sequence[Point], task: Callable[[Point], T], workers: Optional[int] = None
) -> List[T]:
    """
    Вычисляет task во всех точках.

    Исключение в любой точке пробрасывается вызывающему.
    """
    workers = workers or config.runner.workers
    logger.debug(f"Обход {len(points)} точек в {workers} потоках")
    if workers == 1 or len(points) <= 1:
        return [task(point) for point in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, points))


def _side_text(side: Side) -> Tuple[str, str]:
    if isinstance(side, RatInterval):
        return (
            f"[{format_rational(side.lo)}, {format_rational(side.hi)}]",
            f"[{render_decimal(side.lo)}, {render_decimal(side.hi)}]",
        )
    return format_rational(side), render_decimal(side)


def _margin_sign(margin) -> str:
    if margin > ZERO:
        return "+"
    if margin < ZERO:
        return "-"
    return "0"


SWEEP_COLUMNS = [
    "lhs",
    "lhs_decimal",
    "rhs",
    "rhs_decimal",
    "margin",
    "margin_decimal",
    "margin_sign",
    "verdict",
]


def sweep_rows(
    points: Sequence[Point], certificates: Sequence[Certificate]
) -> Tuple[List[str], List[List[Any]]]:
    """Строки таблицы: координаты точки, точные и десятичные стороны, запас и вердикт."""
    names = sorted(points[0]) if points else []
    rows: List[List[Any]] = []
    for point, certificate in zip(points, certificates):
        lhs, lhs_decimal = _side_text(certificate.lhs)
        rhs, rhs_decimal = _side_text(certificate.rhs)
        rows.append(
            [point[name] for name in names]
            + [
                lhs,
                lhs_decimal,
                rhs,
                rhs_decimal,
                format_rational(certificate.margin),
                render_decimal(certificate.margin),
                _margin_sign(certificate.margin),
                certificate.verdict.value,
            ]
        )
    return names + SWEEP_COLUMNS, rows


def write_sweep(
    file_path: Optional[Union[str, Path]],
    points: Sequence[Point],
    certificates: Sequence[Certificate],
) -> str:
    """Формирует CSV обхода и сохраняет его, если задан путь."""
    header, rows = sweep_rows(points, certificates)
    text = write_csv(file_path, header, rows)
    if file_path is not None:
        logger.info(f"Таблица обхода записана: {file_path}")
    return text
