"""
Команды пакетного запуска.

Каждая команда получает проверенную конфигурацию запуска, строит сетку
параметров, вычисляет сертификаты и возвращает код завершения:
0 - все сертификаты pass, 1 - есть fail, 2 - есть undecided (и нет fail).
Ошибки конфигурации и проверки скоростей пробрасываются как исключения
BCQuantError; их отображение в код 3 выполняет main.
"""

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from loguru import logger

from bc_quant.cli.run_config import RunConfig, expand_param
from bc_quant.cli.sweeps import Point, build_grid, run_grid, write_sweep
from bc_quant.errors import ConfigError
from bc_quant.models.events import EventModel
from bc_quant.numerics.rational import ceil_fraction, pow2
from bc_quant.oracle.manifest import generate_manifest, run_manifest
from bc_quant.rates.checks import check_convergence_rate, check_divergence_rate
from bc_quant.theorems import (
    Certificate,
    Verdict,
    bk_tail_check,
    chung_erdos,
    die_tightness,
    erdos_renyi,
    first_bc,
    honest_phi,
    kochen_stone_meta,
    ks_algebra_check,
    ks_tail_estimate,
    ks_tail_threshold,
    ratio_lower_bound,
    second_bc,
    specker_certificate,
    specker_report,
    wn_certificate,
    yan_certificate,
)
from bc_quant.utils.file_utils import load_json, to_json_text, write_file

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_UNDECIDED = 2
EXIT_INVALID = 3


@dataclass
class RunContext:
    """Разрешенные объекты одного запуска, общие для всех точек сетки."""

    run_config: RunConfig
    model: Optional[EventModel] = None
    omega: Any = None
    phi: Any = None
    liminf: Any = None
    g: Any = None
    extras: Dict[str, Any] = field(default_factory=dict)

    @property
    def budget(self) -> Optional[int]:
        return self.run_config.precision_budget


@dataclass(frozen=True)
class TheoremEntry:
    axes: Tuple[str, ...]
    run: Callable[[RunContext, Point], Certificate]
    needs: Tuple[str, ...] = ()
    optional_axes: Tuple[str, ...] = ()


def _ks_tail(ctx: RunContext, p: Point) -> Certificate:
    j = p.get("j")
    if j is None:
        j = ks_tail_threshold(ctx.model, ctx.omega, p["m"], p["l"]) + 1
    return ks_tail_estimate(ctx.model, ctx.omega, p["m"], p["l"], j)


def _kochen_stone(ctx: RunContext, p: Point) -> Certificate:
    certificate, _ = kochen_stone_meta(
        ctx.model, ctx.omega, p["m"], p["l"], ctx.g, exhaustive=ctx.run_config.exhaustive
    )
    return certificate


def _ks_algebra(ctx: RunContext, p: Point) -> Certificate:
    algebra = ctx.run_config.algebra
    if algebra is None:
        raise ConfigError("Для ks-algebra в конфигурации запуска нужен раздел algebra")
    return ks_algebra_check(algebra.a, algebra.b, algebra.alpha, algebra.beta, algebra.epsilon)


def _specker(ctx: RunContext, p: Point) -> Certificate:
    sequence = ctx.extras["specker_sequence"]
    return specker_certificate(sequence, ctx.extras["specker_phi"], p["l"])


THEOREMS: Dict[str, TheoremEntry] = {
    "first-bc": TheoremEntry(
        ("l", "m"), lambda ctx, p: first_bc(ctx.model, ctx.phi, p["l"], p["m"]), ("model", "phi")
    ),
    "second-bc": TheoremEntry(
        ("n", "N"),
        lambda ctx, p: second_bc(ctx.model, ctx.omega, p["n"], p["N"], ctx.budget),
        ("model", "omega"),
    ),
    "erdos-renyi": TheoremEntry(
        ("n", "l"),
        lambda ctx, p: erdos_renyi(ctx.model, ctx.omega, ctx.liminf, p["n"], p["l"]),
        ("model", "omega", "liminf"),
    ),
    "chung-erdos": TheoremEntry(("n",), lambda ctx, p: chung_erdos(ctx.model, p["n"]), ("model",)),
    "ks-tail": TheoremEntry(("m", "l"), _ks_tail, ("model", "omega"), optional_axes=("j",)),
    "kochen-stone": TheoremEntry(("m", "l"), _kochen_stone, ("model", "omega", "g")),
    "yan": TheoremEntry(
        ("n",),
        lambda ctx, p: yan_certificate(
            ctx.model, p["n"], ctx.run_config.tolerance, ctx.run_config.target
        ),
        ("model",),
    ),
    "wn-limit": TheoremEntry(
        ("n",),
        lambda ctx, p: wn_certificate(ctx.model, p["n"], ctx.run_config.tolerance),
        ("model",),
    ),
    "specker": TheoremEntry(("l",), _specker, ("specker",)),
    "ks-algebra": TheoremEntry((), _ks_algebra),
    "ratio-bound": TheoremEntry(
        ("n",), lambda ctx, p: ratio_lower_bound(ctx.model, p["n"]), ("model",)
    ),
    "bk-tail": TheoremEntry(
        ("k", "n"), lambda ctx, p: bk_tail_check(ctx.model, p["k"], p["n"]), ("model",)
    ),
    "die": TheoremEntry(
        ("k", "N"), lambda ctx, p: die_tightness(p["k"], p["N"], precision_budget=ctx.budget)
    ),
}

SWEEP_QUANTITIES: Dict[str, str] = {
    "die": "die",
    "first-bc": "first-bc",
    "second-bc": "second-bc",
    "chung-erdos": "chung-erdos",
    "ratio-bound": "ratio-bound",
    "yan": "yan",
    "wn": "wn-limit",
}


def _lookup(tag: str) -> TheoremEntry:
    entry = THEOREMS.get(tag)
    if entry is None or tag == "die":
        allowed = sorted(set(THEOREMS) - {"die"})
        raise ConfigError(f"Неизвестная теорема {tag!r}, допустимы {allowed}")
    return entry


def build_context(run_config: RunConfig, entry: TheoremEntry) -> RunContext:
    """Разрешает модель и функции скорости, нужные теореме."""
    ctx = RunContext(run_config=run_config)
    rates = run_config.rates
    if "model" in entry.needs:
        ctx.model = run_config.require_model()
    if "omega" in entry.needs:
        ctx.omega = run_config.resolve_omega(ctx.model)
    if "phi" in entry.needs:
        if rates.phi is None:
            raise ConfigError("В конфигурации запуска не задана скорость сходимости phi")
        ctx.phi = rates.phi
    if "liminf" in entry.needs:
        if rates.liminf is None:
            raise ConfigError("В конфигурации запуска не задан свидетель liminf")
        ctx.liminf = rates.liminf.bind(ctx.model)
    if "g" in entry.needs:
        if rates.g is None:
            raise ConfigError("В конфигурации запуска не задана функция g")
        ctx.g = rates.g
    if "specker" in entry.needs:
        if run_config.specker is None:
            raise ConfigError("В конфигурации запуска не задан раздел specker")
        ctx.extras["specker_sequence"] = run_config.specker.sequence
        ctx.extras["specker_phi"] = honest_phi(run_config.specker.sequence)
    return ctx


def _omega_upto(tag: str, ctx: RunContext, points: Sequence[Point]) -> int:
    """Наибольшее N, до которого omega должна быть проверена перед запуском."""
    if tag == "second-bc":
        return max(p["n"] + p["N"] - 1 for p in points)
    if tag == "erdos-renyi":
        return max(2 * p["n"] for p in points)
    # ks-tail и kochen-stone: omega(ceil(2^{l+2} S_m))
    return max(
        max(1, ceil_fraction(pow2(p["l"] + 2) * ctx.model.partial_sum(p["m"]))) for p in points
    )


def validate_rates(tag: str, ctx: RunContext, points: Sequence[Point]) -> None:
    """
    Проверяет функции скорости на нужном диапазоне до запуска теорем.

    Raises:
        RateValidationError: С первым нарушающим аргументом
    """
    if not points:
        return
    if ctx.omega is not None:
        upto = _omega_upto(tag, ctx, points)
        check_divergence_rate(ctx.model, ctx.omega, upto).raise_if_failed(
            f"Скорость расходимости omega (до N={upto})"
        )
    if ctx.phi is not None:
        l_max = max(p["l"] for p in points)
        m_max = max(p["m"] for p in points)
        check_convergence_rate(ctx.model, ctx.phi, l_max, m_max).raise_if_failed(
            "Скорость сходимости phi"
        )


def exit_code(certificates: Sequence[Certificate]) -> int:
    verdicts = {certificate.verdict for certificate in certificates}
    if Verdict.FAIL in verdicts:
        return EXIT_FAIL
    if Verdict.UNDECIDED in verdicts:
        return EXIT_UNDECIDED
    return EXIT_PASS


def emit(text: str, file_path: Optional[Union[str, Path]]) -> None:
    """Пишет результат в файл или, если путь не задан, в stdout."""
    if file_path is None:
        sys.stdout.write(text)
        return
    if not write_file(file_path, text):
        raise ConfigError(f"Не удалось записать результат в {file_path}")
    logger.info(f"Результат записан: {file_path}")


def _grid_axes(run_config: RunConfig, entry: TheoremEntry, overrides: Dict[str, List[int]]):
    axes = {name: overrides.get(name) or run_config.grid_values(name) for name in entry.axes}
    for name in entry.optional_axes:
        if name in overrides or name in run_config.params:
            axes[name] = overrides.get(name) or run_config.grid_values(name)
    return axes


def evaluate(
    run_config: RunConfig, tag: str, overrides: Optional[Dict[str, List[int]]] = None
) -> Tuple[List[Point], List[Certificate]]:
    """Строит сетку, проверяет скорости и вычисляет сертификаты во всех точках."""
    entry = THEOREMS[tag]
    ctx = build_context(run_config, entry)
    points = build_grid(_grid_axes(run_config, entry, overrides or {}))
    validate_rates(tag, ctx, points)
    certificates = run_grid(points, lambda point: entry.run(ctx, point))
    return points, certificates


def cmd_check(run_config: RunConfig, theorem: str, out: Optional[str] = None) -> int:
    """Сертификаты для всех точек сетки одной теоремы."""
    _lookup(theorem)
    logger.info(f"Проверка {theorem}")
    _, certificates = evaluate(run_config, theorem)
    emit(
        to_json_text([certificate.to_dict() for certificate in certificates]),
        out or run_config.output.certificates,
    )

    code = exit_code(certificates)
    passed = sum(certificate.passed for certificate in certificates)
    logger.info(f"{theorem}: {passed} из {len(certificates)} pass, код {code}")
    return code


def cmd_sweep(
    run_config: RunConfig,
    quantity: str,
    axis: str,
    range_text: str,
    out: Optional[str] = None,
) -> int:
    """Таблица CSV по одной оси; остальные параметры берутся из сетки конфигурации."""
    tag = SWEEP_QUANTITIES.get(quantity)
    if tag is None:
        raise ConfigError(
            f"Неизвестная величина обхода {quantity!r}, допустимы {sorted(SWEEP_QUANTITIES)}"
        )
    entry = THEOREMS[tag]
    if axis not in entry.axes + entry.optional_axes:
        raise ConfigError(
            f"Ось {axis!r} недопустима для {quantity}, допустимы {list(entry.axes)}"
        )

    logger.info(f"Обход {quantity} по оси {axis} = {range_text}")
    points, certificates = evaluate(run_config, tag, {axis: expand_param(range_text)})
    target = out or run_config.output.sweep
    text = write_sweep(target, points, certificates)
    if target is None:
        sys.stdout.write(text)
    return exit_code(certificates)


def cmd_specker(run_config: RunConfig, out: Optional[str] = None) -> int:
    """Отчет о росте phi(0, l) и ошибках приближения для l = 1..l_max."""
    if run_config.specker is None:
        raise ConfigError("В конфигурации запуска не задан раздел specker")
    report = specker_report(run_config.specker.sequence, run_config.specker.l_max)
    emit(to_json_text(report.to_dict()), out or run_config.output.report)
    return EXIT_PASS if report.all_within else EXIT_FAIL


def cmd_oracle_diff(run_config: RunConfig, out: Optional[str] = None) -> int:
    """Сверка замкнутых формул с переборным оракулом на манифесте экземпляров."""
    oracle = run_config.oracle
    if oracle.manifest:
        manifest = load_json(oracle.manifest)
        if manifest is None:
            raise ConfigError(f"Не удалось загрузить манифест {oracle.manifest}")
    else:
        manifest = generate_manifest(oracle.seed, oracle.instances)

    discrepancies = run_manifest(manifest)
    report: Dict[str, Any] = {
        "seed": manifest.get("seed"),
        "instances": len(manifest["instances"]),
        "discrepancies": discrepancies,
    }
    emit(to_json_text(report), out or run_config.output.report)
    return EXIT_FAIL if discrepancies else EXIT_PASS
