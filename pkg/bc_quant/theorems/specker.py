"""
Сведение к последовательности Шпеккера.

Если бы оценка phi(m, l) для метастабильной формы теоремы Кохена-Стоуна
была вычислима по самой модели, то g(l) = phi(0, l) была бы скоростью
сходимости частичных сумм q_n = сумма 2^{-(e_j+1)} по раскрытым элементам.
Для конечных перечислений предел известен, поэтому здесь можно показать,
что честная оценка вынуждена следить за расписанием раскрытия.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from loguru import logger

from bc_quant.errors import PreconditionError
from bc_quant.models.sequences import SpeckerSpec, parse_sequence
from bc_quant.numerics.rational import format_rational, pow2, render_decimal
from bc_quant.theorems.certificate import Certificate, TheoremTag, build_certificate

PhiBound = Callable[[int, int], int]


def honest_phi(q_spec: SpeckerSpec) -> PhiBound:
    """
    Наименьшая честная оценка для известного конечного перечисления.

    phi(m, l) = max(m + 1, наименьшее n >= 1 с q - q_n < 2^{-l}).
    Частичные суммы меняются только на шагах раскрытия, поэтому кандидатами
    служат n = 1 и сами шаги.
    """
    q_spec = parse_sequence(q_spec)
    total = q_spec.limit()
    candidates = sorted({1, *q_spec.steps})

    def phi(m: int, l: int) -> int:
        bound = pow2(-l)
        least = next(n for n in candidates if total - q_spec.term(n) < bound)
        return max(m + 1, least)

    return phi


def specker_reduction(q_spec: SpeckerSpec, phi_bound: PhiBound, l: int) -> Fraction:
    """
    Возвращает q_{phi(0, l)}, приближение предела с точностью 2^{-l}.

    Raises:
        PreconditionError: Если phi(0, l) < 1
    """
    index = phi_bound(0, l)
    if index < 1:
        raise PreconditionError(f"phi(0, {l}) = {index}: индекс должен быть >= 1")
    return parse_sequence(q_spec).term(index)


def _heavy_elements(q_spec: SpeckerSpec, l: int) -> List[Dict[str, int]]:
    bound = pow2(-l)
    return [
        {"element": element, "step": step}
        for element, step in zip(q_spec.enumeration, q_spec.steps)
        if q_spec.mass(element) >= bound
    ]


def specker_certificate(q_spec: SpeckerSpec, phi_bound: PhiBound, l: int) -> Certificate:
    """
    Сертифицирует |q - q_{phi(0, l)}| <= 2^{-l} по известному пределу q.

    В trace записываются элементы массы не меньше 2^{-l}: оценка phi(0, l)
    обязана быть не меньше шага раскрытия каждого из них.
    """
    q_spec = parse_sequence(q_spec)
    index = phi_bound(0, l)
    value = specker_reduction(q_spec, phi_bound, l)
    total = q_spec.limit()
    heavy = _heavy_elements(q_spec, l)

    return build_certificate(
        TheoremTag.SPECKER_REDUCTION,
        params={"sequence": q_spec.model_dump(mode="json"), "l": l},
        lhs=pow2(-l),
        rhs=abs(total - value),
        trace={
            "phi_0_l": index,
            "value": format_rational(value),
            "limit": format_rational(total),
            "heavy_elements": heavy,
        },
        hypotheses={"heavy_revealed": all(item["step"] <= index for item in heavy)},
    )


@dataclass
class SpeckerReport:
    """Таблица phi(0, l), приближений и ошибок для l = 1..L."""

    sequence: Dict[str, Any]
    limit: Fraction
    rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def all_within(self) -> bool:
        return all(row["within"] for row in self.rows)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sequence": self.sequence,
            "limit": format_rational(self.limit),
            "rows": self.rows,
        }


def specker_report(
    q_spec: SpeckerSpec, l_max: int, phi_bound: Optional[PhiBound] = None
) -> SpeckerReport:
    """
    Строит отчет для l = 1..l_max.

    Без явной оценки используется честная оценка honest_phi.
    """
    if l_max < 1:
        raise PreconditionError(f"l_max должно быть >= 1, получено {l_max}")
    q_spec = parse_sequence(q_spec)
    phi = phi_bound if phi_bound is not None else honest_phi(q_spec)
    total = q_spec.limit()
    report = SpeckerReport(sequence=q_spec.model_dump(mode="json"), limit=total)

    for l in range(1, l_max + 1):
        index = phi(0, l)
        value = specker_reduction(q_spec, phi, l)
        error = abs(total - value)
        report.rows.append(
            {
                "l": l,
                "phi_0_l": index,
                "value": format_rational(value),
                "error": format_rational(error),
                "error_decimal": render_decimal(error),
                "within": error <= pow2(-l),
            }
        )

    logger.info(f"Отчет Шпеккера построен до l={l_max}, предел {format_rational(total)}")
    return report
