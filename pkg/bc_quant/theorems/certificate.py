"""
Сертификаты проверки теорем.

Сертификат связывает параметры одного экземпляра теоремы с точно
вычисленными левой и правой частями неравенства "lhs >= rhs", запасом и
вердиктом. Для неравенств вида "<=" граница записывается в lhs. Все
промежуточные величины сохраняются в trace, чтобы неудачный запуск можно
было разобрать без повторного вычисления.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

import jsonschema
from loguru import logger

from bc_quant.errors import ConfigError
from bc_quant.numerics.enclosure import RatInterval
from bc_quant.numerics.rational import ZERO, format_rational, parse_rational

Side = Union[Fraction, RatInterval]


class TheoremTag(str, Enum):
    """Теги проверяемых утверждений."""

    FIRST_BC = "FirstBC"
    SECOND_BC = "SecondBC"
    ERDOS_RENYI = "ErdosRenyi"
    CHUNG_ERDOS = "ChungErdos"
    KS_TAIL_ESTIMATE = "KSTailEstimate"
    KOCHEN_STONE_META = "KochenStoneMeta"
    YAN_RATIOS = "YanRatios"
    WN_LIMIT = "WnLimit"
    SPECKER_REDUCTION = "SpeckerReduction"
    KS_ALGEBRA = "KSAlgebra"
    RATIO_LOWER_BOUND = "RatioLowerBound"
    BK_TAIL = "BkTail"


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    UNDECIDED = "undecided"


_RATIONAL_PATTERN = r"^-?[0-9]+/[0-9]+$"

CERTIFICATE_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "Certificate",
    "type": "object",
    "definitions": {
        "rational": {"type": "string", "pattern": _RATIONAL_PATTERN},
        "interval": {
            "type": "object",
            "properties": {
                "lo": {"$ref": "#/definitions/rational"},
                "hi": {"$ref": "#/definitions/rational"},
            },
            "required": ["lo", "hi"],
            "additionalProperties": False,
        },
        "side": {
            "oneOf": [{"$ref": "#/definitions/rational"}, {"$ref": "#/definitions/interval"}]
        },
    },
    "properties": {
        "theorem": {"enum": [tag.value for tag in TheoremTag]},
        "params": {"type": "object"},
        "lhs": {"$ref": "#/definitions/side"},
        "rhs": {"$ref": "#/definitions/side"},
        "margin": {"$ref": "#/definitions/rational"},
        "verdict": {"enum": [verdict.value for verdict in Verdict]},
        "trace": {"type": "object"},
    },
    "required": ["theorem", "params", "lhs", "rhs", "margin", "verdict", "trace"],
    "additionalProperties": False,
}


def _bounds(side: Side) -> Tuple[Fraction, Fraction]:
    if isinstance(side, RatInterval):
        return side.lo, side.hi
    return side, side


def side_margin(lhs: Side, rhs: Side) -> Tuple[Fraction, Optional[bool]]:
    """
    Запас неравенства lhs >= rhs и его статус.

    Returns:
        Запас и True (неравенство доказано), False (опровергнуто) или None
        (интервалы перекрываются, решения нет)
    """
    lhs_lo, lhs_hi = _bounds(lhs)
    rhs_lo, rhs_hi = _bounds(rhs)
    if lhs_lo >= rhs_hi:
        return lhs_lo - rhs_hi, True
    if lhs_hi < rhs_lo:
        return lhs_hi - rhs_lo, False
    return lhs_lo - rhs_hi, None


def _side_to_json(side: Side) -> Union[str, Dict[str, str]]:
    if isinstance(side, RatInterval):
        return side.to_dict()
    return format_rational(side)


def _side_from_json(data: Union[str, Dict[str, str]]) -> Side:
    if isinstance(data, dict):
        return RatInterval.from_dict(data)
    return parse_rational(data)


@dataclass
class Certificate:
    """
    Запись об одном экземпляре теоремы.

    Атрибуты:
        theorem: Тег утверждения
        params: Входные параметры (в сериализуемом виде)
        lhs: Левая часть неравенства lhs >= rhs
        rhs: Правая часть
        margin: Запас неравенства (для интервалов - расстояние между концами)
        verdict: pass, fail или undecided
        trace: Промежуточные величины
    """

    theorem: TheoremTag
    params: Dict[str, Any]
    lhs: Side
    rhs: Side
    margin: Fraction
    verdict: Verdict
    trace: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    def to_dict(self) -> Dict[str, Any]:
        """
        Преобразует сертификат в словарь для JSON.

        Returns:
            Dict[str, Any]: Словарь, соответствующий CERTIFICATE_SCHEMA
        """
        return {
            "theorem": self.theorem.value,
            "params": self.params,
            "lhs": _side_to_json(self.lhs),
            "rhs": _side_to_json(self.rhs),
            "margin": format_rational(self.margin),
            "verdict": self.verdict.value,
            "trace": self.trace,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Certificate":
        """
        Создает сертификат из словаря, предварительно проверив его по схеме.

        Raises:
            ConfigError: Если словарь не соответствует схеме
        """
        validate_certificate(data)
        return cls(
            theorem=TheoremTag(data["theorem"]),
            params=data["params"],
            lhs=_side_from_json(data["lhs"]),
            rhs=_side_from_json(data["rhs"]),
            margin=parse_rational(data["margin"]),
            verdict=Verdict(data["verdict"]),
            trace=data["trace"],
        )


def validate_certificate(data: Dict[str, Any]) -> None:
    """
    Проверяет словарь сертификата по JSON-схеме.

    Raises:
        ConfigError: С описанием первого нарушения
    """
    try:
        jsonschema.validate(instance=data, schema=CERTIFICATE_SCHEMA)
    except jsonschema.ValidationError as e:
        path = "/".join(str(part) for part in e.absolute_path) or "<корень>"
        raise ConfigError(f"Сертификат не соответствует схеме ({path}): {e.message}") from e


def build_certificate(
    theorem: TheoremTag,
    params: Dict[str, Any],
    lhs: Side,
    rhs: Side,
    trace: Optional[Dict[str, Any]] = None,
    hypotheses: Optional[Dict[str, bool]] = None,
) -> Certificate:
    """
    Собирает сертификат для неравенства lhs >= rhs.

    Вердикт pass ставится, только если неравенство доказано точными
    концами и все гипотезы выполнены; undecided - если интервалы
    перекрываются, а гипотезы выполнены.
    """
    margin, status = side_margin(lhs, rhs)
    trace = dict(trace or {})
    hypotheses = hypotheses or {}
    if hypotheses:
        trace["hypotheses"] = dict(hypotheses)

    if not all(hypotheses.values()) or status is False:
        verdict = Verdict.FAIL
    elif status is None:
        verdict = Verdict.UNDECIDED
    else:
        verdict = Verdict.PASS

    if verdict != Verdict.PASS:
        logger.debug(f"{theorem.value}: вердикт {verdict.value}, запас {format_rational(margin)}")
    return Certificate(theorem, params, lhs, rhs, margin, verdict, trace)


def undecided_certificate(
    theorem: TheoremTag,
    params: Dict[str, Any],
    lhs: Side,
    rhs: Side,
    trace: Optional[Dict[str, Any]] = None,
) -> Certificate:
    """Сертификат для сравнения, не решенного при максимальной точности."""
    margin, _ = side_margin(lhs, rhs)
    logger.warning(f"{theorem.value}: сравнение не решено, сертификат undecided")
    return Certificate(
        theorem, params, lhs, rhs, margin, Verdict.UNDECIDED, dict(trace or {})
    )


@dataclass
class MetastableWitness:
    """
    Свидетель метастабильной формы теоремы Кохена-Стоуна.

    Атрибуты:
        n: Найденный индекс n > m
        r: Число итераций g до n
        interval_end: g(n)
        per_j_margins: Запасы по j из [n, g(n)] (при поэлементной проверке)
        bound: Оценка g^{(2^{l+1})}(n_0) или None, если она вне диапазона индексов
        method: Способ, которым доказан предикат на окне
        iterates: Все просмотренные n_0, n_1, ..., n_r
    """

    n: int
    r: int
    interval_end: int
    per_j_margins: List[Tuple[int, Fraction]]
    bound: Optional[int]
    method: str
    iterates: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "r": self.r,
            "interval_end": self.interval_end,
            "per_j_margins": [[j, format_rational(m)] for j, m in self.per_j_margins],
            "bound": self.bound,
            "method": self.method,
            "iterates": list(self.iterates),
        }

    @property
    def all_margins_nonnegative(self) -> bool:
        return all(margin >= ZERO for _, margin in self.per_j_margins)
