"""
Количественная теорема Кохена-Стоуна и связанные с ней утверждения.

Сюда входят неравенство Чанга-Эрдёша, хвостовая оценка отношения
a_j / b_j, метастабильная форма теоремы с итерацией функции g,
алгебраическая лемма без квадратных корней, а также отношения Яна и
статистики u_n, v_n, w_n для вложенных интервалов.
"""

from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

from loguru import logger

from bc_quant.config import config
from bc_quant.errors import IndexOverflowError, PreconditionError
from bc_quant.models.events import EventModel, NestedIntervals
from bc_quant.numerics.rational import (
    ONE,
    ZERO,
    ceil_fraction,
    format_rational,
    parse_rational,
    pow2,
)
from bc_quant.rates.checks import check_divergence_rate
from bc_quant.rates.functions import describe_rate, iterate_g
from bc_quant.theorems.certificate import (
    Certificate,
    MetastableWitness,
    TheoremTag,
    Verdict,
    build_certificate,
)


def _ks_ratio(model: EventModel, j: int) -> Fraction:
    """a_j / b_j; при b_j = 0 все события первых j пусты и отношение считается нулем."""
    stats = model.sum_stats(j)
    if stats.b == ZERO:
        return ZERO
    return stats.a / stats.b


def chung_erdos(model: EventModel, n: int) -> Certificate:
    """
    Неравенство Чанга-Эрдёша: P[объединение A_1..A_n] >= a_n / b_n.

    Raises:
        PreconditionError: Если b_n = 0
    """
    stats = model.sum_stats(n)
    if stats.b == ZERO:
        raise PreconditionError(f"Все вероятности первых {n} событий равны нулю")

    return build_certificate(
        TheoremTag.CHUNG_ERDOS,
        params={"model": model.to_dict(), "n": n},
        lhs=model.union_prob(1, n),
        rhs=stats.a / stats.b,
        trace={"sum_stats": stats.to_dict()},
    )


def _scaled_omega_argument(model: EventModel, m: int, scale: Fraction) -> int:
    return max(1, ceil_fraction(scale * model.partial_sum(m)))


def ks_tail_threshold(model: EventModel, omega, m: int, l: int) -> int:
    """Порог max(omega(ceil(2 * S_m * 2^{l+1})), m) для хвостовой оценки при eps = 2^{-(l+1)}."""
    argument = _scaled_omega_argument(model, m, 2 * pow2(l + 1))
    return max(omega(argument), m)


def ks_tail_estimate(model: EventModel, omega, m: int, l: int, j: int) -> Certificate:
    """
    Хвостовая оценка: P[объединение A_{m+1}..A_j] + 2^{-(l+1)} >= a_j / b_j.

    Raises:
        PreconditionError: Если j не превосходит порога
    """
    if m < 1 or l < 0:
        raise PreconditionError(f"Требуется m >= 1 и l >= 0, получено m={m}, l={l}")
    threshold = ks_tail_threshold(model, omega, m, l)
    if j <= threshold:
        raise PreconditionError(f"Требуется j > {threshold}, получено j={j}")

    argument = _scaled_omega_argument(model, m, 2 * pow2(l + 1))
    epsilon = pow2(-(l + 1))
    union = model.union_prob(m + 1, j)
    return build_certificate(
        TheoremTag.KS_TAIL_ESTIMATE,
        params={
            "model": model.to_dict(),
            "omega": describe_rate(omega),
            "m": m,
            "l": l,
            "j": j,
        },
        lhs=union + epsilon,
        rhs=_ks_ratio(model, j),
        trace={"threshold": threshold, "union": format_rational(union)},
        hypotheses={"omega_valid": check_divergence_rate(model, omega, argument).passed},
    )


def _window_margins(
    model: EventModel, level: Fraction, n: int, end: int
) -> List[Tuple[int, Fraction]]:
    if end - n + 1 > config.search.margin_window_cap:
        return []
    return [(j, level - _ks_ratio(model, j)) for j in range(n, end + 1)]


def _window_check(
    model: EventModel, level: Fraction, n: int, end: int, exhaustive: bool
) -> Tuple[Optional[str], List[Tuple[int, Fraction]], Fraction]:
    """
    Проверяет level >= a_j / b_j для всех j из [n, end].

    Оценки сверху избавляют от перебора окна; запасы по j при этом все
    равно записываются, если длина окна не превосходит
    search.margin_window_cap.

    Returns:
        Способ доказательства (или None), запасы по j и проверенная верхняя
        граница отношений на окне
    """
    if not exhaustive:
        # a_j <= b_j при любом j
        if level >= ONE:
            return "ratio_at_most_one", _window_margins(model, level, n, end), ONE
        # a_j / b_j <= P[объединение до j] <= P[объединение до end]
        envelope = model.union_prob(1, end)
        if level >= envelope:
            return "chung_erdos_envelope", _window_margins(model, level, n, end), envelope

    margins: List[Tuple[int, Fraction]] = []
    worst = ZERO
    for j in range(n, end + 1):
        ratio = _ks_ratio(model, j)
        worst = max(worst, ratio)
        margins.append((j, level - ratio))
        if ratio > level:
            return None, margins, worst
    return "per_j", margins, worst


def kochen_stone_meta(
    model: EventModel, omega, m: int, l: int, g, exhaustive: bool = False
) -> Tuple[Certificate, Optional[MetastableWitness]]:
    """
    Метастабильная форма теоремы Кохена-Стоуна.

    Итерирует n_0 = max(omega(max(1, ceil(2^{l+2} S_m))), m + 1),
    n_{r+1} = g(n_r) и возвращает первый n_r, для которого при всех
    j из [n_r, g(n_r)] выполнено P[объединение A_{m+1}..A_{n_r}] + 2^{-l} >= a_j / b_j.
    Найденный номер итерации r не превосходит 2^{l+1}.

    Args:
        model: Модель событий
        omega: Скорость расходимости
        m: Левая граница объединения (m >= 1)
        l: Точность
        g: Функция g с g(i) > i
        exhaustive: Проверять каждое j, не пользуясь оценками сверху

    Returns:
        Сертификат и свидетель (None, если свидетель не найден)
    """
    if m < 1 or l < 0:
        raise PreconditionError(f"Требуется m >= 1 и l >= 0, получено m={m}, l={l}")

    argument = _scaled_omega_argument(model, m, pow2(l + 2))
    omega_valid = check_divergence_rate(model, omega, argument).passed
    start = max(omega(argument), m + 1)
    max_rounds = 2 ** (l + 1)
    slack = pow2(-l)

    try:
        bound: Optional[int] = iterate_g(g, max_rounds, start)
    except IndexOverflowError:
        logger.debug(f"Оценка g^(2^{l + 1})({start}) выходит за максимальный индекс")
        bound = None

    params: Dict[str, Any] = {
        "model": model.to_dict(),
        "omega": describe_rate(omega),
        "g": describe_rate(g),
        "m": m,
        "l": l,
        "exhaustive": exhaustive,
    }
    trace: Dict[str, Any] = {"n0": start, "bound": bound, "omega_argument": argument}

    iterates: List[int] = []
    current = start
    level = ZERO
    worst = ZERO
    for r in range(max_rounds + 1):
        iterates.append(current)
        end = g(current)
        level = model.union_prob(m + 1, current) + slack
        method, margins, worst = _window_check(model, level, current, end, exhaustive)
        if method is not None:
            witness = MetastableWitness(
                n=current,
                r=r,
                interval_end=end,
                per_j_margins=margins,
                bound=bound,
                method=method,
                iterates=iterates,
            )
            trace["witness"] = witness.to_dict()
            logger.debug(f"Кохен-Стоун: свидетель n={current} на итерации r={r} ({method})")
            hypotheses = {
                "omega_valid": omega_valid,
                "r_within_bound": r <= max_rounds,
                "n_exceeds_m": current > m,
                "n_within_bound": bound is None or current <= bound,
                "margins_nonnegative": witness.all_margins_nonnegative,
            }
            certificate = build_certificate(
                TheoremTag.KOCHEN_STONE_META,
                params,
                lhs=level,
                rhs=worst,
                trace=trace,
                hypotheses=hypotheses,
            )
            return certificate, witness
        if r < max_rounds:
            current = end

    logger.error(f"Кохен-Стоун: свидетель не найден за {max_rounds} итераций g (m={m}, l={l})")
    trace["iterates"] = iterates
    trace["hypotheses"] = {"omega_valid": omega_valid}
    certificate = Certificate(
        TheoremTag.KOCHEN_STONE_META, params, level, worst, level - worst, Verdict.FAIL, trace
    )
    return certificate, None


def remark_bound(omega, g, m: int, l: int) -> Optional[int]:
    """
    Оценка g^{(2^{l+1})}(omega(2^{l+2} m)), не зависящая от самих событий.

    Returns:
        Индекс или None, если он превышает максимальный индекс
    """
    if m < 1 or l < 0:
        raise PreconditionError(f"Требуется m >= 1 и l >= 0, получено m={m}, l={l}")
    try:
        return iterate_g(g, 2 ** (l + 1), omega(2 ** (l + 2) * m))
    except IndexOverflowError:
        return None


def ks_algebra_check(a, b, alpha, beta, epsilon) -> Certificate:
    """
    Алгебраическая лемма: при b >= 4 alpha / eps^2 выполнено
    (sqrt(a) - sqrt(alpha))^2 / (b - beta) + eps >= a / b.

    Квадратные корни не вычисляются: достаточно (eps * b)^2 >= 4 alpha a,
    откуда 2 sqrt(alpha a) <= eps b.

    Raises:
        PreconditionError: Со списком всех нарушенных условий
    """
    a, b, alpha, beta, epsilon = (parse_rational(x) for x in (a, b, alpha, beta, epsilon))

    violations: List[str] = []
    if not ZERO < a <= b:
        violations.append(f"0 < a <= b (a={format_rational(a)}, b={format_rational(b)})")
    if not ZERO <= alpha < a:
        violations.append(f"0 <= alpha < a (alpha={format_rational(alpha)})")
    if not ZERO <= beta < b:
        violations.append(f"0 <= beta < b (beta={format_rational(beta)})")
    if not epsilon > ZERO:
        violations.append(f"eps > 0 (eps={format_rational(epsilon)})")
    if not violations and b < 4 * alpha / (epsilon * epsilon):
        violations.append(
            f"b >= 4 alpha / eps^2 (порог {format_rational(4 * alpha / (epsilon * epsilon))})"
        )
    if violations:
        raise PreconditionError("Нарушены условия леммы: " + "; ".join(violations))

    cross = 4 * alpha * a
    return build_certificate(
        TheoremTag.KS_ALGEBRA,
        params={
            "a": format_rational(a),
            "b": format_rational(b),
            "alpha": format_rational(alpha),
            "beta": format_rational(beta),
            "epsilon": format_rational(epsilon),
        },
        lhs=(epsilon * b) ** 2,
        rhs=cross,
        trace={"threshold": format_rational(4 * alpha / (epsilon * epsilon))},
        hypotheses={"cross_nonnegative": cross >= ZERO},
    )


# --- отношения Яна и статистики w_n ---


def yan_ratios(model: EventModel, n: int) -> Tuple[Fraction, Fraction]:
    """
    Полное отношение a_n / b_n и отношение без диагональных членов.

    Raises:
        PreconditionError: Если n < 2 или знаменатели равны нулю
    """
    if n < 2:
        raise PreconditionError(f"Внедиагональные суммы пусты при n={n} < 2")
    stats = model.sum_stats(n)
    if stats.b == ZERO or stats.off_diag_joint == ZERO:
        raise PreconditionError(f"Знаменатели отношений Яна равны нулю при n={n}")
    return stats.a / stats.b, stats.off_diag_prod / stats.off_diag_joint


def _tolerance_certificate(
    theorem: TheoremTag,
    params: Dict[str, Any],
    tolerance,
    deviation: Fraction,
    trace: Dict[str, Any],
) -> Certificate:
    return build_certificate(
        theorem, params, lhs=parse_rational(tolerance), rhs=deviation, trace=trace
    )


def yan_certificate(
    model: EventModel, n: int, tolerance, target: Optional[Fraction] = None
) -> Certificate:
    """
    Сертифицирует |full - off_diag| <= tolerance.

    Если задан target, вместо этого сертифицируется |full - target| <= tolerance.
    """
    full, off_diag = yan_ratios(model, n)
    reference = off_diag if target is None else parse_rational(target)
    params: Dict[str, Any] = {
        "model": model.to_dict(),
        "n": n,
        "tolerance": format_rational(parse_rational(tolerance)),
    }
    if target is not None:
        params["target"] = format_rational(reference)
    return _tolerance_certificate(
        TheoremTag.YAN_RATIOS,
        params,
        tolerance,
        abs(full - reference),
        {"full": format_rational(full), "off_diag": format_rational(off_diag)},
    )


class WnStats(NamedTuple):
    u: Fraction
    v: Fraction
    w: Fraction


def wn_stats(model: NestedIntervals, n: int) -> WnStats:
    """
    u_n = сумма q_i q_k по i < k <= n, v_n = сумма (n - i) q_i по i < n, w_n = u_n / v_n.

    Raises:
        PreconditionError: Если модель не вложенная, n < 2 или v_n = 0
    """
    if not isinstance(model, NestedIntervals):
        raise PreconditionError(
            f"Статистики w_n определены для вложенных интервалов, получено {model.kind}"
        )
    if n < 2:
        raise PreconditionError(f"Требуется n >= 2, получено {n}")

    u = ZERO
    v = ZERO
    running = ZERO
    for k in range(1, n + 1):
        q_k = model.prob(k)
        u += q_k * running
        running += q_k
        if k < n:
            v += (n - k) * q_k
    if v == ZERO:
        raise PreconditionError(f"v_{n} = 0: первые вероятности нулевые")
    return WnStats(u=u, v=v, w=u / v)


def wn_certificate(model: NestedIntervals, n: int, tolerance) -> Certificate:
    """
    Сертифицирует |w_n - q| <= tolerance, где q - предел последовательности.

    Raises:
        PreconditionError: Если у последовательности нет известного предела
    """
    limit = model.sequence.limit()
    if limit is None:
        raise PreconditionError(f"Предел последовательности {model.sequence.kind} неизвестен")
    stats = wn_stats(model, n)
    return _tolerance_certificate(
        TheoremTag.WN_LIMIT,
        params={
            "model": model.to_dict(),
            "n": n,
            "tolerance": format_rational(parse_rational(tolerance)),
        },
        tolerance=tolerance,
        deviation=abs(stats.w - limit),
        trace={
            "u": format_rational(stats.u),
            "v": format_rational(stats.v),
            "w": format_rational(stats.w),
            "limit": format_rational(limit),
        },
    )
