"""
Количественная теорема Эрдёша-Реньи и ее вспомогательные шаги.

Здесь же проверяются нижняя оценка отношения b_n / a_n >= 1 через моменты
числа событий eta_n и шаг Чебышёва для событий B_k = {eta <= M(eta)/2}.
"""

from typing import Any, Dict, List

from loguru import logger

from bc_quant.errors import CapExceededError, PreconditionError
from bc_quant.models.events import EventModel
from bc_quant.numerics.rational import ONE, ZERO, format_rational, pow2
from bc_quant.rates.checks import check_divergence_rate, verify_liminf_value
from bc_quant.rates.functions import describe_rate
from bc_quant.theorems.certificate import Certificate, TheoremTag, build_certificate


def ratio_lower_bound(model: EventModel, n: int) -> Certificate:
    """
    Сертифицирует b_n >= a_n.

    Дополнительно сверяет b_n / a_n с M(eta_n^2) / M^2(eta_n) по точному
    распределению числа событий, если оно доступно в пределах ограничения.

    Raises:
        PreconditionError: Если сумма первых n вероятностей равна нулю
    """
    stats = model.sum_stats(n)
    if stats.s == ZERO:
        raise PreconditionError(f"Сумма первых {n} вероятностей равна нулю")

    trace: Dict[str, Any] = {"s": format_rational(stats.s)}
    hypotheses: Dict[str, bool] = {}
    try:
        dist = model.count_distribution(n)
        moment_ratio = dist.second_moment / (dist.mean * dist.mean)
        hypotheses["moments_agree"] = moment_ratio == stats.ratio
        trace["moment_ratio"] = format_rational(moment_ratio)
    except CapExceededError as e:
        logger.warning(f"Сверка с моментами пропущена: {e}")
        trace["moment_ratio"] = None

    return build_certificate(
        TheoremTag.RATIO_LOWER_BOUND,
        params={"model": model.to_dict(), "n": n},
        lhs=stats.b,
        rhs=stats.a,
        trace=trace,
        hypotheses=hypotheses,
    )


def bk_tail_check(model: EventModel, k: int, n_k: int) -> Certificate:
    """
    Шаг Чебышёва для события B_k = {eta_{n_k} <= M/2}.

    Сертифицирует P[B_k] <= 4 D^2 / M^2 (неравенство Чебышёва с eps = 1/2),
    а если D^2 / M^2 <= 2^{-k}, то и P[B_k] <= 2^{-(k-2)}.

    Raises:
        PreconditionError: Если M(eta) = 0
        CapExceededError: Если распределение слишком велико
    """
    dist = model.count_distribution(n_k)
    mean = dist.mean
    if mean == ZERO:
        raise PreconditionError(f"Среднее числа событий при n={n_k} равно нулю")

    tail = dist.prob_at_most(mean / 2)
    relative_variance = dist.variance / (mean * mean)
    chebyshev = 4 * relative_variance

    hypotheses: Dict[str, bool] = {}
    geometric_applies = relative_variance <= pow2(-k)
    if geometric_applies:
        hypotheses["geometric_tail"] = tail <= pow2(-(k - 2))

    return build_certificate(
        TheoremTag.BK_TAIL,
        params={"model": model.to_dict(), "k": k, "n_k": n_k},
        lhs=chebyshev,
        rhs=tail,
        trace={
            "mean": format_rational(mean),
            "variance": format_rational(dist.variance),
            "relative_variance": format_rational(relative_variance),
            "geometric_applies": geometric_applies,
        },
        hypotheses=hypotheses,
    )


def erdos_renyi_chain(model: EventModel, phi, m: int) -> List[int]:
    """
    Цепочка n_1 = phi(1, 1), n_k = phi(k, max(n_{k-1}, k)) для k <= m.

    Каждое звено проверяется на свойство свидетеля liminf.

    Raises:
        RateValidationError: Если звено не является свидетелем
    """
    chain: List[int] = []
    previous = 1
    for k in range(1, m + 1):
        start = 1 if k == 1 else max(previous, k)
        value = phi(k, start)
        verify_liminf_value(model, k, start, value)
        chain.append(value)
        previous = value
    return chain


def erdos_renyi(model: EventModel, omega, witness, n: int, l: int) -> Certificate:
    """
    Количественная теорема Эрдёша-Реньи.

    При m = max(omega(2n), l + 3) сертифицирует
    P[объединение A_i по i от n до n_m] >= 1 - 2^{-l}.

    Args:
        model: Модель событий
        omega: Скорость расходимости
        witness: Свидетель liminf (описание с методом bind или функция (l, n) -> индекс)
        n: Начало окна
        l: Точность
    """
    if n < 1 or l < 0:
        raise PreconditionError(f"Требуется n >= 1 и l >= 0, получено n={n}, l={l}")

    phi = witness.bind(model) if hasattr(witness, "bind") else witness
    omega_valid = check_divergence_rate(model, omega, 2 * n).passed
    m = max(omega(2 * n), l + 3)
    chain = erdos_renyi_chain(model, phi, m)
    end = chain[-1]
    union = model.union_prob(n, end) if end >= n else ZERO

    logger.debug(f"Эрдёш-Реньи: n={n}, l={l}, m={m}, n_m={end}")
    return build_certificate(
        TheoremTag.ERDOS_RENYI,
        params={
            "model": model.to_dict(),
            "omega": describe_rate(omega),
            "liminf": describe_rate(phi),
            "n": n,
            "l": l,
        },
        lhs=union,
        rhs=ONE - pow2(-l),
        trace={"m": m, "chain": chain},
        hypotheses={"omega_valid": omega_valid},
    )

