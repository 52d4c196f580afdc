"""
Переборные вычисления на малых экземплярах.

Оракул не пользуется замкнутыми формулами моделей: вероятности
объединений и распределение числа событий получаются суммированием весов
явно построенных атомов вероятностного пространства, а отношения a_j / b_j
для поиска свидетеля накапливаются из попарных вероятностей joint(i, k).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Tuple

from loguru import logger

from bc_quant.errors import (
    CapExceededError,
    ModelInvariantError,
    PreconditionError,
    SearchBudgetExceeded,
)
from bc_quant.models.events import (
    CountDistribution,
    EventModel,
    IndependentBernoulli,
    MutuallyExclusive,
    NestedIntervals,
)
from bc_quant.numerics.rational import ONE, ZERO, format_rational, pow2

MAX_INDEPENDENT_EVENTS = 16

Membership = Tuple[bool, ...]


@dataclass(frozen=True)
class AtomSpace:
    """
    Конечное разбиение вероятностного пространства на атомы.

    Каждый атом задан весом и вектором принадлежности событиям A_n..A_m.
    """

    n: int
    m: int
    atoms: Tuple[Tuple[Fraction, Membership], ...]

    def __post_init__(self):
        if any(weight < ZERO for weight, _ in self.atoms):
            raise ModelInvariantError(f"Отрицательный вес атома на [{self.n}, {self.m}]")
        total = sum((weight for weight, _ in self.atoms), ZERO)
        if total != ONE:
            raise ModelInvariantError(
                f"Сумма весов атомов на [{self.n}, {self.m}] равна {format_rational(total)}, а не 1"
            )

    def union_weight(self) -> Fraction:
        """Суммарный вес атомов, лежащих хотя бы в одном событии."""
        return sum((weight for weight, bits in reversed(self.atoms) if any(bits)), ZERO)

    def count_weights(self) -> Dict[int, Fraction]:
        weights: Dict[int, Fraction] = {}
        for weight, bits in self.atoms:
            count = sum(bits)
            weights[count] = weights.get(count, ZERO) + weight
        return weights


def _independent_atoms(
    model: IndependentBernoulli, n: int, m: int
) -> List[Tuple[Fraction, Membership]]:
    size = m - n + 1
    if size > MAX_INDEPENDENT_EVENTS:
        raise CapExceededError(
            f"Перебор 2^{size} атомов для независимых событий превышает предел "
            f"2^{MAX_INDEPENDENT_EVENTS}"
        )
    probs = [model.prob(i) for i in range(n, m + 1)]
    atoms = []
    for bits in product((False, True), repeat=size):
        weight = ONE
        for p, bit in zip(probs, bits):
            weight *= p if bit else ONE - p
        atoms.append((weight, bits))
    return atoms


def _nested_atoms(model: NestedIntervals, n: int, m: int) -> List[Tuple[Fraction, Membership]]:
    # отрезки между соседними точками q_n..q_m на [0, 1]
    probs = [model.prob(i) for i in range(n, m + 1)]
    points = sorted({ZERO, ONE, *probs})
    atoms = []
    for left, right in zip(points, points[1:]):
        bits = tuple(right <= q for q in probs)
        atoms.append((right - left, bits))
    return atoms


def _exclusive_atoms(
    model: MutuallyExclusive, n: int, m: int
) -> List[Tuple[Fraction, Membership]]:
    size = m - n + 1
    atoms = []
    rest = ONE
    for offset in range(size):
        p = model.prob(n + offset)
        atoms.append((p, tuple(k == offset for k in range(size))))
        rest -= p
    # вне окна [n, m] лежит масса событий с номерами < n и > m
    atoms.append((rest, (False,) * size))
    return atoms


def build_atom_space(model: EventModel, n: int, m: int) -> AtomSpace:
    """
    Строит атомы для событий A_n..A_m.

    Raises:
        PreconditionError: Если диапазон пуст
        CapExceededError: Если независимых событий больше 16
        ModelInvariantError: Если веса атомов некорректны
    """
    if n < 1 or m < n:
        raise PreconditionError(f"Некорректный диапазон индексов [{n}, {m}]")

    if isinstance(model, IndependentBernoulli):
        atoms = _independent_atoms(model, n, m)
    elif isinstance(model, NestedIntervals):
        atoms = _nested_atoms(model, n, m)
    elif isinstance(model, MutuallyExclusive):
        atoms = _exclusive_atoms(model, n, m)
    else:
        raise PreconditionError(f"Оракул не поддерживает модель {type(model).__name__}")
    return AtomSpace(n=n, m=m, atoms=tuple(atoms))


def brute_union(model: EventModel, n: int, m: int) -> Fraction:
    """P[объединение A_n..A_m] суммированием весов атомов."""
    return build_atom_space(model, n, m).union_weight()


def brute_count_dist(model: EventModel, n: int) -> CountDistribution:
    """Распределение числа событий среди A_1..A_n полным перебором атомов."""
    space = build_atom_space(model, 1, n)
    return CountDistribution.from_weights(n, space.count_weights())


class _PairwiseRatios:
    """Накопление a_j и b_j из попарных вероятностей joint(i, k)."""

    def __init__(self, model: EventModel):
        self.model = model
        self._s = ZERO
        self._b = ZERO
        self._ratios: List[Fraction] = []

    def ratio(self, j: int) -> Fraction:
        while len(self._ratios) < j:
            k = len(self._ratios) + 1
            cross = sum((self.model.joint(i, k) for i in range(k - 1, 0, -1)), ZERO)
            self._s += self.model.joint(k, k)
            self._b += self.model.joint(k, k) + 2 * cross
            self._ratios.append(ZERO if self._b == ZERO else self._s * self._s / self._b)
        return self._ratios[j - 1]


def _window_union(model: EventModel, n: int, m: int) -> Fraction:
    """Объединение A_n..A_m без обращения к union_prob модели."""
    if isinstance(model, IndependentBernoulli):
        complement = ONE
        for i in range(m, n - 1, -1):
            complement *= ONE - model.prob(i)
        return ONE - complement
    if isinstance(model, NestedIntervals):
        return max(model.prob(i) for i in range(n, m + 1))
    return sum((model.prob(i) for i in range(m, n - 1, -1)), ZERO)


def min_witness_scan(model: EventModel, m: int, l: int, g, scan_limit: int) -> int:
    """
    Наименьшее n из (m, scan_limit], для которого при всех j из [n, g(n)]
    P[объединение A_{m+1}..A_n] + 2^{-l} >= a_j / b_j.

    Raises:
        SearchBudgetExceeded: Если такого n нет до scan_limit
    """
    if m < 1:
        raise PreconditionError(f"m должно быть >= 1, получено {m}")

    ratios = _PairwiseRatios(model)
    slack = pow2(-l)
    for n in range(m + 1, scan_limit + 1):
        level = _window_union(model, m + 1, n) + slack
        if all(ratios.ratio(j) <= level for j in range(n, g(n) + 1)):
            logger.debug(f"Перебор: наименьший свидетель n={n} (m={m}, l={l})")
            return n

    raise SearchBudgetExceeded(f"Свидетель не найден на ({m}, {scan_limit}]")
