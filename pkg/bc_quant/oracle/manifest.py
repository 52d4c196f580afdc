"""
Манифесты случайных экземпляров для сверки с оракулом.

Манифест - JSON с зерном генератора и списком экземпляров. Экземпляры
строятся детерминированно по зерну, поэтому манифест можно пересоздать,
а расхождения воспроизвести.
"""

import random
from fractions import Fraction
from typing import Any, Dict, List

from loguru import logger

from bc_quant.models.events import MODEL_KINDS, model_from_dict
from bc_quant.numerics.rational import format_rational
from bc_quant.oracle.brute_force import MAX_INDEPENDENT_EVENTS, brute_count_dist, brute_union


def _random_prefix(rng: random.Random, kind: str, length: int) -> List[Fraction]:
    if kind == "exclusive":
        denominator = rng.randint(length, 4 * length)
        share = denominator // length
        return [Fraction(rng.randint(0, share), denominator) for _ in range(length)]

    denominator = rng.randint(2, 12)
    values = [Fraction(rng.randint(0, denominator), denominator) for _ in range(length)]
    if kind == "nested":
        values.sort()
    return values


def generate_manifest(seed: int, count: int, max_length: int = 8) -> Dict[str, Any]:
    """
    Генерирует count экземпляров: табличная модель, окно [n, m] и длина для распределения.

    Виды моделей чередуются по кругу.
    """
    max_length = min(max_length, MAX_INDEPENDENT_EVENTS)
    rng = random.Random(seed)
    kinds = sorted(MODEL_KINDS)
    instances = []
    for index in range(count):
        kind = kinds[index % len(kinds)]
        length = rng.randint(1, max_length)
        prefix = _random_prefix(rng, kind, length)
        n = rng.randint(1, length)
        m = rng.randint(n, length)
        instances.append(
            {
                "model": {
                    "kind": kind,
                    "sequence": {
                        "kind": "table",
                        "prefix": [format_rational(p) for p in prefix],
                    },
                },
                "n": n,
                "m": m,
                "count_n": rng.randint(1, length),
            }
        )
    return {"seed": seed, "instances": instances}


def run_manifest(manifest: Dict[str, Any]) -> List[Dict[str, Any]]:
    """
    Сверяет union_prob и count_distribution с перебором для всех экземпляров.

    Returns:
        Список расхождений (пустой, если все совпало)
    """
    discrepancies: List[Dict[str, Any]] = []
    for index, instance in enumerate(manifest["instances"]):
        model = model_from_dict(instance["model"])
        n, m = instance["n"], instance["m"]

        closed = model.union_prob(n, m)
        brute = brute_union(model, n, m)
        if closed != brute:
            discrepancies.append(
                {
                    "instance": index,
                    "quantity": "union_prob",
                    "closed_form": format_rational(closed),
                    "brute_force": format_rational(brute),
                }
            )

        count_n = instance["count_n"]
        closed_dist = model.count_distribution(count_n)
        brute_dist = brute_count_dist(model, count_n)
        if closed_dist.pmf != brute_dist.pmf:
            discrepancies.append(
                {
                    "instance": index,
                    "quantity": "count_distribution",
                    "closed_form": closed_dist.to_dict()["pmf"],
                    "brute_force": brute_dist.to_dict()["pmf"],
                }
            )

    if discrepancies:
        seed = manifest.get("seed")
        logger.error(f"Оракул: {len(discrepancies)} расхождений в манифесте seed={seed}")
    else:
        logger.info(f"Оракул: {len(manifest['instances'])} экземпляров совпали")
    return discrepancies
