"""
Приемочные проверки на сетках параметров.

Каждый тест воспроизводит один критерий приемки на стандартных моделях:
независимые события с P[A_i] = 1/2, вложенные интервалы с q_i = i/(i+1)
и q_i = 1/2 - 1/(2(i+1)), несовместные события с P[A_i] = 2^{-i}.
"""

import random
from fractions import Fraction

import pytest

from bc_quant.models.events import IndependentBernoulli, MutuallyExclusive, build_model
from bc_quant.models.sequences import ConstantSpec, GeometricSpec, SpeckerSpec, TableSpec
from bc_quant.numerics.enclosure import RatInterval
from bc_quant.oracle import generate_manifest, min_witness_scan, run_manifest
from bc_quant.rates import (
    AffineG,
    AffinePhi,
    LinearOmega,
    PowerG,
    SearchedWitness,
    derive_divergence_rate,
)
from bc_quant.theorems import (
    bk_tail_check,
    chung_erdos,
    die_power,
    die_tightness,
    erdos_renyi,
    first_bc,
    honest_phi,
    kochen_stone_meta,
    ratio_lower_bound,
    remark_bound,
    second_bc,
    specker_certificate,
    wn_certificate,
    yan_certificate,
)
from bc_quant.utils.file_utils import load_json


@pytest.fixture
def stock_models(half_independent, nested_ratio, exclusive_half):
    return [half_independent, nested_ratio, exclusive_half]


@pytest.mark.parametrize("k", [2, 3, 6, 12, 64])
def test_second_bc_dice_grid(k):
    """Вторая лемма для k-гранной кости при n, N <= 4."""
    model = IndependentBernoulli(ConstantSpec(c=Fraction(1, k)))
    omega = LinearOmega(k=k)
    for n in range(1, 5):
        for big_n in range(1, 5):
            assert second_bc(model, omega, n, big_n).passed


def test_die_tightness_grid():
    """Монотонность (1 - 1/k)^{kN} по k и близость к e^{-N} при k = 64."""
    for big_n in range(1, 5):
        values = [die_power(k, big_n) for k in (2, 3, 6, 12, 64)]
        assert values == sorted(values)
        assert all(die_tightness(k, big_n).passed for k in (2, 3, 6, 12, 64))

    cert = die_tightness(64, 1)
    midpoint = RatInterval.from_dict(cert.trace["reference_enclosure"]).midpoint
    assert abs(midpoint - die_power(64, 1)) <= Fraction(1, 64)


@pytest.mark.parametrize("ratio", ["1/2", "1/3"])
def test_first_bc_exclusive_equality(ratio):
    """Первая лемма: для несовместных событий сумма совпадает с объединением."""
    model = MutuallyExclusive(GeometricSpec(ratio=ratio))
    phi = AffinePhi(c=1)
    for l in range(0, 9):
        for m in range(l + 2, 31):
            cert = first_bc(model, phi, l, m)
            assert cert.passed
            assert cert.trace["sum_equals_union"] is True


def test_chung_erdos_and_ratio_bound_stock(stock_models):
    """Неравенство Чанга-Эрдёша и b_n >= a_n для n <= 256."""
    for model in stock_models:
        for n in range(1, 257):
            assert chung_erdos(model, n).passed
            assert ratio_lower_bound(model, n).passed


def test_chung_erdos_random_tables():
    """Неравенство Чанга-Эрдёша и b_n >= a_n на 200 случайных таблицах."""
    manifest = generate_manifest(20240917, 200)
    checked = 0
    for instance in manifest["instances"]:
        model = build_model(instance["model"]["kind"], instance["model"]["sequence"])
        n = len(instance["model"]["sequence"]["prefix"])
        if model.sum_stats(n).b == 0:
            continue
        assert chung_erdos(model, n).passed
        assert ratio_lower_bound(model, n).passed
        checked += 1
    assert checked > 100


def test_erdos_renyi_searched_chain(half_independent):
    """Теорема Эрдёша-Реньи с найденным свидетелем: n_k = 2^k."""
    witness = SearchedWitness().bind(half_independent)
    omega = LinearOmega(k=2)
    for n in range(1, 5):
        for l in range(0, 7):
            cert = erdos_renyi(half_independent, omega, witness, n, l)
            assert cert.passed
            assert cert.trace["chain"] == [2**k for k in range(1, cert.trace["m"] + 1)]


@pytest.mark.parametrize("g", [AffineG(a=1, c=1), AffineG(a=2, c=0), PowerG(e=2)])
def test_kochen_stone_grid(g, half_independent, nested_ratio, nested_affine):
    """Метастабильная форма: r <= 2^{l+1}, оценка сверху и минимальность по перебору."""
    cases = [
        (half_independent, LinearOmega(k=2)),
        (nested_ratio, derive_divergence_rate(nested_ratio, 200)),
        (nested_affine, derive_divergence_rate(nested_affine, 100)),
    ]
    for model, omega in cases:
        for l in range(0, 5):
            for m in range(1, 5):
                cert, witness = kochen_stone_meta(model, omega, m, l, g)
                assert cert.passed
                assert witness.r <= 2 ** (l + 1)
                assert witness.bound is None or witness.n <= witness.bound
                bound = remark_bound(omega, g, m, l)
                assert bound is None or witness.n <= bound
                assert min_witness_scan(model, m, l, g, 10**4) <= witness.n


def test_yan_and_wn_limits(nested_affine):
    """Отношения Яна и w_n для q_i = 1/2 - 1/(2(i+1)) при n = 1000."""
    tolerance = Fraction(1, 50)
    assert yan_certificate(nested_affine, 1000, tolerance).passed
    assert yan_certificate(nested_affine, 1000, tolerance, target=Fraction(1, 2)).passed
    assert wn_certificate(nested_affine, 1000, tolerance).passed


def test_oracle_manifest_from_seed(data_dir):
    """Сверка с оракулом на 300 экземплярах по зерну из файла."""
    record = load_json(data_dir / "oracle_seed.json")
    manifest = generate_manifest(record["seed"], record["instances"])
    assert len(manifest["instances"]) == 300
    assert run_manifest(manifest) == []


def test_specker_adversarial_schedules():
    """Честная оценка на 20 перечислениях с поздним раскрытием."""
    rng = random.Random(1729)
    for _ in range(20):
        size = rng.randint(0, 8)
        enumeration = rng.sample(range(24), size)
        steps = [rng.randint(1, 500) for _ in range(size)]
        spec = SpeckerSpec(enumeration=enumeration, reveal_steps=steps)
        phi = honest_phi(spec)
        for l in range(1, 17):
            assert specker_certificate(spec, phi, l).passed


def test_bk_tail_stock(stock_models):
    """Шаг Чебышёва для n <= 512."""
    for model in stock_models:
        for n in range(1, 513):
            assert bk_tail_check(model, 1, n).passed


def test_bk_tail_random_tables():
    """Шаг Чебышёва на случайных таблицах."""
    for instance in generate_manifest(5, 60)["instances"]:
        model = build_model(instance["model"]["kind"], instance["model"]["sequence"])
        n = len(instance["model"]["sequence"]["prefix"])
        if model.partial_sum(n) == 0:
            continue
        assert bk_tail_check(model, 1, n).passed


def test_table_tail_model_consistency():
    """Таблица с хвостом ведет себя как исходная последовательность после префикса."""
    table = IndependentBernoulli(TableSpec(prefix=["1/2", "1/2"], tail=ConstantSpec(c="1/2")))
    plain = IndependentBernoulli(ConstantSpec(c="1/2"))
    for n in range(1, 20):
        assert table.sum_stats(n) == plain.sum_stats(n)
