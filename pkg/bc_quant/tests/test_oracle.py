"""
Тесты переборного оракула и манифестов экземпляров.
"""

from fractions import Fraction

import pytest

from bc_quant.errors import CapExceededError, ModelInvariantError, SearchBudgetExceeded
from bc_quant.models.events import IndependentBernoulli, NestedIntervals
from bc_quant.models.sequences import ConstantSpec, TableSpec
from bc_quant.oracle import (
    AtomSpace,
    brute_count_dist,
    brute_union,
    build_atom_space,
    generate_manifest,
    min_witness_scan,
    run_manifest,
)
from bc_quant.rates import AffineG
from bc_quant.utils.file_utils import load_json


def test_brute_union_matches_examples(nested_ratio, exclusive_half):
    """Тест перебора на примерах с известными значениями."""
    independent = IndependentBernoulli(TableSpec(prefix=["1/2", "1/3", "1/4"]))
    assert brute_union(independent, 1, 3) == Fraction(3, 4)
    assert brute_union(nested_ratio, 2, 5) == Fraction(5, 6)
    assert brute_union(exclusive_half, 3, 10) == Fraction(255, 1024)


def test_brute_count_dist(half_independent):
    """Тест распределения числа событий перебором атомов."""
    dist = brute_count_dist(half_independent, 2)
    assert dist.pmf == {0: Fraction(1, 4), 1: Fraction(1, 2), 2: Fraction(1, 4)}

    nested = brute_count_dist(NestedIntervals(TableSpec(prefix=["1/2", "2/3"])), 2)
    assert nested.pmf == {0: Fraction(1, 3), 1: Fraction(1, 6), 2: Fraction(1, 2)}


def test_atom_space_total_weight(nested_ratio):
    """Тест суммы весов атомов."""
    space = build_atom_space(nested_ratio, 1, 4)
    assert sum(weight for weight, _ in space.atoms) == 1
    assert space.n == 1 and space.m == 4


def test_atom_space_rejects_bad_weights():
    """Тест проверки весов атомов."""
    with pytest.raises(ModelInvariantError):
        AtomSpace(n=1, m=1, atoms=((Fraction(1, 2), (True,)),))
    with pytest.raises(ModelInvariantError):
        AtomSpace(n=1, m=1, atoms=((Fraction(3, 2), (True,)), (Fraction(-1, 2), (False,))))


def test_independent_cap(half_independent):
    """Тест предела числа независимых событий."""
    assert brute_union(half_independent, 1, 16) == 1 - Fraction(1, 2**16)
    with pytest.raises(CapExceededError):
        brute_union(half_independent, 1, 17)


def test_min_witness_scan(sure_independent, half_independent):
    """Тест поиска наименьшего свидетеля перебором."""
    g = AffineG(a=1, c=1)
    assert min_witness_scan(sure_independent, 1, 0, g, 10) == 2
    assert min_witness_scan(half_independent, 1, 0, g, 10) == 2
    with pytest.raises(SearchBudgetExceeded):
        min_witness_scan(half_independent, 1, 0, g, 1)


def test_min_witness_scan_zero_events():
    """Тест отношения a_j / b_j = 0 для пустых событий."""
    model = IndependentBernoulli(ConstantSpec(c="0"))
    assert min_witness_scan(model, 2, 3, AffineG(a=2, c=0), 10) == 3


def test_manifest_is_deterministic():
    """Тест воспроизводимости манифеста по зерну."""
    first = generate_manifest(7, 30)
    assert first == generate_manifest(7, 30)
    assert first != generate_manifest(8, 30)
    assert [item["model"]["kind"] for item in first["instances"][:3]] == [
        "exclusive",
        "independent",
        "nested",
    ]


def test_manifest_without_discrepancies():
    """Тест совпадения замкнутых формул с перебором."""
    assert run_manifest(generate_manifest(7, 60)) == []


def test_manifest_from_data_file(data_dir):
    """Тест сверки на манифесте из файла."""
    manifest = load_json(data_dir / "oracle_manifest.json")
    assert run_manifest(manifest) == []


def test_run_manifest_reports_discrepancy(monkeypatch):
    """Тест записи расхождения при неверной замкнутой формуле."""
    manifest = {
        "seed": None,
        "instances": [
            {
                "model": {
                    "kind": "independent",
                    "sequence": {"kind": "table", "prefix": ["1/2", "1/2"]},
                },
                "n": 1,
                "m": 2,
                "count_n": 1,
            }
        ],
    }
    monkeypatch.setattr(IndependentBernoulli, "union_prob", lambda self, n, m: Fraction(1))
    discrepancies = run_manifest(manifest)
    assert discrepancies == [
        {
            "instance": 0,
            "quantity": "union_prob",
            "closed_form": "1/1",
            "brute_force": "3/4",
        }
    ]
