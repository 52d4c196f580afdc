"""
Общие фикстуры тестов.
"""

from pathlib import Path

import pytest

from bc_quant.config import config, replace_config
from bc_quant.models.events import IndependentBernoulli, MutuallyExclusive, NestedIntervals
from bc_quant.models.sequences import (
    AffineReciprocalSpec,
    ConstantSpec,
    GeometricSpec,
    RatioSpec,
)

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(autouse=True)
def restore_config():
    """Восстанавливает глобальную конфигурацию после каждого теста."""
    saved = config.model_copy(deep=True)
    yield
    replace_config(saved)


@pytest.fixture
def half_independent():
    """Независимые события с P[A_i] = 1/2."""
    return IndependentBernoulli(ConstantSpec(c="1/2"))


@pytest.fixture
def sure_independent():
    """Независимые достоверные события."""
    return IndependentBernoulli(ConstantSpec(c="1"))


@pytest.fixture
def null_independent():
    """Независимые события нулевой вероятности."""
    return IndependentBernoulli(ConstantSpec(c="0"))


@pytest.fixture
def nested_ratio():
    """Вложенные интервалы с q_i = i / (i + 1)."""
    return NestedIntervals(RatioSpec())


@pytest.fixture
def nested_affine():
    """Вложенные интервалы с q_i = 1/2 - 1 / (2 (i + 1))."""
    return NestedIntervals(AffineReciprocalSpec(q="1/2", c="1/2", d=1))


@pytest.fixture
def exclusive_half():
    """Несовместные события с P[A_i] = 2^{-i}."""
    return MutuallyExclusive(GeometricSpec(ratio="1/2"))


@pytest.fixture
def data_dir():
    return DATA_DIR
