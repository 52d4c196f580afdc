"""
Модели последовательностей событий с замкнутыми формулами вероятностей.
"""

from bc_quant.models.events import (
    MODEL_KINDS,
    CountDistribution,
    EventModel,
    IndependentBernoulli,
    MutuallyExclusive,
    NestedIntervals,
    SumStats,
    build_model,
    model_from_dict,
)
from bc_quant.models.sequences import (
    AffineReciprocalSpec,
    ConstantSpec,
    GeometricSpec,
    RatioSpec,
    SequenceBase,
    SequenceSpec,
    SpeckerSpec,
    TableSpec,
    parse_sequence,
)

__all__ = [
    "MODEL_KINDS",
    "AffineReciprocalSpec",
    "ConstantSpec",
    "CountDistribution",
    "EventModel",
    "GeometricSpec",
    "IndependentBernoulli",
    "MutuallyExclusive",
    "NestedIntervals",
    "RatioSpec",
    "SequenceBase",
    "SequenceSpec",
    "SpeckerSpec",
    "SumStats",
    "TableSpec",
    "build_model",
    "model_from_dict",
    "parse_sequence",
]
