"""
Точная рациональная арифметика и интервальные оценки e^{-N}.
"""

from bc_quant.numerics.enclosure import (
    Ordering,
    RatInterval,
    compare_rational_vs_enclosed,
    compare_with_witness,
    exp_neg_enclosure,
    exp_neg_maker,
)
from bc_quant.numerics.rational import (
    ONE,
    ZERO,
    RationalField,
    ceil_fraction,
    format_rational,
    parse_rational,
    pow2,
    render_decimal,
)

__all__ = [
    "ONE",
    "ZERO",
    "Ordering",
    "RatInterval",
    "RationalField",
    "ceil_fraction",
    "compare_rational_vs_enclosed",
    "compare_with_witness",
    "exp_neg_enclosure",
    "exp_neg_maker",
    "format_rational",
    "parse_rational",
    "pow2",
    "render_decimal",
]
