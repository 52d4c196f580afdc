"""
Функции скорости omega, phi, g и их проверка на моделях событий.
"""

from bc_quant.rates.checks import (
    MetastabilityReport,
    RateVerdict,
    TailVerdict,
    check_convergence_rate,
    check_divergence_rate,
    check_metastability,
    derive_divergence_rate,
    derive_liminf_witness,
    metastability_from_convergence,
    tail_divergence_bound,
    verify_liminf_value,
)
from bc_quant.rates.functions import (
    AffineG,
    AffinePhi,
    CeilDivOmega,
    ClosedWitness,
    ConvergenceRate,
    DivergenceRate,
    GFunction,
    LiminfWitness,
    LinearOmega,
    PowerG,
    SearchedWitness,
    TableG,
    TableOmega,
    TablePhi,
    describe_rate,
    iterate_g,
    parse_g,
    parse_liminf,
    parse_omega,
    parse_phi,
)
from bc_quant.rates.grammar import ClosedExpression, RateExpressionParser, parse_closed_form

__all__ = [
    "AffineG",
    "AffinePhi",
    "CeilDivOmega",
    "ClosedExpression",
    "ClosedWitness",
    "ConvergenceRate",
    "DivergenceRate",
    "GFunction",
    "LiminfWitness",
    "LinearOmega",
    "MetastabilityReport",
    "PowerG",
    "RateExpressionParser",
    "RateVerdict",
    "SearchedWitness",
    "TableG",
    "TableOmega",
    "TablePhi",
    "TailVerdict",
    "check_convergence_rate",
    "check_divergence_rate",
    "check_metastability",
    "derive_divergence_rate",
    "derive_liminf_witness",
    "describe_rate",
    "iterate_g",
    "metastability_from_convergence",
    "parse_closed_form",
    "parse_g",
    "parse_liminf",
    "parse_omega",
    "parse_phi",
    "tail_divergence_bound",
    "verify_liminf_value",
]
