"""
Проверка количественных теорем с выдачей сертификатов.
"""

from bc_quant.theorems.borel_cantelli import die_power, die_tightness, first_bc, second_bc
from bc_quant.theorems.certificate import (
    CERTIFICATE_SCHEMA,
    Certificate,
    MetastableWitness,
    TheoremTag,
    Verdict,
    build_certificate,
    side_margin,
    validate_certificate,
)
from bc_quant.theorems.erdos_renyi import (
    bk_tail_check,
    erdos_renyi,
    erdos_renyi_chain,
    ratio_lower_bound,
)
from bc_quant.theorems.kochen_stone import (
    WnStats,
    chung_erdos,
    kochen_stone_meta,
    ks_algebra_check,
    ks_tail_estimate,
    ks_tail_threshold,
    remark_bound,
    wn_certificate,
    wn_stats,
    yan_certificate,
    yan_ratios,
)
from bc_quant.theorems.specker import (
    SpeckerReport,
    honest_phi,
    specker_certificate,
    specker_reduction,
    specker_report,
)

__all__ = [
    "CERTIFICATE_SCHEMA",
    "Certificate",
    "MetastableWitness",
    "SpeckerReport",
    "TheoremTag",
    "Verdict",
    "WnStats",
    "bk_tail_check",
    "build_certificate",
    "chung_erdos",
    "die_power",
    "die_tightness",
    "erdos_renyi",
    "erdos_renyi_chain",
    "first_bc",
    "honest_phi",
    "kochen_stone_meta",
    "ks_algebra_check",
    "ks_tail_estimate",
    "ks_tail_threshold",
    "ratio_lower_bound",
    "remark_bound",
    "second_bc",
    "side_margin",
    "specker_certificate",
    "specker_reduction",
    "specker_report",
    "validate_certificate",
    "wn_certificate",
    "wn_stats",
    "yan_certificate",
    "yan_ratios",
]
