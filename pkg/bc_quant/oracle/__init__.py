"""
Переборный оракул для сверки замкнутых формул.
"""

from bc_quant.oracle.brute_force import (
    MAX_INDEPENDENT_EVENTS,
    AtomSpace,
    brute_count_dist,
    brute_union,
    build_atom_space,
    min_witness_scan,
)
from bc_quant.oracle.manifest import generate_manifest, run_manifest

__all__ = [
    "MAX_INDEPENDENT_EVENTS",
    "AtomSpace",
    "brute_count_dist",
    "brute_union",
    "build_atom_space",
    "generate_manifest",
    "min_witness_scan",
    "run_manifest",
]
