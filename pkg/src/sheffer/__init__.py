"""Toolkit for functional completeness of small Boolean gates.

Classifies N-input gates as universal on their own, universal with the
constants 0 and 1, or non-universal; computes exact single-generator
closure sets with witness circuits; decomposes gates into multiplexer
form; and runs whole-arity censuses with closed-form counting checks.
"""
from .bitfunc import TruthTable, compose, constant, projection
from .census import (
    CensusRow,
    CensusTable,
    CountReport,
    Divergence,
    diff_against_reference,
    emit_report,
    enumerate_all,
    reference_path,
    universal_count,
    universal_ratio,
)
from .classify import (
    Classification,
    classify,
    hex_fast_track,
    is_affine,
    is_monotone,
    is_self_dual,
    preserves_one,
    preserves_zero,
    universal_alone,
    universal_with_constants,
    universality_scan,
)
from .closure import (
    Circuit,
    ClosureBudgetError,
    ClosureReport,
    circuit_from_json,
    circuit_to_json,
    generate_closure,
    synthesize,
    verify_circuit,
)
from .mux import (
    MuxCircuit,
    mux_decompose,
    mux_to_dot,
    mux_to_json,
    recompose,
    universality_from_leaves,
)

__version__ = "0.1.0"

__all__ = [
    "TruthTable",
    "compose",
    "constant",
    "projection",
    "Classification",
    "classify",
    "preserves_zero",
    "preserves_one",
    "is_self_dual",
    "is_monotone",
    "is_affine",
    "universal_alone",
    "universal_with_constants",
    "universality_scan",
    "hex_fast_track",
    "Circuit",
    "ClosureReport",
    "ClosureBudgetError",
    "generate_closure",
    "synthesize",
    "verify_circuit",
    "circuit_to_json",
    "circuit_from_json",
    "MuxCircuit",
    "mux_decompose",
    "recompose",
    "universality_from_leaves",
    "mux_to_json",
    "mux_to_dot",
    "CensusRow",
    "CensusTable",
    "CountReport",
    "Divergence",
    "enumerate_all",
    "universal_count",
    "universal_ratio",
    "emit_report",
    "diff_against_reference",
    "reference_path",
    "__version__",
]
