"""Process-theory circuit toolkit.

Typed circuits with two semantic backends (exact finite stochastic,
finite-dimensional quantum) and exact decision procedures with
certificates for the operational tasks built on them: programmability,
distinguishability, copiability, and side-information generation.
"""

from .circuit import (
    UNIT,
    Diagram,
    Discard,
    Gen,
    Identity,
    Par,
    Seq,
    Swap,
    SystemType,
    discard,
    identity,
    normalize,
    par_compose,
    seq_compose,
    swap,
    system,
    typecheck,
)
from .lp import LinearProgram, LPResult, LPStatus, channel_feasibility, solve
from .quantum import QChannel, QState
from .stochastic import StochChannel
from .tasks import (
    ConfusabilityGraph,
    Decision,
    GateFamily,
    StateFamily,
    build_programmer,
    check_component_constancy,
    check_side_info,
    confusability,
    decide_copiable,
    decide_distinguishable,
    find_faithful_side_info,
    gate_family,
    iterate_side_info,
    pullback_distinguishability,
    state_family,
    verify_no_info,
)
from .asymptotics import (
    ErrorCurve,
    IIDFamily,
    asymptotic_consistency_check,
    build_ml_discriminator,
    error_curve,
    flag_gate_family,
    helstrom_error,
    helstrom_error_trace_norm,
    iid_power,
    min_defect_programmer,
)
from .model import ModelFile, certificate_model, format_model, load, parse

__version__ = "0.1.0"

__all__ = [
    "UNIT",
    "Diagram",
    "Discard",
    "Gen",
    "Identity",
    "Par",
    "Seq",
    "Swap",
    "SystemType",
    "discard",
    "identity",
    "normalize",
    "par_compose",
    "seq_compose",
    "swap",
    "system",
    "typecheck",
    "LinearProgram",
    "LPResult",
    "LPStatus",
    "channel_feasibility",
    "solve",
    "QChannel",
    "QState",
    "StochChannel",
    "ConfusabilityGraph",
    "Decision",
    "GateFamily",
    "StateFamily",
    "build_programmer",
    "check_component_constancy",
    "check_side_info",
    "confusability",
    "decide_copiable",
    "decide_distinguishable",
    "find_faithful_side_info",
    "gate_family",
    "iterate_side_info",
    "pullback_distinguishability",
    "state_family",
    "verify_no_info",
    "ErrorCurve",
    "IIDFamily",
    "asymptotic_consistency_check",
    "build_ml_discriminator",
    "error_curve",
    "flag_gate_family",
    "helstrom_error",
    "helstrom_error_trace_norm",
    "iid_power",
    "min_defect_programmer",
    "ModelFile",
    "certificate_model",
    "format_model",
    "load",
    "parse",
]
