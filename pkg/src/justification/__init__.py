"""证成包: 证成图、性质检查和 Justify 操作."""

from src.justification.checks import (
    CheckResult,
    SafetyReport,
    Witness,
    check_safe,
    check_weakly_winning,
    check_winning,
    extract_strategy,
    losing_cycles,
    wins_for,
)
from src.justification.justification import (
    INFINITY,
    DirectJustification,
    Justification,
    JustificationError,
    Level,
    ReverseIndexKind,
    Update,
    apply,
    jl,
    levels_from_scratch,
    parameters_of,
    reach_down,
    reach_up,
)
from src.justification.justify import (
    JustifyEffect,
    JustifyTrace,
    Move,
    PreconditionError,
    ResetPolicy,
    SizeTuple,
    TraceStep,
    candidate_djs,
    executable,
    executable_moves,
    find_justifiable,
    justify,
    lex_compare,
    perform_justify,
    reset_set,
    size,
)

__all__ = [
    "INFINITY",
    "CheckResult",
    "DirectJustification",
    "Justification",
    "JustificationError",
    "JustifyEffect",
    "JustifyTrace",
    "Level",
    "Move",
    "PreconditionError",
    "ResetPolicy",
    "ReverseIndexKind",
    "SafetyReport",
    "SizeTuple",
    "TraceStep",
    "Update",
    "Witness",
    "apply",
    "candidate_djs",
    "check_safe",
    "check_weakly_winning",
    "check_winning",
    "executable",
    "executable_moves",
    "extract_strategy",
    "find_justifiable",
    "jl",
    "justify",
    "lex_compare",
    "levels_from_scratch",
    "losing_cycles",
    "parameters_of",
    "perform_justify",
    "reach_down",
    "reach_up",
    "reset_set",
    "size",
    "wins_for",
]
