"""核心包."""

from src.core.corpus_runner import CaseResult, CorpusReport, CorpusRunner, CorpusSpec, check_seed
from src.core.solve_manager import SolveManager, SolveResult
from src.core.solver_factory import SolverFactory

__all__ = [
    "CaseResult",
    "CorpusReport",
    "CorpusRunner",
    "CorpusSpec",
    "SolveManager",
    "SolveResult",
    "SolverFactory",
    "check_seed",
]
