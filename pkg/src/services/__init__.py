"""服务包: 三个求解器和穷举求解."""

from src.services.base_solver import AuditError, JustifySolver, Region, SolverStats
from src.services.fixpoint_solver import FixpointSolver, solve_fixpoint
from src.services.oracle_service import (
    OracleBoundError,
    OracleService,
    enumerate_plays,
    oracle_solve,
    oracle_winners,
    random_game,
)
from src.services.promotion_solver import (
    PromotionSolver,
    closed,
    escape_level,
    solve_priority_promotion,
)
from src.services.zielonka_solver import ZielonkaSolver, solve_zielonka

__all__ = [
    "AuditError",
    "FixpointSolver",
    "JustifySolver",
    "OracleBoundError",
    "OracleService",
    "PromotionSolver",
    "Region",
    "SolverStats",
    "ZielonkaSolver",
    "closed",
    "enumerate_plays",
    "escape_level",
    "oracle_solve",
    "oracle_winners",
    "random_game",
    "solve_fixpoint",
    "solve_priority_promotion",
    "solve_zielonka",
]
