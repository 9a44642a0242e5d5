"""求解器配置."""

from dataclasses import dataclass
from enum import StrEnum

from src.justification import ResetPolicy, ReverseIndexKind


class Algorithm(StrEnum):
    """求解算法."""

    FIXPOINT = "fixpoint"
    ZIELONKA = "zielonka"
    PRIORITY_PROMOTION = "pp"


@dataclass
class SolverConfig:
    """求解器配置.

    开启审计时自动开启跟踪。
    """

    algorithm: Algorithm = Algorithm.ZIELONKA
    reset_policy: ResetPolicy = ResetPolicy.MINIMAL
    trace: bool = False
    audit: bool = False
    reverse_index: ReverseIndexKind = ReverseIndexKind.SCAN

    def __post_init__(self) -> None:
        """统一枚举类型."""
        self.algorithm = Algorithm(self.algorithm)
        self.reset_policy = ResetPolicy(self.reset_policy)
        self.reverse_index = ReverseIndexKind(self.reverse_index)
        if self.audit:
            self.trace = True
