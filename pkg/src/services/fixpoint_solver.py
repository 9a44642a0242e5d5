"""嵌套不动点迭代.

每一步取未证成节点中的最小优先级，证成其中编号最小的节点，直到没有未证成节点。
"""

from src.config.solver_config import SolverConfig
from src.game import ParityGame, Solution
from src.justification import JustifyTrace, find_justifiable
from src.services.base_solver import JustifySolver


class FixpointSolver(JustifySolver):
    """自底向上的不动点求解器."""

    name = "fixpoint"

    def _run(self) -> None:
        while (found := find_justifiable(self.j)) is not None:
            v, dj = found
            self._justify(v, dj)


def solve_fixpoint(
    game: ParityGame,
    config: SolverConfig | None = None,
) -> tuple[Solution, JustifyTrace]:
    """用不动点迭代求解博弈."""
    return FixpointSolver(game, config).solve()
