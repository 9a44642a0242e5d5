"""Zielonka 算法的 Justify 版本.

递归用显式栈实现。每一帧处理一个子博弈 V_SG:
    1. 为 p 的胜者 α 吸引, 直接证成层级至少为 p
    2. V_SSG 为剩下的优先级低于 p 的未证成节点, 为空则返回
    3. 在 V_SSG 上递归
    4. 为对手吸引, 直接证成层级至少为 p+1, 然后回到 1
"""

from dataclasses import dataclass

from src.config.solver_config import SolverConfig
from src.game import ParityGame, Player, Solution, winner_of_priority
from src.justification import JustifyTrace
from src.services.base_solver import AuditError, JustifySolver


@dataclass
class _Frame:
    nodes: frozenset[int]
    p: int
    player: Player
    resumed: bool = False
    steps_at_head: int = 0


class ZielonkaSolver(JustifySolver):
    """自顶向下的 Zielonka 求解器."""

    name = "zielonka"

    def _frame(self, nodes: frozenset[int]) -> _Frame:
        p = self._level_of_max(nodes)
        self.stats.frames += 1
        self.logger.debug(f"进入子博弈: p={p}, {len(nodes)} 个节点")
        return _Frame(nodes=nodes, p=p, player=winner_of_priority(p))

    def _audit_head(self, frame: _Frame) -> None:
        """审计循环头: 已证成节点层级不低于 p, 对手不能以高于 p 的层级赢得未证成节点."""
        self._audit_levels(self.game.nodes, frame.p)
        if not self.config.audit or not self.minimal:
            return
        opponent = frame.player.opponent
        open_nodes = [
            v
            for v in sorted(frame.nodes)
            if not self.j.is_justified(v) and self._dj_for(v, opponent, frame.p + 1) is not None
        ]
        if open_nodes:
            msg = f"对手能以高于 {frame.p} 的层级赢得未证成节点"
            raise AuditError(msg, self.stats.steps, open_nodes)

    def _run(self) -> None:
        if self.game.size == 0:
            return
        stack = [self._frame(frozenset(self.game.nodes))]
        while stack:
            frame = stack[-1]
            if frame.resumed:
                frame.resumed = False
                self._attract(frame.nodes, (frame.player.opponent,), frame.p + 1)
                if self.stats.steps == frame.steps_at_head:
                    self.logger.warning(f"子博弈 p={frame.p} 一轮没有进展，提前返回")
                    stack.pop()
                    continue

            frame.steps_at_head = self.stats.steps
            self._audit_head(frame)
            seeds = [v for v in frame.nodes if self.game.priority(v) == frame.p]
            self._attract(frame.nodes, (frame.player,), frame.p, seeds=seeds)

            sub = frozenset(
                v
                for v in frame.nodes
                if not self.j.is_justified(v) and self.game.priority(v) < frame.p
            )
            if not sub:
                stack.pop()
                continue
            frame.resumed = True
            stack.append(self._frame(sub))


def solve_zielonka(
    game: ParityGame,
    config: SolverConfig | None = None,
) -> tuple[Solution, JustifyTrace]:
    """用 Zielonka 算法求解博弈."""
    return ZielonkaSolver(game, config).solve()
