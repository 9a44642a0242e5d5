"""优先级提升的 Justify 版本.

外层循环每轮去掉证成层级为 +∞ 的节点，在剩下的子博弈上调用 Promote，
然后证成所有能以 +∞ 层级证成的节点。

Promote 在子博弈上为 p 的胜者吸引（证成层级低于 p 的已证成节点可以重新证成），
得到区域 R_p。R_p 闭合时返回它和逃逸层级；否则在 V_SG 去掉 R_p 后的子博弈上递归，子调用
返回的逃逸层级高于 p 时继续向上返回，否则在本层重新吸引。
"""

from collections.abc import Mapping
from dataclasses import dataclass

from src.config.solver_config import SolverConfig
from src.game import ParityGame, Player, Solution, winner_of_priority
from src.justification import (
    INFINITY,
    DirectJustification,
    Justification,
    JustifyEffect,
    JustifyTrace,
    Level,
)
from src.services.base_solver import JustifySolver, Region


def closed(j: Justification, region: frozenset[int], subgame: frozenset[int], p: int) -> bool:
    """R_p 是否为闭 p 区域: 子博弈中优先级为 p 的节点都已证成."""
    return all(
        v in region and j.is_justified(v) for v in subgame if j.game.priority(v) == p
    )


def escape_level(
    j: Justification,
    region: frozenset[int],
    region_levels: Mapping[int, Level] | None = None,
) -> Level:
    """区域的逃逸层级: 区域外 D 后继所在区域的最小层级, 没有逃逸节点时为 +∞.

    没有登记区域层级的节点按其证成层级计。
    """
    levels = region_levels or {}
    best: Level = INFINITY
    for v in region:
        for w in j.targets(v):
            if w in region:
                continue
            best = min(best, levels.get(w, j.jl(w)))
    return best


@dataclass
class _Frame:
    nodes: frozenset[int]
    p: int
    player: Player
    region: frozenset[int] | None = None
    steps_at_head: int = -1


class PromotionSolver(JustifySolver):
    """优先级提升求解器.

    region_level 只登记仍在某个区域中的节点: 每轮重建, 被重置或离开区域的节点随即删除。
    """

    name = "pp"

    def __init__(self, game: ParityGame, config: SolverConfig | None = None) -> None:
        """初始化求解器.

        Args:
            game: 待求解的博弈
            config: 求解器配置
        """
        super().__init__(game, config)
        self.region_level: dict[int, Level] = {}

    def _run(self) -> None:
        while self.j.has_unjustified():
            top = frozenset(v for v in self.game.nodes if self.j.jl(v) != INFINITY)
            self.region_level = {v: INFINITY for v in self.game.nodes if v not in top}
            steps_before = self.stats.steps
            self.promote(top)
            self._attract(top, (Player.EVEN, Player.ODD), INFINITY, rejustify_below=INFINITY)
            if self.stats.steps == steps_before:
                self.logger.warning("外层循环一轮没有进展，执行一步补全")
                self._fallback_step()

    def _justify(self, v: int, dj: DirectJustification) -> JustifyEffect:
        effect = super()._justify(v, dj)
        # 被重置的节点离开所在区域
        for u in effect.reset:
            self.region_level.pop(u, None)
        return effect

    def _frame(self, nodes: frozenset[int]) -> _Frame:
        p = self._level_of_max(nodes)
        self.stats.frames += 1
        return _Frame(nodes=nodes, p=p, player=winner_of_priority(p))

    def promote(self, subgame: frozenset[int]) -> Region:
        """在子博弈上执行 Promote, 返回最后向上返回的区域."""
        stack = [self._frame(subgame)]
        returned: Region | None = None
        while stack:
            frame = stack[-1]
            if returned is not None and returned.escape_level > frame.p:
                stack.pop()
                continue
            returned = None

            self._audit_levels(
                (v for v in self.game.nodes if v not in frame.nodes),
                frame.p,
            )
            self._attract(
                frame.nodes,
                (frame.player,),
                frame.p,
                rejustify_below=frame.p,
                seeds=[v for v in frame.nodes if self.game.priority(v) == frame.p],
            )
            region = frozenset(v for v in frame.nodes if self.j.jl(v) >= frame.p)
            if region == frame.region and self.stats.steps == frame.steps_at_head:
                self.logger.warning(f"区域 p={frame.p} 没有变化，提前返回")
                returned = Region(region, frame.p, INFINITY)
                stack.pop()
                continue
            frame.region = region
            frame.steps_at_head = self.stats.steps
            for v in frame.nodes:
                if v in region:
                    self.region_level[v] = frame.p
                else:
                    self.region_level.pop(v, None)

            if closed(self.j, region, frame.nodes, frame.p):
                level = escape_level(self.j, region, self.region_level)
                returned = Region(region, frame.p, level)
                self.stats.promotions.append(returned)
                self.logger.info(
                    f"闭区域 p={frame.p} ({len(region)} 个节点) 提升到 {level}",
                )
                stack.pop()
                continue

            sub = frame.nodes - region
            if not sub:
                self.logger.warning(f"区域 p={frame.p} 未闭合但子博弈为空，提前返回")
                returned = Region(region, frame.p, INFINITY)
                stack.pop()
                continue
            stack.append(self._frame(sub))

        if returned is None:
            return Region(frozenset(), 0, INFINITY)
        return returned


def solve_priority_promotion(
    game: ParityGame,
    config: SolverConfig | None = None,
) -> tuple[Solution, JustifyTrace]:
    """用优先级提升求解博弈."""
    return PromotionSolver(game, config).solve()
