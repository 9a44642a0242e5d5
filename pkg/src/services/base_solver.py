"""求解器基类.

三个求解器都只是 Justify 步骤的不同排列。基类负责执行单步（跟踪、审计、
统计）、构造直接证成、吸引循环和最后的补全。
"""

import heapq
import time
from abc import ABC, abstractmethod
from collections.abc import Iterable
from dataclasses import dataclass, field

from src.config.solver_config import SolverConfig
from src.game import ParityGame, Player, Solution
from src.justification import (
    DirectJustification,
    Justification,
    JustifyEffect,
    JustifyTrace,
    Level,
    ResetPolicy,
    check_safe,
    executable,
    extract_strategy,
    find_justifiable,
    perform_justify,
    size,
)
from src.utils import get_logger


class AuditError(RuntimeError):
    """审计模式下发现不安全状态、大小未增加或循环不变式被破坏."""

    def __init__(self, message: str, step: int, witnesses: Iterable[object] = ()) -> None:
        """初始化审计错误.

        Args:
            message: 错误说明
            step: 出错的步骤编号
            witnesses: 证据
        """
        self.step = step
        self.witnesses = [str(w) for w in witnesses]
        detail = f" [{', '.join(self.witnesses)}]" if self.witnesses else ""
        super().__init__(f"第 {step} 步: {message}{detail}")


@dataclass(frozen=True, slots=True)
class Region:
    """闭区域 R_p 及其提升到的层级."""

    nodes: frozenset[int]
    level: int
    escape_level: Level


@dataclass
class SolverStats:
    """求解统计."""

    steps: int = 0
    frames: int = 0
    fallback_steps: int = 0
    promotions: list[Region] = field(default_factory=list)
    elapsed: float = 0.0


class JustifySolver(ABC):
    """基于 Justify 的求解器基类."""

    name = "base"

    def __init__(self, game: ParityGame, config: SolverConfig | None = None) -> None:
        """初始化求解器.

        Args:
            game: 待求解的博弈
            config: 求解器配置
        """
        self.game = game
        self.config = config or SolverConfig()
        self.logger = get_logger(type(self).__name__)
        self.j = Justification(game, reverse_index=self.config.reverse_index)
        self.trace = JustifyTrace()
        self.stats = SolverStats()

    @property
    def minimal(self) -> bool:
        """是否使用最小重置."""
        return self.config.reset_policy is ResetPolicy.MINIMAL

    def solve(self) -> tuple[Solution, JustifyTrace]:
        """求解博弈.

        Returns
        -------
            解和 Justify 跟踪（未开启跟踪时为空）
        """
        start_time = time.time()
        self.logger.info(f"开始求解: {self.name}, {self.game.size} 个节点")
        self._run()
        self._complete()
        self.stats.elapsed = time.time() - start_time
        self.logger.info(
            f"求解完成，耗时: {self.stats.elapsed:.3f}秒，"
            f"步数: {self.stats.steps}，递归帧: {self.stats.frames}",
        )
        return self.solution(), self.trace

    def solution(self) -> Solution:
        """从当前证成提取解."""
        return Solution(
            winner=self.j.hypothesis,
            strategy0=extract_strategy(self.j, Player.EVEN),
            strategy1=extract_strategy(self.j, Player.ODD),
        )

    @abstractmethod
    def _run(self) -> None:
        """按算法的顺序执行 Justify 步骤."""

    # ------------------------------------------------------------------ 单步

    def _justify(self, v: int, dj: DirectJustification) -> JustifyEffect:
        """执行一步 Justify, 按配置记录跟踪并审计."""
        step = self.stats.steps + 1
        audit = self.config.audit
        before = size(self.j) if self.config.trace else None
        if audit:
            report = check_safe(self.j)
            if not report.safe:
                msg = "Justify 之前证成不安全"
                raise AuditError(msg, step, report.witnesses)

        effect = perform_justify(self.j, v, dj, self.config.reset_policy)
        self.stats.steps = step

        safe: bool | None = None
        if audit:
            report = check_safe(self.j)
            safe = report.safe
            if not safe:
                msg = f"Justify({v}, {dj}) 之后证成不安全"
                raise AuditError(msg, step, report.witnesses)
        if before is not None:
            after = size(self.j)
            self.trace.record(self.j, v, effect, before, after, safe)
            if audit and not after > before:
                msg = f"大小没有严格增加: {before} -> {after}"
                raise AuditError(msg, step)
        self.logger.debug(
            f"Justify #{step}: 节点 {v} dj={dj} 胜者 {int(effect.winner)} 重置 {len(effect.reset)}",
        )
        return effect

    def _fallback_step(self) -> bool:
        """补全一步: 按最小优先级证成一个节点. 没有未证成节点时返回 False."""
        found = find_justifiable(self.j)
        if found is None:
            return False
        if self.stats.fallback_steps == 0:
            self.logger.warning(f"{self.name} 仍有未证成节点，进入补全")
        self._justify(*found)
        self.stats.fallback_steps += 1
        return True

    def _complete(self) -> None:
        """补全: 剩下的未证成节点按最小优先级逐个证成."""
        while self._fallback_step():
            pass

    def _audit_levels(self, nodes: Iterable[int], p: int) -> None:
        """审计: 给定节点中已证成的证成层级都不低于 p. 只在最小重置下检查."""
        if not self.config.audit or not self.minimal:
            return
        low = [v for v in nodes if self.j.is_justified(v) and self.j.jl(v) < p]
        if low:
            msg = f"存在证成层级低于 {p} 的已证成节点"
            raise AuditError(msg, self.stats.steps, low)

    # ------------------------------------------------------------------ 吸引

    def _dj_for(self, v: int, player: Player, min_level: Level) -> DirectJustification | None:
        """为 player 赢得 v 的直接证成, 要求证成层级不低于 min_level.

        所有者取第一个满足条件的后继；非所有者需要全部后继都满足。
        """
        j = self.j
        successors = self.game.successors_of(v)
        if self.game.owner(v) is player or len(successors) == 1:
            for w in successors:
                if j.hyp(w) is player and j.jl(w) >= min_level:
                    return DirectJustification.edge(w)
            return None
        if all(j.hyp(w) is player for w in successors) and min(
            j.jl(w) for w in successors
        ) >= min_level:
            return DirectJustification.all_edges()
        return None

    def _eligible(
        self,
        v: int,
        players: tuple[Player, ...],
        min_level: Level,
        rejustify_below: Level | None,
    ) -> DirectJustification | None:
        j = self.j
        justified = j.is_justified(v)
        if justified and (rejustify_below is None or j.jl(v) >= rejustify_below):
            return None
        for player in players:
            if justified and j.hyp(v) is not player:
                continue
            dj = self._dj_for(v, player, min_level)
            if dj is not None and executable(j, v, dj) is player:
                return dj
        return None

    def _attract(
        self,
        subgame: frozenset[int],
        players: tuple[Player, ...],
        min_level: Level,
        rejustify_below: Level | None = None,
        seeds: Iterable[int] | None = None,
    ) -> int:
        """吸引循环: 反复证成子博弈中能以不低于 min_level 的层级赢得的节点.

        工作表按节点编号升序处理，每一步之后把受影响的节点及其前驱放回。
        工作表清空后全量扫描一遍，直到没有可证成的节点。

        Args:
            subgame: 子博弈节点集合
            players: 为哪些玩家吸引
            min_level: 直接证成的最低证成层级
            rejustify_below: 不为 None 时, 证成层级低于它的已证成节点也可以重新证成
            seeds: 初始工作表, 默认为整个子博弈

        Returns
        -------
            执行的步数
        """
        steps = 0
        queue = sorted(set(seeds) & subgame) if seeds is not None else sorted(subgame)
        queued = set(queue)
        heapq.heapify(queue)
        while True:
            while queue:
                v = heapq.heappop(queue)
                queued.discard(v)
                dj = self._eligible(v, players, min_level, rejustify_below)
                if dj is None:
                    continue
                effect = self._justify(v, dj)
                steps += 1
                touched = self.j.reach_down(v) | effect.reset
                for u in touched:
                    for w in (u, *self.game.predecessors_of(u)):
                        if w in subgame and w not in queued:
                            queued.add(w)
                            heapq.heappush(queue, w)
            pending = [
                v
                for v in sorted(subgame)
                if self._eligible(v, players, min_level, rejustify_below) is not None
            ]
            if not pending:
                return steps
            queue = pending
            queued = set(pending)
            heapq.heapify(queue)

    def _level_of_max(self, nodes: Iterable[int]) -> int:
        return max(self.game.priority(v) for v in nodes)
