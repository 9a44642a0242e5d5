"""证成图模块.

证成 J = (V, D, H): 每个节点最多一个直接证成（单字段表示: 一个后继, 或者
"全部后继"标记），加上假设 H。未证成的节点就是参数化博弈 PG_{P_J} 的参数。

反向依赖有两种编码:
    - ``scan``: 遍历 E 中的前驱并检查其直接证成是否指向 v（默认）
    - ``dependents``: 为每个节点维护依赖它的节点集合

证成层级 jl 按节点缓存, 变化节点的 reach_down 范围内失效。
"""

import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import StrEnum
from typing import NamedTuple, Protocol

from src.game import Hypothesis, ParityGame, Player, default_hypothesis, winner_of_priority

type Level = int | float

INFINITY: Level = math.inf


class JustificationError(ValueError):
    """证成操作的参数不合法."""


class ReverseIndexKind(StrEnum):
    """反向依赖编码方式."""

    SCAN = "scan"
    DEPENDENTS = "dependents"


@dataclass(frozen=True, slots=True)
class DirectJustification:
    """直接证成的紧凑表示.

    ``target`` 为某个后继时表示所有者选择的一条边；为 None 时表示全部出边。
    """

    target: int | None = None

    @classmethod
    def edge(cls, w: int) -> "DirectJustification":
        """单条边 (v, w)."""
        return cls(target=w)

    @classmethod
    def all_edges(cls) -> "DirectJustification":
        """v 的全部出边."""
        return cls(target=None)

    @property
    def is_all(self) -> bool:
        """是否为全部出边."""
        return self.target is None

    def targets(self, game: ParityGame, v: int) -> tuple[int, ...]:
        """边集 dj 的目标节点."""
        if self.target is None:
            return game.successors_of(v)
        return (self.target,)

    def __str__(self) -> str:
        """``*`` 表示全部出边."""
        return "*" if self.target is None else str(self.target)


class Update(NamedTuple):
    """J[v: dj, player] 中的一项; dj 为 None 时移除 v 的出边."""

    node: int
    dj: DirectJustification | None
    player: Player


class _ReverseIndex(Protocol):
    def link(self, v: int, targets: Iterable[int]) -> None: ...

    def unlink(self, v: int, targets: Iterable[int]) -> None: ...

    def dependents(self, w: int) -> frozenset[int]: ...


class _ScanIndex:
    """遍历 E 前驱, 检查它们的直接证成是否包含 w."""

    def __init__(self, game: ParityGame, direct: list[DirectJustification | None]) -> None:
        self._game = game
        self._direct = direct

    def link(self, v: int, targets: Iterable[int]) -> None:
        pass

    def unlink(self, v: int, targets: Iterable[int]) -> None:
        pass

    def dependents(self, w: int) -> frozenset[int]:
        found = []
        for u in self._game.predecessors_of(w):
            dj = self._direct[u]
            if dj is not None and (dj.target is None or dj.target == w):
                found.append(u)
        return frozenset(found)


class _DependentsIndex:
    """为每个节点维护依赖集合."""

    def __init__(self, game: ParityGame) -> None:
        self._sets: list[set[int]] = [set() for _ in game.nodes]

    def link(self, v: int, targets: Iterable[int]) -> None:
        for w in targets:
            self._sets[w].add(v)

    def unlink(self, v: int, targets: Iterable[int]) -> None:
        for w in targets:
            self._sets[w].discard(v)

    def dependents(self, w: int) -> frozenset[int]:
        return frozenset(self._sets[w])


class Justification:
    """证成 (V, D, H).

    单写者: 修改期间的读取没有定义。``apply`` 原地修改并返回自身，
    需要保留旧状态时先 ``copy()``。
    """

    def __init__(
        self,
        game: ParityGame,
        hypothesis: Hypothesis | None = None,
        *,
        reverse_index: ReverseIndexKind = ReverseIndexKind.SCAN,
    ) -> None:
        """初始化空证成 (V, ∅, H).

        Args:
            game: 博弈
            hypothesis: 初始假设，默认为 H_d
            reverse_index: 反向依赖编码方式
        """
        self.game = game
        self.reverse_index = ReverseIndexKind(reverse_index)
        hyp = hypothesis if hypothesis is not None else default_hypothesis(game)
        if len(hyp) != game.size:
            msg = f"假设必须覆盖全部 {game.size} 个节点"
            raise JustificationError(msg)
        self._hyp: list[Player] = [Player(h) for h in hyp]
        self._direct: list[DirectJustification | None] = [None] * game.size
        self._levels: list[Level | None] = [None] * game.size
        self._index: _ReverseIndex = self._make_index()

    def _make_index(self) -> _ReverseIndex:
        if self.reverse_index is ReverseIndexKind.DEPENDENTS:
            return _DependentsIndex(self.game)
        return _ScanIndex(self.game, self._direct)

    def copy(self) -> "Justification":
        """深拷贝."""
        other = Justification(self.game, tuple(self._hyp), reverse_index=self.reverse_index)
        for v, dj in enumerate(self._direct):
            if dj is not None:
                other._direct[v] = dj
                other._index.link(v, dj.targets(self.game, v))
        other._levels = list(self._levels)
        return other

    # ------------------------------------------------------------------ 读取

    @property
    def hypothesis(self) -> Hypothesis:
        """当前假设 H."""
        return tuple(self._hyp)

    def hyp(self, v: int) -> Player:
        """H(v)."""
        return self._hyp[v]

    def direct(self, v: int) -> DirectJustification | None:
        """v 的直接证成, 未证成时为 None."""
        return self._direct[v]

    def is_justified(self, v: int) -> bool:
        """v 在 D 中是否有出边."""
        return self._direct[v] is not None

    def targets(self, v: int) -> tuple[int, ...]:
        """v 在 D 中的后继."""
        dj = self._direct[v]
        return dj.targets(self.game, v) if dj is not None else ()

    def unjustified(self) -> list[int]:
        """全部未证成节点（升序）."""
        return [v for v, dj in enumerate(self._direct) if dj is None]

    def has_unjustified(self) -> bool:
        """是否还有未证成节点."""
        return any(dj is None for dj in self._direct)

    def edges(self) -> Iterator[tuple[int, int]]:
        """D 的全部边."""
        for v in self.game.nodes:
            for w in self.targets(v):
                yield v, w

    def dependents(self, w: int) -> frozenset[int]:
        """D 中指向 w 的节点."""
        return self._index.dependents(w)

    def parameters(self) -> dict[int, Player]:
        """参数映射 P_J: H 在未证成节点上的限制."""
        return {v: self._hyp[v] for v in self.unjustified()}

    def reach_down(self, v: int) -> set[int]:
        """J↓v: D 中能到达 v 的节点, 包含 v."""
        seen = {v}
        stack = [v]
        while stack:
            w = stack.pop()
            for u in self._index.dependents(w):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen

    def reach_up(self, v: int) -> set[int]:
        """J↑v: D 中从 v 可达的节点, 包含 v."""
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in self.targets(u):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def jl(self, v: int) -> Level:
        """证成层级: v 可达的参数中最小的优先级, 没有参数时为 +∞."""
        cached = self._levels[v]
        if cached is not None:
            return cached
        best: Level = INFINITY
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            known = self._levels[u]
            if u != v and known is not None:
                # u 的缓存已经是 J↑u 上的最小值
                best = min(best, known)
                continue
            dj = self._direct[u]
            if dj is None:
                best = min(best, self.game.priority(u))
                continue
            for w in dj.targets(self.game, u):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        self._levels[v] = best
        return best

    def jl_of(self, v: int, dj: DirectJustification) -> Level:
        """jl(dj): dj 各目标证成层级的最小值."""
        return min(self.jl(w) for w in dj.targets(self.game, v))

    def default_winner(self, v: int) -> Player:
        """H_d(v)."""
        return winner_of_priority(self.game.priority(v))

    # ------------------------------------------------------------------ 修改

    def _check_shape(self, v: int, dj: DirectJustification | None) -> None:
        if not 0 <= v < self.game.size:
            msg = f"节点 {v} 不存在"
            raise JustificationError(msg)
        if dj is not None and dj.target is not None and dj.target not in self.game.successors_of(v):
            msg = f"直接证成 {v}->{dj.target} 不是博弈的边"
            raise JustificationError(msg)

    def apply(self, updates: Iterable[Update]) -> "Justification":
        """J[v: dj, α | ...]: 批量替换出边并设置假设.

        同一批内的修改与顺序无关。依赖索引和层级缓存随之维护。

        Raises
        ------
            JustificationError: 同一节点出现多次, 或 dj 不是 v 的出边
        """
        batch = list(updates)
        nodes = [u.node for u in batch]
        if len(set(nodes)) != len(nodes):
            msg = f"同一批修改中节点重复: {sorted(nodes)}"
            raise JustificationError(msg)
        for u in batch:
            self._check_shape(u.node, u.dj)

        stale: set[int] = set()
        for v in nodes:
            stale |= self.reach_down(v)
        for node, dj, player in batch:
            self._index.unlink(node, self.targets(node))
            self._direct[node] = dj
            if dj is not None:
                self._index.link(node, dj.targets(self.game, node))
            self._hyp[node] = Player(player)
        for v in nodes:
            stale |= self.reach_down(v)
        for w in stale:
            self._levels[w] = None
        return self


def levels_from_scratch(j: Justification) -> list[Level]:
    """不使用缓存重新计算每个节点的证成层级, 用于校验缓存和审计."""
    levels: list[Level] = []
    for v in j.game.nodes:
        reachable = j.reach_up(v)
        params = [j.game.priority(w) for w in reachable if not j.is_justified(w)]
        levels.append(min(params, default=INFINITY))
    return levels


def parameters_of(j: Justification) -> dict[int, Player]:
    """参数映射 P_J."""
    return j.parameters()


def reach_down(j: Justification, v: int) -> set[int]:
    """J↓v."""
    return j.reach_down(v)


def reach_up(j: Justification, v: int) -> set[int]:
    """J↑v."""
    return j.reach_up(v)


def jl(j: Justification, v: int) -> Level:
    """jl_J(v)."""
    return j.jl(v)


def apply(j: Justification, updates: Iterable[Update]) -> Justification:
    """J[v: dj, α | ...]."""
    return j.apply(updates)
