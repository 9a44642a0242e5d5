"""Justify 操作.

前置条件检查、两种重置策略、大小元组（进度度量）和可证成节点的查找。
所有修改都原地作用在传入的证成上。
"""

from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import StrEnum
from functools import total_ordering
from typing import NamedTuple

from src.game import Player
from src.justification.checks import check_safe, wins_for
from src.justification.justification import (
    INFINITY,
    DirectJustification,
    Justification,
    JustificationError,
    Level,
    Update,
)


class PreconditionError(JustificationError):
    """Justify 的前置条件不成立."""


class ResetPolicy(StrEnum):
    """假设翻转时的重置范围."""

    MINIMAL = "minimal"
    AGGRESSIVE = "aggressive"


class Move(NamedTuple):
    """一个可执行的 Justify 步骤."""

    node: int
    dj: DirectJustification
    player: Player


@dataclass(frozen=True, slots=True)
class JustifyEffect:
    """一次 Justify 的结果: 赢家和被重置的节点."""

    winner: Player
    reset: frozenset[int]
    flipped: bool = False


def executable(
    j: Justification,
    v: int,
    dj: DirectJustification,
    *,
    debug: bool = False,
) -> Player | None:
    """Justify(J, v, dj) 是否可执行, 可执行时返回 dj 为之赢得 v 的玩家.

    未证成的 v 要求 jl(dj) ≥ jl(v), 已证成的 v 要求 jl(dj) > jl(v)。
    J 安全是调用方的约定; debug 为 True 时额外检查。

    Raises
    ------
        PreconditionError: debug 模式下 J 不安全
    """
    if debug:
        report = check_safe(j)
        if not report.safe:
            msg = "证成不安全: " + ", ".join(str(w) for w in report.witnesses)
            raise PreconditionError(msg)
    alpha = wins_for(j, v, dj)
    if alpha is None:
        return None
    level = j.jl_of(v, dj)
    if j.is_justified(v):
        return alpha if level > j.jl(v) else None
    return alpha if level >= j.jl(v) else None


def reset_set(
    j: Justification,
    v: int,
    dj: DirectJustification,
    policy: ResetPolicy = ResetPolicy.MINIMAL,
) -> set[int]:
    """翻转 v 的假设时需要重置的节点, 不含 v 自己."""
    reset = j.reach_down(v)
    if ResetPolicy(policy) is ResetPolicy.AGGRESSIVE:
        bound = j.jl_of(v, dj)
        reset |= {w for w in j.game.nodes if j.jl(w) < bound}
    reset.discard(v)
    return reset


def perform_justify(
    j: Justification,
    v: int,
    dj: DirectJustification,
    policy: ResetPolicy = ResetPolicy.MINIMAL,
    *,
    debug: bool = False,
) -> JustifyEffect:
    """执行 Justify 并报告赢家和重置集合.

    H(v) 与赢家相同时只替换 v 的出边; 否则先计算重置集合, 重置节点和
    [v: dj, α] 作为同一批修改应用。

    Raises
    ------
        PreconditionError: 不可执行, 或要翻转一个已证成节点的假设
    """
    alpha = executable(j, v, dj, debug=debug)
    if alpha is None:
        msg = f"Justify({v}, {dj}) 不可执行"
        raise PreconditionError(msg)
    if j.hyp(v) is alpha:
        j.apply([Update(v, dj, alpha)])
        return JustifyEffect(winner=alpha, reset=frozenset())
    if j.is_justified(v):
        msg = f"节点 {v} 已证成, 不能翻转其假设"
        raise PreconditionError(msg)

    reset = reset_set(j, v, dj, policy)
    updates = [Update(w, None, j.default_winner(w)) for w in sorted(reset)]
    updates.append(Update(v, dj, alpha))
    j.apply(updates)
    return JustifyEffect(winner=alpha, reset=frozenset(reset), flipped=True)


def justify(
    j: Justification,
    v: int,
    dj: DirectJustification,
    policy: ResetPolicy = ResetPolicy.MINIMAL,
    *,
    debug: bool = False,
) -> Justification:
    """Justify(J, v, dj), 原地修改并返回 J."""
    perform_justify(j, v, dj, policy, debug=debug)
    return j


@total_ordering
@dataclass(frozen=True)
class SizeTuple:
    """证成的大小: 每个层级上已证成节点的个数.

    层级从 +∞ 开始按优先级降序排列到博弈的最小优先级, 比较按字典序。

    >>> a = SizeTuple(levels=(INFINITY, 1, 0), counts=(0, 1, 0))
    >>> b = SizeTuple(levels=(INFINITY, 1, 0), counts=(1, 0, 0))
    >>> a < b
    True
    >>> str(b)
    'inf:1,1:0,0:0'
    """

    levels: tuple[Level, ...]
    counts: tuple[int, ...]

    def _check_levels(self, other: "SizeTuple") -> None:
        if self.levels != other.levels:
            msg = "只能比较同一博弈的大小元组"
            raise ValueError(msg)

    def __lt__(self, other: object) -> bool:
        """字典序比较."""
        if not isinstance(other, SizeTuple):
            return NotImplemented
        self._check_levels(other)
        return self.counts < other.counts

    def count(self, level: Level) -> int:
        """层级 level 上的节点数."""
        return self.counts[self.levels.index(level)]

    @property
    def total(self) -> int:
        """已证成节点总数."""
        return sum(self.counts)

    def __str__(self) -> str:
        """格式如 ``inf:2,4:0,3:1``."""
        return ",".join(
            f"{'inf' if level == INFINITY else level}:{n}"
            for level, n in zip(self.levels, self.counts, strict=True)
        )


def size_levels(j: Justification) -> tuple[Level, ...]:
    """大小元组的层级: +∞ 然后是从最大到最小的优先级."""
    game = j.game
    return (INFINITY, *range(game.max_priority, game.min_priority - 1, -1))


def size(j: Justification) -> SizeTuple:
    """s_J: s_i 为证成层级为 i 的已证成节点个数."""
    levels = size_levels(j)
    position = {level: i for i, level in enumerate(levels)}
    counts = [0] * len(levels)
    for v in j.game.nodes:
        if j.is_justified(v):
            counts[position[j.jl(v)]] += 1
    return SizeTuple(levels=levels, counts=tuple(counts))


def lex_compare(a: SizeTuple, b: SizeTuple) -> int:
    """字典序比较, 返回 -1, 0 或 1."""
    if a == b:
        return 0
    return -1 if a < b else 1


def find_justifiable(j: Justification) -> tuple[int, DirectJustification] | None:
    """按最小优先级构造一个可执行的 (v, dj).

    p 是未证成节点的最小优先级, v 取其中编号最小者。所有者能走到假设与自己
    相同的后继时选第一条这样的边, 否则取全部出边。没有未证成节点时返回 None。
    """
    unjustified = j.unjustified()
    if not unjustified:
        return None
    game = j.game
    p = min(game.priority(v) for v in unjustified)
    v = next(v for v in unjustified if game.priority(v) == p)
    owner = game.owner(v)
    for w in game.successors_of(v):
        if j.hyp(w) is owner:
            return v, DirectJustification.edge(w)
    return v, DirectJustification.all_edges()


def candidate_djs(j: Justification, v: int) -> list[DirectJustification]:
    """v 所有形状合法的直接证成: 每条单边, 以及多于一个后继时的全部出边."""
    successors = j.game.successors_of(v)
    candidates = [DirectJustification.edge(w) for w in successors]
    if len(successors) > 1:
        candidates.append(DirectJustification.all_edges())
    return candidates


def executable_moves(j: Justification) -> Iterator[Move]:
    """枚举所有可执行的 (v, dj, α), 不含对已证成节点的翻转."""
    for v in j.game.nodes:
        for dj in candidate_djs(j, v):
            alpha = executable(j, v, dj)
            if alpha is None:
                continue
            if j.is_justified(v) and j.hyp(v) is not alpha:
                continue
            yield Move(v, dj, alpha)


@dataclass(frozen=True, slots=True)
class TraceStep:
    """跟踪中的一步."""

    step: int
    node: int
    targets: tuple[int, ...]
    winner: Player
    reset: frozenset[int]
    size_before: SizeTuple
    size_after: SizeTuple
    safe: bool | None = None


@dataclass
class JustifyTrace:
    """求解过程中所有 Justify 步骤的记录."""

    steps: list[TraceStep] = field(default_factory=list)

    def record(
        self,
        j: Justification,
        v: int,
        effect: JustifyEffect,
        size_before: SizeTuple,
        size_after: SizeTuple,
        safe: bool | None = None,
    ) -> TraceStep:
        """追加一步."""
        step = TraceStep(
            step=len(self.steps) + 1,
            node=v,
            targets=j.targets(v),
            winner=effect.winner,
            reset=effect.reset,
            size_before=size_before,
            size_after=size_after,
            safe=safe,
        )
        self.steps.append(step)
        return step

    def __len__(self) -> int:
        """步数."""
        return len(self.steps)

    def is_monotone(self) -> bool:
        """每一步的大小是否严格增加."""
        return all(s.size_after > s.size_before for s in self.steps)
