"""对局与解模块.

对局用有限前缀加终止标记表示：要么停在参数节点，要么进入一个环。
解由每个节点的胜者和两名玩家的无记忆策略组成，可以独立校验。
"""

from collections.abc import Mapping
from dataclasses import dataclass, field

import networkx as nx

from src.game.parity_game import ParameterMap, ParityGame, Player, winner_of_priority


class PlayError(ValueError):
    """对局与博弈不一致."""


@dataclass(frozen=True, slots=True)
class Play:
    """对局的有限前缀表示.

    ``cycle_start`` 为 None 表示对局停在最后一个节点（参数）；否则最后一个节点
    之后回到 ``nodes[cycle_start]``，``nodes[cycle_start:]`` 无限重复。
    """

    nodes: tuple[int, ...]
    cycle_start: int | None = None

    @property
    def halted(self) -> bool:
        """是否停在参数节点."""
        return self.cycle_start is None

    @property
    def cycle(self) -> tuple[int, ...]:
        """环部分，停止的对局为空."""
        if self.cycle_start is None:
            return ()
        return self.nodes[self.cycle_start :]


def _check_play(game: ParityGame, params: ParameterMap, play: Play) -> None:
    if not play.nodes:
        msg = "对局不能为空"
        raise PlayError(msg)
    for v, w in zip(play.nodes, play.nodes[1:], strict=False):
        if w not in game.successors_of(v):
            msg = f"对局中 ({v},{w}) 不是博弈的边"
            raise PlayError(msg)
    if any(v in params for v in play.nodes[:-1]):
        msg = "对局在参数节点之后继续"
        raise PlayError(msg)
    if play.cycle_start is None:
        if play.nodes[-1] not in params:
            msg = f"停止的对局必须结束在参数节点, 实际为 {play.nodes[-1]}"
            raise PlayError(msg)
        return
    if not 0 <= play.cycle_start < len(play.nodes):
        msg = f"环起点 {play.cycle_start} 越界"
        raise PlayError(msg)
    if play.nodes[-1] in params:
        msg = "进入环的对局不能经过参数节点"
        raise PlayError(msg)
    if play.nodes[play.cycle_start] not in game.successors_of(play.nodes[-1]):
        msg = "环的最后一个节点没有回到环起点的边"
        raise PlayError(msg)


def play_winner(game: ParityGame, params: ParameterMap, play: Play) -> Player:
    """对局的胜者.

    停止的对局由最后一个参数的指定胜者赢得；进入环的对局由环上最大优先级的胜者赢得。

    Raises
    ------
        PlayError: 对局与博弈或参数不一致
    """
    _check_play(game, params, play)
    if play.cycle_start is None:
        return params[play.nodes[-1]]
    return winner_of_priority(max(game.priority(v) for v in play.cycle))


@dataclass(frozen=True)
class Solution:
    """博弈的解: 胜者映射和两名玩家的无记忆策略."""

    winner: tuple[Player, ...]
    strategy0: dict[int, int] = field(default_factory=dict)
    strategy1: dict[int, int] = field(default_factory=dict)

    def strategy(self, player: Player) -> dict[int, int]:
        """玩家的策略."""
        return self.strategy0 if player is Player.EVEN else self.strategy1

    def region(self, player: Player) -> set[int]:
        """玩家赢得的节点集合."""
        return {v for v, w in enumerate(self.winner) if w is player}


@dataclass(frozen=True, slots=True)
class Problem:
    """解校验发现的问题."""

    kind: str
    node: int
    detail: str = ""

    def __str__(self) -> str:
        """格式如 ``lost-node(4: ...)``."""
        return f"{self.kind}({self.node}: {self.detail})" if self.detail else f"{self.kind}({self.node})"


@dataclass
class SolutionReport:
    """解校验报告. 策略域错误与胜者错误分开报告."""

    domain_problems: list[Problem] = field(default_factory=list)
    winner_problems: list[Problem] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """解是否正确."""
        return not self.domain_problems and not self.winner_problems

    @property
    def problems(self) -> list[Problem]:
        """全部问题."""
        return self.domain_problems + self.winner_problems


def _strategy_domain(
    game: ParityGame,
    params: ParameterMap,
    solution: Solution,
    player: Player,
) -> set[int]:
    return {
        v
        for v in game.nodes
        if solution.winner[v] is player
        and game.owner(v) is player
        and params.get(v) is not player
    }


def _check_domains(
    game: ParityGame,
    params: ParameterMap,
    solution: Solution,
    report: SolutionReport,
) -> None:
    if len(solution.winner) != game.size:
        report.domain_problems.append(Problem("winner-size", game.size, str(len(solution.winner))))
        return
    for player in Player:
        strategy = solution.strategy(player)
        expected = _strategy_domain(game, params, solution, player)
        report.domain_problems.extend(
            Problem("missing-strategy", v, f"player {int(player)}")
            for v in sorted(expected - strategy.keys())
        )
        report.domain_problems.extend(
            Problem("extra-strategy", v, f"player {int(player)}")
            for v in sorted(strategy.keys() - expected)
        )
        report.domain_problems.extend(
            Problem("not-a-successor", v, f"{v}->{w}")
            for v, w in sorted(strategy.items())
            if v in expected and w not in game.successors_of(v)
        )


def restricted_graph(
    game: ParityGame,
    params: ParameterMap,
    strategy: Mapping[int, int],
    player: Player,
) -> nx.DiGraph:
    """固定 player 的策略后剩下的博弈图. 参数节点没有出边."""
    graph = nx.DiGraph()
    graph.add_nodes_from(game.nodes)
    for v in game.nodes:
        if v in params:
            continue
        if game.owner(v) is player and v in strategy:
            graph.add_edge(v, strategy[v])
        else:
            graph.add_edges_from((v, w) for w in game.successors_of(v))
    return graph


def losing_targets(
    game: ParityGame,
    params: ParameterMap,
    graph: nx.DiGraph,
    player: Player,
) -> set[int]:
    """对手在受限图中能利用的节点: 对手的参数, 或者对手赢得的环上的节点.

    对每个对手奇偶性的优先级 q, 只看优先级不超过 q 的节点, 含 q 节点的非平凡
    强连通分量给出一个最大优先级为 q 的环。
    """
    opponent = player.opponent
    bad = {v for v, winner in params.items() if winner is opponent}
    for q in sorted({p for p in game.priorities if winner_of_priority(p) is opponent}):
        low = [v for v in game.nodes if game.priority(v) <= q and v not in params]
        sub = graph.subgraph(low)
        for component in nx.strongly_connected_components(sub):
            if not any(game.priority(v) == q for v in component):
                continue
            if len(component) > 1 or any(sub.has_edge(v, v) for v in component):
                bad |= component
    return bad


def verify_solution(game: ParityGame, params: ParameterMap, solution: Solution) -> SolutionReport:
    """校验解并给出反例节点.

    对每名玩家 α, 在按 α 的策略受限的图中, 从 α 赢得的节点出发, 对手既不能到达
    自己的参数, 也不能构成自己赢得的环。
    """
    report = SolutionReport()
    _check_domains(game, params, solution, report)
    if report.domain_problems:
        return report

    for player in Player:
        region = solution.region(player)
        if not region:
            continue
        graph = restricted_graph(game, params, solution.strategy(player), player)
        bad = losing_targets(game, params, graph, player)
        if not bad:
            continue
        reverse = graph.reverse(copy=False)
        reaching: set[int] = set()
        for target in bad:
            reaching.add(target)
            reaching |= nx.descendants(reverse, target)
        report.winner_problems.extend(
            Problem("lost-node", v, f"claimed winner {int(player)}")
            for v in sorted(region & reaching)
        )
    return report


def check_solution(game: ParityGame, params: ParameterMap, solution: Solution) -> bool:
    """解是否正确."""
    return verify_solution(game, params, solution).ok
