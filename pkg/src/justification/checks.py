"""证成性质检查.

弱胜、胜和安全三个谓词，以及从证成中提取策略。胜的检查对每个假设类别的
D 子图做强连通分量分析，失败时给出具体的环作为证据。
"""

from dataclasses import dataclass, field

import networkx as nx

from src.game import Player, winner_of_priority
from src.justification.justification import (
    DirectJustification,
    Justification,
    JustificationError,
)


@dataclass(frozen=True, slots=True)
class Witness:
    """检查失败的证据: 一个节点或一个环."""

    kind: str
    nodes: tuple[int, ...]

    def __str__(self) -> str:
        """格式如 ``losing-cycle(0,1)``."""
        return f"{self.kind}({','.join(str(v) for v in self.nodes)})"


@dataclass
class CheckResult:
    """单项检查的结果."""

    ok: bool
    witnesses: list[Witness] = field(default_factory=list)

    def __bool__(self) -> bool:
        """检查是否通过."""
        return self.ok


@dataclass
class SafetyReport:
    """安全检查报告. safe 蕴含 winning, winning 蕴含 weakly_winning."""

    weakly_winning: bool
    winning: bool
    safe: bool
    witnesses: list[Witness] = field(default_factory=list)

    def witness_nodes(self) -> set[int]:
        """所有证据涉及的节点."""
        return {v for w in self.witnesses for v in w.nodes}


def wins_for(j: Justification, v: int, dj: DirectJustification) -> Player | None:
    """在假设 H 下 dj 为哪名玩家赢得 v.

    所有者 α 只需一条通往 H=α 节点的边；非 α 所有的节点需要全部出边都通往
    H=α 的节点。两者都不满足时返回 None。

    Raises
    ------
        JustificationError: dj 不是 v 的出边
    """
    game = j.game
    successors = game.successors_of(v)
    if dj.target is not None and dj.target not in successors:
        msg = f"直接证成 {v}->{dj.target} 不是博弈的边"
        raise JustificationError(msg)
    targets = dj.targets(game, v)
    winners = {j.hyp(w) for w in targets}
    if len(winners) != 1:
        return None
    alpha = winners.pop()
    if len(targets) == 1:
        # 单条边: 所有者自己选, 或者这本来就是唯一的出边
        if game.owner(v) is alpha or len(successors) == 1:
            return alpha
        return None
    if game.owner(v) is not alpha:
        return alpha
    return None


def check_weakly_winning(j: Justification) -> CheckResult:
    """每个已证成节点的直接证成都为 H(v) 赢得 v."""
    witnesses = [
        Witness("not-weakly-winning", (v,))
        for v in j.game.nodes
        if (dj := j.direct(v)) is not None and wins_for(j, v, dj) is not j.hyp(v)
    ]
    return CheckResult(ok=not witnesses, witnesses=witnesses)


def _cycle_through(graph: nx.DiGraph, component: set[int], anchor: int) -> tuple[int, ...]:
    """强连通分量中经过 anchor 的一个环, 从最小编号开始."""
    sub = graph.subgraph(component)
    best: list[int] | None = None
    for w in sub.successors(anchor):
        path = nx.shortest_path(sub, w, anchor)
        if best is None or len(path) < len(best):
            best = path
    cycle = [anchor] if best is None else [anchor, *best[:-1]]
    start = cycle.index(min(cycle))
    return tuple(cycle[start:] + cycle[:start])


def _d_graph(j: Justification) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(j.game.nodes)
    graph.add_edges_from(j.edges())
    return graph


def losing_cycles(j: Justification) -> list[Witness]:
    """D 中最大优先级的胜者与假设不一致的环.

    对每个假设类别 α 和每个对手奇偶性的优先级 q, 只看 α 类中优先级不超过 q 的
    节点; 含 q 节点的非平凡强连通分量里就有一个最大优先级为 q 的环。
    """
    game = j.game
    graph = _d_graph(j)
    witnesses: list[Witness] = []
    for alpha in Player:
        members = [v for v in game.nodes if j.hyp(v) is alpha]
        bad_priorities = sorted(
            {game.priority(v) for v in members if winner_of_priority(game.priority(v)) is not alpha},
        )
        for q in bad_priorities:
            low = [v for v in members if game.priority(v) <= q]
            sub = graph.subgraph(low)
            for component in nx.strongly_connected_components(sub):
                anchors = sorted(v for v in component if game.priority(v) == q)
                if not anchors:
                    continue
                if len(component) == 1 and not sub.has_edge(anchors[0], anchors[0]):
                    continue
                witnesses.append(Witness("losing-cycle", _cycle_through(sub, component, anchors[0])))
    return witnesses


def check_winning(j: Justification) -> CheckResult:
    """弱胜, 且 D 中每个环的最大优先级的胜者等于环上节点的假设."""
    weak = check_weakly_winning(j)
    if not weak:
        return weak
    witnesses = losing_cycles(j)
    return CheckResult(ok=not witnesses, witnesses=witnesses)


def check_safe(j: Justification) -> SafetyReport:
    """安全检查: 胜, 参数的假设为默认胜者, 且每个节点的证成层级不低于其优先级.

    三个条件的证据全部收集, 便于诊断。
    """
    weak = check_weakly_winning(j)
    witnesses = list(weak.witnesses)
    winning = False
    if weak.ok:
        cycles = losing_cycles(j)
        witnesses.extend(cycles)
        winning = not cycles

    game = j.game
    wrong_params = [
        Witness("parameter-not-default", (v,))
        for v in j.unjustified()
        if j.hyp(v) is not j.default_winner(v)
    ]
    low_levels = [
        Witness("level-below-priority", (v,)) for v in game.nodes if j.jl(v) < game.priority(v)
    ]
    witnesses.extend(wrong_params)
    witnesses.extend(low_levels)
    safe = winning and not wrong_params and not low_levels
    return SafetyReport(weakly_winning=weak.ok, winning=winning, safe=safe, witnesses=witnesses)


def extract_strategy(j: Justification, player: Player) -> dict[int, int]:
    """σ_{J,α}: O(v)=H(v)=α 的已证成节点在 D 中选的那条边."""
    strategy: dict[int, int] = {}
    for v in j.game.nodes:
        if j.game.owner(v) is not player or j.hyp(v) is not player:
            continue
        targets = j.targets(v)
        if targets:
            strategy[v] = targets[0]
    return strategy
