"""穷举求解与随机博弈.

独立于任何证成概念的参考求解器：枚举候选胜者的全部无记忆策略，固定策略后
用强连通分量分析判断对手能否逃到自己的参数或构成自己赢得的环。只适用于小博弈。
"""

import itertools
import math
import random
from collections.abc import Mapping

import networkx as nx

from src.game import ParameterMap, ParityGame, Play, Player, Solution, build_game
from src.game.solution import losing_targets, restricted_graph
from src.utils import get_logger

DEFAULT_NODE_BOUND = 12
DEFAULT_STRATEGY_LIMIT = 200_000
DEFAULT_PLAY_LIMIT = 100_000


class OracleBoundError(ValueError):
    """博弈超出穷举的规模上限."""


def _won_by_strategy(
    game: ParityGame,
    params: ParameterMap,
    strategy: Mapping[int, int],
    player: Player,
) -> set[int]:
    """固定 player 的策略后, player 从哪些节点必胜."""
    graph = restricted_graph(game, params, strategy, player)
    bad = losing_targets(game, params, graph, player)
    lost = set(bad)
    for target in bad:
        lost |= nx.ancestors(graph, target)
    return set(game.nodes) - lost


def _check_bound(game: ParityGame, bound: int) -> None:
    if game.size > bound:
        msg = f"博弈有 {game.size} 个节点, 超出穷举上限 {bound}"
        raise OracleBoundError(msg)


def _owned(game: ParityGame, params: ParameterMap, player: Player) -> list[int]:
    return [v for v in game.nodes if game.owner(v) is player and v not in params]


def strategy_count(game: ParityGame, params: ParameterMap, player: Player) -> int:
    """player 在非参数节点上的无记忆策略个数."""
    return math.prod(len(game.successors_of(v)) for v in _owned(game, params, player))


def _player_region(
    game: ParityGame,
    params: ParameterMap,
    player: Player,
    strategy_limit: int,
) -> tuple[set[int], dict[int, int]]:
    """枚举 player 的全部策略, 返回其胜区和一个赢下整个胜区的见证策略."""
    count = strategy_count(game, params, player)
    if count > strategy_limit:
        msg = f"玩家 {int(player)} 有 {count} 个策略, 超出上限 {strategy_limit}"
        raise OracleBoundError(msg)

    owned = _owned(game, params, player)
    candidates: list[tuple[dict[int, int], set[int]]] = []
    region: set[int] = set()
    for choice in itertools.product(*(game.successors_of(v) for v in owned)):
        strategy = dict(zip(owned, choice, strict=True))
        won = _won_by_strategy(game, params, strategy, player)
        candidates.append((strategy, won))
        region |= won
    witness = next((s for s, won in candidates if won >= region), {})
    return region, {v: w for v, w in witness.items() if v in region}


def oracle_winners(
    game: ParityGame,
    params: ParameterMap | None = None,
    *,
    bound: int = DEFAULT_NODE_BOUND,
    strategy_limit: int = DEFAULT_STRATEGY_LIMIT,
) -> tuple[Player, ...]:
    """只求胜者的穷举求解.

    只枚举策略较少的一方, 另一方的胜区取补集（无记忆确定性）。两名玩家策略数之积
    等于出度之积, 所以 8 个节点时较少一方至多 8^4 = 4096 个策略。

    Raises
    ------
        OracleBoundError: 超出节点数上限, 或两名玩家的策略数都超出上限

    >>> from src.game import build_game
    >>> oracle_winners(build_game([0], [1], [[0]]))
    (<Player.ODD: 1>,)
    """
    params = params or {}
    _check_bound(game, bound)
    player = min(Player, key=lambda p: strategy_count(game, params, p))
    region, _ = _player_region(game, params, player, strategy_limit)
    return tuple(player if v in region else player.opponent for v in game.nodes)


def oracle_solve(
    game: ParityGame,
    params: ParameterMap | None = None,
    *,
    bound: int = DEFAULT_NODE_BOUND,
    strategy_limit: int = DEFAULT_STRATEGY_LIMIT,
) -> Solution:
    """穷举求解参数化奇偶博弈.

    对每名玩家 α 枚举其在非参数节点上的全部无记忆策略, 节点由 α 赢得当且仅当
    某个策略在所有对手走法下都赢。见证策略取一个赢下整个 W_α 的策略。

    Args:
        game: 博弈
        params: 参数映射, 默认为空
        bound: 节点数上限
        strategy_limit: 每名玩家的策略数上限

    Returns
    -------
        胜者和两名玩家的见证策略

    Raises
    ------
        OracleBoundError: 超出节点数或策略数上限
    """
    params = params or {}
    _check_bound(game, bound)

    regions: dict[Player, set[int]] = {}
    strategies: dict[Player, dict[int, int]] = {}
    for player in Player:
        regions[player], strategies[player] = _player_region(game, params, player, strategy_limit)

    even, odd = regions[Player.EVEN], regions[Player.ODD]
    if even & odd or (even | odd) != set(game.nodes):
        msg = f"胜区不是划分: 重叠 {sorted(even & odd)}"
        raise RuntimeError(msg)
    winner = tuple(Player.EVEN if v in even else Player.ODD for v in game.nodes)
    return Solution(
        winner=winner,
        strategy0=strategies[Player.EVEN],
        strategy1=strategies[Player.ODD],
    )


def enumerate_plays(
    game: ParityGame,
    params: ParameterMap,
    start: int,
    strategy: Mapping[int, int] | None = None,
    *,
    limit: int = DEFAULT_PLAY_LIMIT,
) -> list[Play]:
    """从 start 出发与策略一致的全部极大对局.

    策略中有的节点只走策略的边, 其余节点走全部出边。对局在参数节点停止,
    或者在第一次回到已访问节点时以环结束。

    Raises
    ------
        OracleBoundError: 对局数超过 limit
    """
    strategy = strategy or {}
    plays: list[Play] = []
    stack: list[tuple[int, ...]] = [(start,)]
    while stack:
        path = stack.pop()
        u = path[-1]
        if u in params:
            plays.append(Play(path))
        else:
            moves = (strategy[u],) if u in strategy else game.successors_of(u)
            for w in reversed(moves):
                if w in path:
                    plays.append(Play(path, cycle_start=path.index(w)))
                else:
                    stack.append((*path, w))
        if len(plays) > limit:
            msg = f"对局数超过上限 {limit}"
            raise OracleBoundError(msg)
    return plays


def random_game(
    seed: int,
    n_nodes: int,
    max_priority: int,
    density: float = 0.3,
) -> ParityGame:
    """按种子生成可复现的随机博弈.

    每条边以概率 density 出现（density 为 1 时是含自环的完全图），没有后继的
    节点随机补一个后继。

    Raises
    ------
        ValueError: n_nodes 小于 1 或 max_priority 为负

    >>> random_game(1, 4, 3) == random_game(1, 4, 3)
    True
    """
    if n_nodes < 1:
        msg = f"节点数必须至少为 1, 实际为 {n_nodes}"
        raise ValueError(msg)
    if max_priority < 0:
        msg = f"最大优先级不能为负, 实际为 {max_priority}"
        raise ValueError(msg)
    rng = random.Random(seed)
    owners = [rng.randint(0, 1) for _ in range(n_nodes)]
    priorities = [rng.randint(0, max_priority) for _ in range(n_nodes)]
    successors: list[list[int]] = []
    for _ in range(n_nodes):
        succ = [w for w in range(n_nodes) if rng.random() < density]
        if not succ:
            succ = [rng.randrange(n_nodes)]
        successors.append(succ)
    return build_game(owners, priorities, successors)


class OracleService:
    """穷举求解服务, 规模上限来自配置."""

    def __init__(
        self,
        bound: int = DEFAULT_NODE_BOUND,
        strategy_limit: int = DEFAULT_STRATEGY_LIMIT,
        play_limit: int = DEFAULT_PLAY_LIMIT,
    ) -> None:
        """初始化穷举服务.

        Args:
            bound: 节点数上限
            strategy_limit: 每名玩家的策略数上限
            play_limit: 对局枚举上限
        """
        self.bound = bound
        self.strategy_limit = strategy_limit
        self.play_limit = play_limit
        self.logger = get_logger("OracleService")

    def solve(self, game: ParityGame, params: ParameterMap | None = None) -> Solution:
        """穷举求解."""
        self.logger.info(f"穷举求解: {game.size} 个节点, 上限 {self.bound}")
        try:
            return oracle_solve(
                game,
                params,
                bound=self.bound,
                strategy_limit=self.strategy_limit,
            )
        except OracleBoundError as e:
            self.logger.warning(f"穷举求解放弃: {e}")
            raise

    def plays(
        self,
        game: ParityGame,
        params: ParameterMap,
        start: int,
        strategy: Mapping[int, int] | None = None,
    ) -> list[Play]:
        """枚举对局."""
        return enumerate_plays(game, params, start, strategy, limit=self.play_limit)
