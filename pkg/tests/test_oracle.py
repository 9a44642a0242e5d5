"""穷举求解测试."""

import logging
import random
from collections.abc import Mapping

import networkx as nx
import pytest

from src.game import (
    ParameterMap,
    ParityGame,
    Play,
    Player,
    build_game,
    check_solution,
    play_winner,
    ppg_to_pg,
)
from src.services import (
    OracleBoundError,
    OracleService,
    enumerate_plays,
    oracle_solve,
    oracle_winners,
    random_game,
)
from tests.conftest import A, B, C, D, E, F

PARAMS = {A: Player.ODD, D: Player.EVEN}


def _random_params(game: ParityGame, seed: int) -> dict[int, Player]:
    rng = random.Random(seed)
    return {v: Player(rng.randint(0, 1)) for v in game.nodes if rng.random() < 0.3}


def test_example_game_with_parameters(example_game: ParityGame) -> None:
    """P = {a: 1, d: 0} 时 b, c 归 1, e, f 归 0."""
    solution = oracle_solve(example_game, PARAMS)
    assert solution.winner[B] is Player.ODD
    assert solution.winner[C] is Player.ODD
    assert solution.winner[E] is Player.EVEN
    assert solution.winner[F] is Player.EVEN
    assert solution.winner[A] is Player.ODD
    assert solution.winner[D] is Player.EVEN
    assert check_solution(example_game, PARAMS, solution)


def test_witness_strategies_cover_regions(example_game: ParityGame) -> None:
    """见证策略覆盖胜者自己的全部节点."""
    solution = oracle_solve(example_game)
    assert solution.strategy1.keys() == {A, C, D, F}
    assert solution.strategy0 == {}


def test_node_bound(example_game: ParityGame) -> None:
    """超过节点数上限时放弃."""
    with pytest.raises(OracleBoundError, match="上限 3"):
        oracle_solve(example_game, bound=3)
    with pytest.raises(OracleBoundError):
        oracle_solve(random_game(0, 13, 2))


def test_strategy_limit(example_game: ParityGame) -> None:
    """策略数超过上限时放弃."""
    with pytest.raises(OracleBoundError, match="策略"):
        oracle_solve(example_game, strategy_limit=1)


def test_enumerate_plays(example_game: ParityGame) -> None:
    """从 e 出发的全部极大对局."""
    plays = enumerate_plays(example_game, PARAMS, E)
    assert set(plays) == {
        Play((E, D)),
        Play((E, F), cycle_start=0),
        Play((E, F), cycle_start=1),
    }
    winners = {play: play_winner(example_game, PARAMS, play) for play in plays}
    assert winners[Play((E, D))] is Player.EVEN
    assert winners[Play((E, F), cycle_start=0)] is Player.ODD
    assert winners[Play((E, F), cycle_start=1)] is Player.EVEN


def test_enumerate_plays_with_strategy(example_game: ParityGame) -> None:
    """策略中的节点只走策略的边."""
    plays = enumerate_plays(example_game, PARAMS, E, {E: D})
    assert plays == [Play((E, D))]


def test_play_limit(example_game: ParityGame) -> None:
    """对局数超过上限时放弃."""
    with pytest.raises(OracleBoundError):
        enumerate_plays(example_game, PARAMS, E, limit=1)


def test_random_game_is_reproducible() -> None:
    """同一种子生成同一个博弈, 每个节点都有后继."""
    game = random_game(7, 8, 6, 0.1)
    assert game == random_game(7, 8, 6, 0.1)
    assert all(game.successors_of(v) for v in game.nodes)
    assert max(game.priorities) <= 6
    full = random_game(3, 4, 2, 1.0)
    assert all(game_succ == (0, 1, 2, 3) for game_succ in full.successors)


@pytest.mark.parametrize(("n_nodes", "max_priority"), [(0, 3), (3, -1)])
def test_random_game_arguments(n_nodes: int, max_priority: int) -> None:
    """节点数和最大优先级的范围."""
    with pytest.raises(ValueError, match="必须|不能"):
        random_game(0, n_nodes, max_priority)


def test_service_logs_bound(example_game: ParityGame, caplog: pytest.LogCaptureFixture) -> None:
    """服务放弃时记录警告并继续抛出."""
    service = OracleService(bound=2)
    with caplog.at_level(logging.WARNING), pytest.raises(OracleBoundError):
        service.solve(example_game)
    assert "穷举求解放弃" in caplog.text


def test_service_plays() -> None:
    """服务使用配置的对局上限."""
    game = build_game([0], [0], [[0]])
    service = OracleService(play_limit=5)
    assert service.plays(game, {}, 0) == [Play((0,), cycle_start=0)]


def test_one_sided_enumeration(example_game: ParityGame) -> None:
    """只求胜者时只需要策略较少一方在上限之内."""
    with pytest.raises(OracleBoundError):
        oracle_solve(example_game, strategy_limit=4)
    assert oracle_winners(example_game, strategy_limit=4) == (Player.ODD,) * 6
    with pytest.raises(OracleBoundError, match="策略"):
        oracle_winners(example_game, strategy_limit=3)


@pytest.mark.parametrize("seed", range(30))
def test_one_sided_winners_match_full_oracle(seed: int) -> None:
    """两种穷举方式的胜者相同."""
    game = random_game(seed, 6, 4, 0.5)
    params = _random_params(game, seed)
    assert oracle_winners(game, params) == oracle_solve(game, params).winner


@pytest.mark.parametrize("seed", range(30))
def test_parameter_reduction_preserves_winners(seed: int) -> None:
    """参数换成自环后每个节点的胜者不变."""
    game = random_game(seed, random.Random(seed).randint(2, 7), 4, 0.4)
    params = _random_params(game, seed)
    reduced = ppg_to_pg(game, params)
    assert oracle_solve(game, params).winner == oracle_solve(reduced, {}).winner


def _count_plays(
    game: ParityGame,
    params: ParameterMap,
    start: int,
    strategy: Mapping[int, int],
) -> int:
    """用 networkx 的简单路径重新数极大对局.

    参数节点没有出边; 每条从 start 出发的简单路径, 停在参数节点时算一个对局,
    否则每条回到路径上的出边算一个对局。
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(game.nodes)
    for u in game.nodes:
        if u in params:
            continue
        moves = (strategy[u],) if u in strategy else game.successors_of(u)
        graph.add_edges_from((u, w) for w in moves)
    paths: list[list[int]] = [[start]]
    for target in game.nodes:
        if target != start:
            paths.extend(nx.all_simple_paths(graph, start, target))
    count = 0
    for path in paths:
        last = path[-1]
        if last in params:
            count += 1
        else:
            count += sum(1 for w in graph.successors(last) if w in path)
    return count


@pytest.mark.parametrize("seed", range(20))
def test_play_count_matches_simple_path_count(seed: int) -> None:
    """对局数与简单路径的独立计数一致."""
    game = random_game(seed, 6, 3, 0.4)
    params = _random_params(game, seed)
    strategy = {
        v: game.successors_of(v)[0]
        for v in game.nodes
        if game.owner(v) is Player.EVEN and v not in params
    }
    for start in game.nodes:
        for sigma in ({}, strategy):
            plays = enumerate_plays(game, params, start, sigma)
            assert len(plays) == len(set(plays))
            assert len(plays) == _count_plays(game, params, start, sigma)
