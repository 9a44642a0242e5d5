"""求解器测试."""

from collections.abc import Iterable

import pytest
from pytest_mock import MockerFixture

from src.config import Algorithm, SolverConfig
from src.core import SolverFactory
from src.game import ParityGame, Player, build_game, check_solution
from src.justification import (
    INFINITY,
    DirectJustification,
    Justification,
    JustifyEffect,
    Level,
    ResetPolicy,
    ReverseIndexKind,
    SafetyReport,
    Witness,
)
from src.services import (
    AuditError,
    FixpointSolver,
    PromotionSolver,
    ZielonkaSolver,
    closed,
    escape_level,
    oracle_solve,
    random_game,
    solve_fixpoint,
    solve_priority_promotion,
    solve_zielonka,
)
from tests.conftest import B, D, E, F

ALGORITHMS = list(Algorithm)
POLICIES = list(ResetPolicy)


@pytest.mark.parametrize("policy", POLICIES)
@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_example_game(example_game: ParityGame, algorithm: Algorithm, policy: ResetPolicy) -> None:
    """示例博弈全部由 1 赢得, 审计通过, 跟踪严格递增."""
    config = SolverConfig(algorithm=algorithm, reset_policy=policy, audit=True)
    solver = SolverFactory.create_solver(example_game, config)
    solution, trace = solver.solve()
    assert solution.winner == (Player.ODD,) * 6
    assert check_solution(example_game, {}, solution)
    assert not solver.j.has_unjustified()
    assert trace.is_monotone()
    assert len(trace) == solver.stats.steps
    if policy is ResetPolicy.MINIMAL:
        assert solver.stats.fallback_steps == 0


def test_factory_picks_solver_class(example_game: ParityGame) -> None:
    """按算法创建对应的求解器."""
    expected = {
        Algorithm.FIXPOINT: FixpointSolver,
        Algorithm.ZIELONKA: ZielonkaSolver,
        Algorithm.PRIORITY_PROMOTION: PromotionSolver,
    }
    for algorithm, cls in expected.items():
        solver = SolverFactory.create_solver(example_game, SolverConfig(algorithm=algorithm))
        assert type(solver) is cls
    assert SolverFactory() is SolverFactory()


def test_promotions(promotion_game: ParityGame) -> None:
    """低区域先提升到 6, 然后整个博弈提升到 +∞."""
    solver = PromotionSolver(promotion_game, SolverConfig(audit=True))
    solution, _ = solver.solve()
    assert solution.winner == (Player.EVEN,) * 5
    assert [(r.level, r.escape_level) for r in solver.stats.promotions] == [(2, 6), (6, INFINITY)]
    assert solver.stats.fallback_steps == 0
    assert check_solution(promotion_game, {}, solution)


def test_zielonka_on_promotion_game(promotion_game: ParityGame) -> None:
    """Zielonka 在同一个博弈上不需要补全."""
    solver = ZielonkaSolver(promotion_game, SolverConfig(audit=True))
    solution, _ = solver.solve()
    assert solution.winner == (Player.EVEN,) * 5
    assert solver.stats.fallback_steps == 0
    assert solver.stats.frames >= 1


def test_functional_wrappers(example_game: ParityGame) -> None:
    """函数形式的入口与求解器类一致."""
    for solve in (solve_fixpoint, solve_zielonka, solve_priority_promotion):
        solution, trace = solve(example_game)
        assert solution.winner == (Player.ODD,) * 6
        # 默认不记录跟踪
        assert len(trace) == 0


def test_trace_option(example_game: ParityGame) -> None:
    """只开启跟踪时每一步都有记录, 安全列为空."""
    solver = FixpointSolver(example_game, SolverConfig(trace=True))
    _, trace = solver.solve()
    assert len(trace) == solver.stats.steps > 0
    assert all(step.safe is None for step in trace.steps)
    assert trace.steps[0].step == 1


@pytest.mark.parametrize("seed", range(40))
def test_matches_oracle(seed: int) -> None:
    """小随机博弈上与穷举结果一致, 最小重置下不需要补全."""
    game = random_game(seed, 3 + seed % 4, 5, 0.2 + (seed % 5) * 0.15)
    expected = oracle_solve(game).winner
    for algorithm in ALGORITHMS:
        solver = SolverFactory.create_solver(game, SolverConfig(algorithm=algorithm, audit=True))
        solution, trace = solver.solve()
        assert solution.winner == expected, algorithm
        assert check_solution(game, {}, solution)
        assert solver.stats.fallback_steps == 0
        assert trace.is_monotone()


@pytest.mark.parametrize("seed", range(20))
def test_aggressive_policy(seed: int) -> None:
    """激进重置下结果相同且每一步都安全."""
    game = random_game(seed, 6, 5, 0.35)
    expected = oracle_solve(game).winner
    for algorithm in ALGORITHMS:
        config = SolverConfig(
            algorithm=algorithm,
            reset_policy=ResetPolicy.AGGRESSIVE,
            audit=True,
        )
        solution, _ = SolverFactory.create_solver(game, config).solve()
        assert solution.winner == expected


@pytest.mark.parametrize("seed", range(10))
def test_reverse_index_kinds_agree(seed: int) -> None:
    """两种反向依赖编码给出同样的跟踪."""
    game = random_game(seed, 7, 5, 0.3)
    traces = []
    for kind in ReverseIndexKind:
        config = SolverConfig(algorithm=Algorithm.ZIELONKA, trace=True, reverse_index=kind)
        _, trace = ZielonkaSolver(game, config).solve()
        traces.append([(s.node, s.targets, s.winner) for s in trace.steps])
    assert traces[0] == traces[1]


def test_single_node_game() -> None:
    """只有一个自环节点的博弈."""
    game = build_game([0], [3], [[0]])
    for algorithm in ALGORITHMS:
        solver = SolverFactory.create_solver(game, SolverConfig(algorithm=algorithm))
        solution, _ = solver.solve()
        assert solution.winner == (Player.ODD,)
        assert solution.strategy1 == {}


def test_audit_error_on_unsafe_state(example_game: ParityGame, mocker: MockerFixture) -> None:
    """审计发现不安全状态时报告步骤和证据."""
    unsafe = SafetyReport(
        weakly_winning=True,
        winning=True,
        safe=False,
        witnesses=[Witness("level-below-priority", (B,))],
    )
    mocker.patch("src.services.base_solver.check_safe", return_value=unsafe)
    solver = FixpointSolver(example_game, SolverConfig(audit=True))
    with pytest.raises(AuditError) as excinfo:
        solver.solve()
    assert excinfo.value.step == 1
    assert excinfo.value.witnesses == ["level-below-priority(1)"]


def test_closed_and_escape_level(example_state: Justification) -> None:
    """区域闭合判断和逃逸层级."""
    region = frozenset({E, F})
    assert escape_level(example_state, region) == 2
    assert escape_level(example_state, frozenset({B})) == 3
    assert escape_level(example_state, region, {D: 6}) == 6
    # 子博弈中优先级为 2 的 d 未证成
    assert not closed(example_state, region, frozenset({D, E, F}), 2)
    assert closed(example_state, region, frozenset({E, F}), 1)
    assert example_state.direct(F) == DirectJustification.all_edges()


class _LoopRecordingZielonka(ZielonkaSolver):
    """记录每个吸引循环中证成的节点."""

    def __init__(self, game: ParityGame, config: SolverConfig) -> None:
        super().__init__(game, config)
        self.loops: list[list[int]] = []
        self.current: list[int] | None = None

    def _attract(
        self,
        subgame: frozenset[int],
        players: tuple[Player, ...],
        min_level: Level,
        rejustify_below: Level | None = None,
        seeds: Iterable[int] | None = None,
    ) -> int:
        self.current = []
        self.loops.append(self.current)
        try:
            return super()._attract(subgame, players, min_level, rejustify_below, seeds)
        finally:
            self.current = None

    def _justify(self, v: int, dj: DirectJustification) -> JustifyEffect:
        if self.current is not None:
            self.current.append(v)
        return super()._justify(v, dj)


@pytest.mark.parametrize("seed", range(30))
def test_zielonka_justifies_each_node_once_per_loop(seed: int) -> None:
    """一个吸引循环内每个节点至多证成一次."""
    game = random_game(seed, 7, 6, 0.2 + (seed % 5) * 0.15)
    solver = _LoopRecordingZielonka(game, SolverConfig(algorithm=Algorithm.ZIELONKA))
    solver.solve()
    assert solver.loops
    for loop in solver.loops:
        assert len(loop) == len(set(loop))


@pytest.mark.parametrize("seed", range(30))
def test_zielonka_loop_heads(seed: int, mocker: MockerFixture) -> None:
    """每个循环头都经过审计: 层级不低于 p, 对手没有高于 p 的直接证成."""
    game = random_game(seed, 7, 6, 0.2 + (seed % 5) * 0.15)
    spy = mocker.spy(ZielonkaSolver, "_audit_head")
    solver = ZielonkaSolver(game, SolverConfig(algorithm=Algorithm.ZIELONKA, audit=True))
    solution, _ = solver.solve()
    assert spy.call_count >= solver.stats.frames
    assert solution.winner == oracle_solve(game).winner


class _ResetRecordingPromotion(PromotionSolver):
    """记录被重置时证成层级为 +∞ 的节点."""

    def __init__(self, game: ParityGame, config: SolverConfig) -> None:
        super().__init__(game, config)
        self.removed_resets: set[int] = set()
        self.resets = 0

    def _justify(self, v: int, dj: DirectJustification) -> JustifyEffect:
        removed = {u for u in self.game.nodes if self.j.jl(u) == INFINITY}
        effect = super()._justify(v, dj)
        self.resets += len(effect.reset)
        self.removed_resets |= effect.reset & removed
        return effect


@pytest.mark.parametrize("policy", POLICIES)
@pytest.mark.parametrize("seed", range(30))
def test_promotion_keeps_removed_nodes(seed: int, policy: ResetPolicy) -> None:
    """优先级提升从不重置证成层级为 +∞ 的节点."""
    game = random_game(seed, 7, 6, 0.2 + (seed % 5) * 0.15)
    config = SolverConfig(algorithm=Algorithm.PRIORITY_PROMOTION, reset_policy=policy)
    solver = _ResetRecordingPromotion(game, config)
    solution, _ = solver.solve()
    assert solver.removed_resets == set()
    assert solution.winner == oracle_solve(game).winner


class _RegionCheckingPromotion(PromotionSolver):
    """记录重置之后仍留在区域层级表中的节点."""

    def __init__(self, game: ParityGame, config: SolverConfig) -> None:
        super().__init__(game, config)
        self.stale: set[int] = set()

    def _justify(self, v: int, dj: DirectJustification) -> JustifyEffect:
        effect = super()._justify(v, dj)
        self.stale |= effect.reset.intersection(self.region_level)
        return effect


@pytest.mark.parametrize("policy", POLICIES)
@pytest.mark.parametrize("seed", range(30))
def test_region_levels_follow_resets(seed: int, policy: ResetPolicy) -> None:
    """被重置的节点不再带着旧的区域层级, 逃逸层级不低于区域的优先级."""
    game = random_game(seed, 7, 6, 0.2 + (seed % 5) * 0.15)
    config = SolverConfig(algorithm=Algorithm.PRIORITY_PROMOTION, reset_policy=policy)
    solver = _RegionCheckingPromotion(game, config)
    solution, _ = solver.solve()
    assert solver.stale == set()
    assert all(r.escape_level >= r.level for r in solver.stats.promotions)
    assert solution.winner == oracle_solve(game).winner


def test_region_levels_are_rebuilt_each_round(example_game: ParityGame) -> None:
    """上一次求解遗留的区域层级不影响逃逸层级."""
    solver = PromotionSolver(example_game)
    solver.region_level = dict.fromkeys(example_game.nodes, 99)
    solution, _ = solver.solve()
    assert solution.winner == (Player.ODD,) * 6
    assert 99 not in solver.region_level.values()
    assert all(r.escape_level != 99 for r in solver.stats.promotions)
