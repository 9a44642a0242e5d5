"""随机语料运行模块.

按种子生成随机博弈，用三个求解器求解，与穷举结果比较并校验解。
穷举只枚举策略较少的一方，所以 8 个节点以内的博弈都能与穷举比较；
仍然超出上限的博弈记为失败，只比较三个求解器之间的胜者并校验解。
多个工作进程时用 concurrent.futures 并行。
"""

import concurrent.futures
import random
import time
from collections.abc import Iterator
from dataclasses import dataclass, field

from src.config import Algorithm, SolverConfig
from src.core.solver_factory import SolverFactory
from src.game import Player, check_solution
from src.justification import ResetPolicy
from src.services import OracleBoundError, oracle_winners, random_game
from src.services.oracle_service import DEFAULT_STRATEGY_LIMIT
from src.utils import get_logger


@dataclass(frozen=True)
class CorpusSpec:
    """语料参数: 节点数、最大优先级和边密度的范围."""

    min_nodes: int = 3
    max_nodes: int = 8
    max_priority: int = 6
    min_density: float = 0.2
    max_density: float = 1.0
    strategy_limit: int = DEFAULT_STRATEGY_LIMIT
    audit: bool = False
    reset_policy: ResetPolicy = ResetPolicy.MINIMAL


@dataclass
class CaseResult:
    """一个种子的检查结果."""

    seed: int
    nodes: int
    problems: list[str] = field(default_factory=list)
    fallback_steps: dict[str, int] = field(default_factory=dict)
    oracle_skipped: bool = False

    @property
    def ok(self) -> bool:
        """是否全部一致."""
        return not self.problems


@dataclass
class CorpusReport:
    """语料运行汇总."""

    cases: list[CaseResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def failures(self) -> list[CaseResult]:
        """出问题的种子."""
        return [c for c in self.cases if not c.ok]

    @property
    def fallback_total(self) -> int:
        """补全步数之和."""
        return sum(sum(c.fallback_steps.values()) for c in self.cases)

    @property
    def oracle_skipped(self) -> int:
        """没有穷举的博弈数."""
        return sum(c.oracle_skipped for c in self.cases)

    def summary(self) -> str:
        """一行摘要."""
        return (
            f"games: {len(self.cases)}, failures: {len(self.failures)}, "
            f"fallback steps: {self.fallback_total}, oracle skipped: {self.oracle_skipped}"
        )


def check_seed(seed: int, spec: CorpusSpec) -> CaseResult:
    """生成一个种子的博弈并检查三个求解器."""
    rng = random.Random(seed)
    n_nodes = rng.randint(spec.min_nodes, spec.max_nodes)
    density = rng.uniform(spec.min_density, spec.max_density)
    game = random_game(seed, n_nodes, spec.max_priority, density)

    case = CaseResult(seed=seed, nodes=n_nodes)
    expected: tuple[Player, ...] | None
    try:
        expected = oracle_winners(game, strategy_limit=spec.strategy_limit)
    except OracleBoundError as e:
        expected = None
        case.oracle_skipped = True
        case.problems.append(f"没有与穷举比较: {e}")

    for algorithm in Algorithm:
        config = SolverConfig(
            algorithm=algorithm,
            audit=spec.audit,
            reset_policy=spec.reset_policy,
        )
        solver = SolverFactory.create_solver(game, config)
        try:
            solution, _ = solver.solve()
        except Exception as e:  # noqa: BLE001
            case.problems.append(f"{algorithm}: {type(e).__name__}: {e}")
            continue
        case.fallback_steps[algorithm.value] = solver.stats.fallback_steps
        if expected is None:
            # 第一个求解器的胜者作为其余求解器的参照
            expected = solution.winner
        elif solution.winner != expected:
            diff = [v for v in game.nodes if solution.winner[v] != expected[v]]
            case.problems.append(f"{algorithm}: 胜者不一致 {diff}")
        if not check_solution(game, {}, solution):
            case.problems.append(f"{algorithm}: 解没有通过校验")
    return case


class CorpusRunner:
    """语料运行器."""

    def __init__(self, workers: int = 1) -> None:
        """初始化语料运行器.

        Args:
            workers: 并行进程数, 1 表示在当前进程中运行
        """
        self.workers = max(1, workers)
        self.logger = get_logger("CorpusRunner")

    def _results(self, seeds: range, spec: CorpusSpec) -> Iterator[CaseResult]:
        if self.workers == 1:
            for seed in seeds:
                yield check_seed(seed, spec)
            return
        with concurrent.futures.ProcessPoolExecutor(max_workers=self.workers) as executor:
            futures = [executor.submit(check_seed, seed, spec) for seed in seeds]
            for future in concurrent.futures.as_completed(futures):
                yield future.result()

    def run(self, games: int, first_seed: int = 0, spec: CorpusSpec | None = None) -> CorpusReport:
        """运行语料.

        Args:
            games: 博弈个数
            first_seed: 第一个种子
            spec: 语料参数

        Returns
        -------
            汇总报告
        """
        spec = spec or CorpusSpec()
        start_time = time.time()
        self.logger.info(f"开始语料运行: {games} 个博弈, 种子从 {first_seed} 开始")
        report = CorpusReport()
        for i, case in enumerate(self._results(range(first_seed, first_seed + games), spec), 1):
            report.cases.append(case)
            if not case.ok:
                self.logger.error(f"种子 {case.seed} 不一致: {'; '.join(case.problems)}")
            if i % 1000 == 0:
                self.logger.info(f"已完成 {i}/{games}")
        report.cases.sort(key=lambda c: c.seed)
        report.elapsed = time.time() - start_time
        self.logger.info(f"语料运行完成，耗时: {report.elapsed:.2f}秒，{report.summary()}")
        return report
