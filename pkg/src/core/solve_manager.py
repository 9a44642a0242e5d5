"""求解管理器模块.

协调读入博弈、求解、校验和写出结果文件（解、跟踪、DOT）。
"""

import time
from dataclasses import dataclass
from pathlib import Path

from src.config import ConfigManager, SolverConfig
from src.core.solver_factory import SolverFactory
from src.game import ParityGame, Solution, SolutionReport, verify_solution
from src.justification import Justification, JustifyTrace
from src.services import OracleService, SolverStats
from src.utils import get_logger
from src.utils.dot_utils import DotUtils
from src.utils.pgsolver_format import read_game, read_solution, write_solution
from src.utils.trace_utils import write_trace


@dataclass
class SolveResult:
    """一次求解的全部产物."""

    game: ParityGame
    solution: Solution
    trace: JustifyTrace
    stats: SolverStats
    justification: Justification
    report: SolutionReport


class SolveManager:
    """求解管理器类."""

    def __init__(self, config: ConfigManager) -> None:
        """初始化求解管理器.

        Args:
            config: 配置管理器
        """
        self.config = config
        self.logger = get_logger("SolveManager")
        self.oracle = OracleService(
            bound=config.oracle_bound,
            strategy_limit=config.oracle_strategy_limit,
            play_limit=config.play_limit,
        )

    def solve(self, game: ParityGame, solver_config: SolverConfig) -> SolveResult:
        """求解博弈并校验得到的解."""
        solver = SolverFactory.create_solver(game, solver_config)
        solution, trace = solver.solve()
        report = verify_solution(game, {}, solution)
        if not report.ok:
            self.logger.error(
                f"{solver_config.algorithm} 的解没有通过校验: "
                + ", ".join(str(p) for p in report.problems[:5]),
            )
        return SolveResult(
            game=game,
            solution=solution,
            trace=trace,
            stats=solver.stats,
            justification=solver.j,
            report=report,
        )

    def solve_file(
        self,
        game_path: str | Path,
        solver_config: SolverConfig,
        *,
        trace_path: str | Path | None = None,
        dot_path: str | Path | None = None,
        solution_path: str | Path | None = None,
    ) -> SolveResult:
        """读入博弈文件, 求解并按需写出结果文件.

        Args:
            game_path: 博弈文件
            solver_config: 求解器配置
            trace_path: 跟踪 TSV 输出路径
            dot_path: DOT 输出路径
            solution_path: 解文件输出路径

        Returns
        -------
            求解结果
        """
        start_time = time.time()
        self.logger.info(f"读取博弈: {game_path}")
        game = read_game(game_path)
        result = self.solve(game, solver_config)

        if trace_path is not None:
            write_trace(trace_path, result.trace)
            self.logger.info(f"跟踪已写入: {trace_path} ({len(result.trace)} 步)")
        if dot_path is not None:
            Path(dot_path).write_text(DotUtils.to_dot(result.justification), encoding="utf-8")
            self.logger.info(f"DOT 已写入: {dot_path}")
        if solution_path is not None:
            write_solution(solution_path, result.solution)
            self.logger.info(f"解已写入: {solution_path}")

        self.logger.info(f"求解请求完成，总耗时: {time.time() - start_time:.2f}秒")
        return result

    def verify_files(self, game_path: str | Path, solution_path: str | Path) -> SolutionReport:
        """校验解文件."""
        game = read_game(game_path)
        solution = read_solution(solution_path, game)
        report = verify_solution(game, {}, solution)
        if report.ok:
            self.logger.info(f"解校验通过: {solution_path}")
        else:
            self.logger.warning(f"解校验失败: {len(report.problems)} 个问题")
        return report

    def oracle_file(self, game_path: str | Path) -> Solution:
        """穷举求解博弈文件."""
        return self.oracle.solve(read_game(game_path))
