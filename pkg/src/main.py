"""主程序模块.

pg-justify 的命令行入口。结果（解、博弈、审计摘要）写到 stdout，日志写到 stderr 或日志文件。

退出码: 0 成功, 1 校验或审计失败, 2 用法错误, 3 读写或解析错误。
"""

import time
from enum import IntEnum
from pathlib import Path
from typing import Annotated, NoReturn

import typer

from src.config import Algorithm
from src.core import CorpusRunner, CorpusSpec, SolverFactory
from src.game import Player
from src.justification import ResetPolicy
from src.services import AuditError, OracleBoundError, random_game
from src.utils import get_logger, setup_logging
from src.utils.pgsolver_format import GameFormatError, emit_game, emit_solution, write_game
from src.utils.trace_utils import audit_trace_file

app = typer.Typer(
    name="pg-justify",
    help="基于证成的奇偶博弈求解器。",
    add_completion=False,
    no_args_is_help=True,
)

logger = get_logger()


class ExitCode(IntEnum):
    """命令行退出码."""

    OK = 0
    FAILED = 1
    USAGE = 2
    IO = 3


def _fail(message: str, code: ExitCode, *, exc_info: bool = False) -> NoReturn:
    logger.error(message, exc_info=exc_info)
    typer.echo(f"❌ {message}", err=True)
    raise typer.Exit(code=int(code))


def _fail_io(e: Exception) -> NoReturn:
    if isinstance(e, GameFormatError):
        _fail(f"解析错误: {e}", ExitCode.IO, exc_info=True)
    _fail(f"文件读写错误: {e}", ExitCode.IO, exc_info=True)


@app.callback()
def main(
    log_level: Annotated[str | None, typer.Option(help="日志级别，如 DEBUG、INFO")] = None,
    log_file: Annotated[str | None, typer.Option(help="日志文件，默认写到 stderr")] = None,
    config: Annotated[Path | None, typer.Option(help="JSON 配置文件")] = None,
) -> None:
    """加载配置并设置日志."""
    factory = SolverFactory()
    factory.reset()
    try:
        config_manager = factory.get_config(config)
    except FileNotFoundError as e:
        _fail(f"配置文件错误: {e}", ExitCode.IO)
    except ValueError as e:
        _fail(f"配置错误: {e}", ExitCode.USAGE)
    setup_logging(log_level or config_manager.log_level, log_file or config_manager.log_file)
    logger.debug(f"配置: {config_manager.get_all_config()}")


@app.command()
def solve(
    game: Annotated[Path, typer.Argument(help="PGSolver 格式的博弈文件")],
    algorithm: Annotated[Algorithm, typer.Option(help="求解算法")] = Algorithm.ZIELONKA,
    reset: Annotated[ResetPolicy | None, typer.Option(help="假设翻转时的重置策略")] = None,
    trace: Annotated[Path | None, typer.Option(help="Justify 跟踪的 TSV 输出")] = None,
    audit: Annotated[bool, typer.Option(help="每一步检查安全性和大小")] = False,  # noqa: FBT002
    dot: Annotated[Path | None, typer.Option(help="最终证成的 DOT 输出")] = None,
    solution: Annotated[Path | None, typer.Option(help="解文件输出，默认写到 stdout")] = None,
) -> None:
    """求解博弈."""
    factory = SolverFactory()
    solver_config = factory.solver_config(
        algorithm=algorithm,
        reset_policy=reset,
        trace=trace is not None,
        audit=audit,
    )
    manager = factory.get_solve_manager()
    try:
        result = manager.solve_file(
            game,
            solver_config,
            trace_path=trace,
            dot_path=dot,
            solution_path=solution,
        )
    except AuditError as e:
        _fail(f"审计失败: {e}", ExitCode.FAILED, exc_info=True)
    except (OSError, GameFormatError) as e:
        _fail_io(e)

    if solution is None:
        typer.echo(emit_solution(result.solution), nl=False)
    else:
        won = [sorted(result.solution.region(p)) for p in Player]
        typer.echo(f"W0: {won[0]}\nW1: {won[1]}")
    if not result.report.ok:
        _fail(
            "解没有通过校验: " + ", ".join(str(p) for p in result.report.problems),
            ExitCode.FAILED,
        )


@app.command()
def verify(
    game: Annotated[Path, typer.Argument(help="博弈文件")],
    solution: Annotated[Path, typer.Argument(help="解文件")],
) -> None:
    """校验解文件."""
    manager = SolverFactory().get_solve_manager()
    try:
        report = manager.verify_files(game, solution)
    except (OSError, GameFormatError) as e:
        _fail_io(e)
    if report.ok:
        typer.echo("ok")
        return
    for problem in report.problems:
        typer.echo(str(problem))
    raise typer.Exit(code=int(ExitCode.FAILED))


@app.command()
def oracle(
    game: Annotated[Path, typer.Argument(help="博弈文件")],
    bound: Annotated[int | None, typer.Option(help="节点数上限")] = None,
) -> None:
    """穷举求解小博弈."""
    manager = SolverFactory().get_solve_manager()
    if bound is not None:
        manager.oracle.bound = bound
    try:
        result = manager.oracle_file(game)
    except OracleBoundError as e:
        _fail(f"超出穷举上限: {e}", ExitCode.USAGE)
    except (OSError, GameFormatError) as e:
        _fail_io(e)
    typer.echo(emit_solution(result), nl=False)


@app.command()
def gen(
    seed: Annotated[int, typer.Option(help="随机种子")] = 0,
    nodes: Annotated[int, typer.Option(help="节点数")] = 6,
    max_priority: Annotated[int, typer.Option(help="最大优先级")] = 4,
    density: Annotated[float, typer.Option(help="边密度, 0 到 1")] = 0.3,
    output: Annotated[Path | None, typer.Option(help="输出文件，默认写到 stdout")] = None,
) -> None:
    """生成随机博弈."""
    try:
        game = random_game(seed, nodes, max_priority, density)
    except ValueError as e:
        _fail(f"参数错误: {e}", ExitCode.USAGE)
    if output is None:
        typer.echo(emit_game(game), nl=False)
        return
    try:
        write_game(output, game)
    except OSError as e:
        _fail_io(e)
    logger.info(f"博弈已写入: {output}")


@app.command("audit-trace")
def audit_trace(
    trace: Annotated[Path, typer.Argument(help="solve --trace 写出的 TSV 文件")],
) -> None:
    """离线审计跟踪: 大小严格增加且每一步都安全."""
    try:
        result = audit_trace_file(trace)
    except OSError as e:
        _fail_io(e)
    typer.echo(result.summary())
    if not result.monotone:
        for problem in result.problems:
            typer.echo(problem)
        raise typer.Exit(code=int(ExitCode.FAILED))


@app.command()
def corpus(
    games: Annotated[int, typer.Option(help="博弈个数")] = 1000,
    seed: Annotated[int, typer.Option(help="第一个种子")] = 0,
    audit: Annotated[bool, typer.Option(help="审计模式")] = False,  # noqa: FBT002
    reset: Annotated[ResetPolicy | None, typer.Option(help="重置策略")] = None,
    workers: Annotated[int | None, typer.Option(help="并行进程数")] = None,
    min_nodes: Annotated[int, typer.Option(help="最少节点数")] = 3,
    max_nodes: Annotated[int, typer.Option(help="最多节点数")] = 8,
    max_priority: Annotated[int, typer.Option(help="最大优先级")] = 6,
) -> None:
    """在随机语料上比较三个求解器和穷举结果."""
    if not 1 <= min_nodes <= max_nodes:
        _fail(f"节点数范围不合法: {min_nodes}..{max_nodes}", ExitCode.USAGE)
    config = SolverFactory().get_config()
    spec = CorpusSpec(
        min_nodes=min_nodes,
        max_nodes=max_nodes,
        max_priority=max_priority,
        audit=audit,
        reset_policy=reset or config.reset_policy,
    )
    start_time = time.time()
    report = CorpusRunner(workers or config.corpus_workers).run(games, seed, spec)
    typer.echo(report.summary())
    for case in report.failures:
        typer.echo(f"seed {case.seed}: {'; '.join(case.problems)}")
    logger.info(f"语料命令完成，总耗时: {time.time() - start_time:.2f}秒")
    if report.failures:
        raise typer.Exit(code=int(ExitCode.FAILED))


if __name__ == "__main__":
    app()
