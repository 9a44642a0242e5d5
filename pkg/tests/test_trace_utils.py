"""跟踪输出与审计测试."""

from pathlib import Path

import pytest

from src.config import Algorithm, SolverConfig
from src.core import SolverFactory
from src.game import ParityGame
from src.justification import JustifyTrace
from src.utils.trace_utils import COLUMNS, audit_trace, audit_trace_file, trace_to_tsv, write_trace


@pytest.fixture
def audited_trace(example_game: ParityGame) -> JustifyTrace:
    """审计模式下 Zielonka 的跟踪."""
    config = SolverConfig(algorithm=Algorithm.ZIELONKA, audit=True)
    _, trace = SolverFactory.create_solver(example_game, config).solve()
    return trace


def test_tsv_layout(audited_trace: JustifyTrace) -> None:
    """表头加每步一行, 安全列为 yes."""
    rows = [line.split("\t") for line in trace_to_tsv(audited_trace).splitlines()]
    assert tuple(rows[0]) == COLUMNS
    assert len(rows) == len(audited_trace) + 1
    assert [row[0] for row in rows[1:]] == [str(i) for i in range(1, len(audited_trace) + 1)]
    assert {row[-1] for row in rows[1:]} == {"yes"}


def test_audit_accepts_solver_trace(audited_trace: JustifyTrace, tmp_path: Path) -> None:
    """求解器的跟踪通过离线审计."""
    path = tmp_path / "trace.tsv"
    write_trace(path, audited_trace)
    result = audit_trace_file(path)
    assert result.monotone
    assert result.steps == len(audited_trace)
    assert result.summary() == f"monotone: yes, steps: {len(audited_trace)}"


def test_audit_detects_non_increasing_step(audited_trace: JustifyTrace) -> None:
    """交换一步前后的大小后审计失败."""
    lines = trace_to_tsv(audited_trace).splitlines()
    fields = lines[1].split("\t")
    fields[5], fields[6] = fields[6], fields[5]
    lines[1] = "\t".join(fields)
    result = audit_trace("\n".join(lines) + "\n")
    assert not result.monotone
    assert any("没有严格增加" in p for p in result.problems)
    assert result.summary().startswith("monotone: no")


def test_audit_detects_unsafe_step(audited_trace: JustifyTrace) -> None:
    """安全列为 no 的步骤."""
    text = trace_to_tsv(audited_trace)
    result = audit_trace(text.replace("\tyes\n", "\tno\n", 1))
    assert any("不安全" in p for p in result.problems)


def test_audit_rejects_other_files() -> None:
    """表头不对时直接报告."""
    result = audit_trace("a\tb\n1\t2\n")
    assert result.problems == ["表头不符合跟踪格式"]
    assert result.steps == 0
