"""Justify 跟踪的 TSV 输出与离线审计.

列: step, node, targets, winner, reset, size_before, size_after, safe。
大小写成 ``inf:2,4:0,3:1`` 的形式。审计只解析文本，不依赖求解器的大小计算。
"""

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

from src.justification import JustifyTrace

COLUMNS = ("step", "node", "targets", "winner", "reset", "size_before", "size_after", "safe")


def trace_to_tsv(trace: JustifyTrace) -> str:
    """把跟踪写成 TSV 文本."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter="\t", lineterminator="\n")
    writer.writerow(COLUMNS)
    for s in trace.steps:
        safe = "-" if s.safe is None else ("yes" if s.safe else "no")
        writer.writerow(
            (
                s.step,
                s.node,
                ",".join(str(w) for w in s.targets),
                int(s.winner),
                len(s.reset),
                str(s.size_before),
                str(s.size_after),
                safe,
            ),
        )
    return buffer.getvalue()


def write_trace(path: str | Path, trace: JustifyTrace) -> None:
    """写入跟踪文件."""
    Path(path).write_text(trace_to_tsv(trace), encoding="utf-8")


@dataclass
class TraceAudit:
    """跟踪审计结果."""

    steps: int = 0
    problems: list[str] = field(default_factory=list)

    @property
    def monotone(self) -> bool:
        """大小是否逐步严格增加且没有其他问题."""
        return not self.problems

    def summary(self) -> str:
        """一行摘要, 如 ``monotone: yes, steps: 12``."""
        return f"monotone: {'yes' if self.monotone else 'no'}, steps: {self.steps}"


def _parse_size(text: str) -> tuple[list[str], list[int]]:
    levels: list[str] = []
    counts: list[int] = []
    for part in text.split(","):
        level, _, count = part.partition(":")
        levels.append(level)
        counts.append(int(count))
    return levels, counts


def audit_trace(text: str) -> TraceAudit:
    """重新检查跟踪: 步号连续, 前后两步的大小衔接, 每步大小严格增加, 没有不安全的步."""
    audit = TraceAudit()
    rows = list(csv.reader(io.StringIO(text), delimiter="\t"))
    if not rows or tuple(rows[0]) != COLUMNS:
        audit.problems.append("表头不符合跟踪格式")
        return audit

    previous_after: str | None = None
    for number, row in enumerate(rows[1:], start=1):
        if not row:
            continue
        if len(row) != len(COLUMNS):
            audit.problems.append(f"第 {number} 行列数为 {len(row)}")
            continue
        record = dict(zip(COLUMNS, row, strict=True))
        audit.steps += 1
        if record["step"] != str(audit.steps):
            audit.problems.append(f"第 {number} 行步号为 {record['step']}, 应为 {audit.steps}")
        if previous_after is not None and record["size_before"] != previous_after:
            audit.problems.append(f"第 {audit.steps} 步的初始大小与上一步的结果不一致")
        previous_after = record["size_after"]
        try:
            levels_before, before = _parse_size(record["size_before"])
            levels_after, after = _parse_size(record["size_after"])
        except ValueError:
            audit.problems.append(f"第 {audit.steps} 步的大小无法解析")
            continue
        if levels_before != levels_after:
            audit.problems.append(f"第 {audit.steps} 步前后的层级不同")
        elif not after > before:
            audit.problems.append(f"第 {audit.steps} 步大小没有严格增加")
        if record["safe"] == "no":
            audit.problems.append(f"第 {audit.steps} 步之后证成不安全")
    return audit


def audit_trace_file(path: str | Path) -> TraceAudit:
    """审计跟踪文件."""
    return audit_trace(Path(path).read_text(encoding="utf-8"))
