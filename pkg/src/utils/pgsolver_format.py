"""PGSolver 文本格式.

博弈文件:
    parity <max-id>;
    start <id>;                       （可选，忽略）
    <id> <priority> <owner> <succ>,<succ>,... ["name"];

解文件:
    paritysol <max-id>;
    <id> <winner> [<succ>];

稀疏的编号按升序重新编成 0 起始的稠密编号，没有名称的节点保留原编号作为名称。
"""

import re
from pathlib import Path

from src.game import GameError, ParityGame, Player, Solution, build_game

_TOKEN = re.compile(r'\d+|"[^"]*"|[,;]|[A-Za-z_][A-Za-z_]*|\S')
_LEAF_RULE = "every node has at least one successor"


class GameFormatError(ValueError):
    """文本格式错误, 带行号和列号（从 1 开始）."""

    def __init__(self, message: str, line: int, column: int) -> None:
        """初始化格式错误.

        Args:
            message: 错误说明
            line: 行号
            column: 列号
        """
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class _Line:
    """一行的词法单元, 附带列号."""

    def __init__(self, text: str, number: int) -> None:
        self.lineno = number
        self.tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(text)]
        self.end = len(text.rstrip()) + 1
        self.pos = 0

    def error(self, message: str) -> GameFormatError:
        column = self.tokens[self.pos][1] if self.pos < len(self.tokens) else self.end
        return GameFormatError(message, self.lineno, column)

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        token = self.peek()
        if token is None:
            msg = "行意外结束, 缺少 ';'"
            raise self.error(msg)
        self.pos += 1
        return token

    def number(self, what: str) -> int:
        token = self.peek()
        if token is None or not token.isdigit():
            msg = f"需要{what}, 实际为 {token!r}"
            raise self.error(msg)
        self.pos += 1
        return int(token)

    def finish(self) -> None:
        if self.peek() != ";":
            msg = f"需要 ';', 实际为 {self.peek()!r}"
            raise self.error(msg)
        self.pos += 1
        if self.peek() is not None:
            msg = f"';' 之后有多余内容 {self.peek()!r}"
            raise self.error(msg)


def _lines(text: str) -> list[_Line]:
    return [_Line(raw, i) for i, raw in enumerate(text.splitlines(), start=1) if raw.strip()]


def parse_game(text: str) -> ParityGame:
    """解析 PGSolver 格式的博弈.

    Raises
    ------
        GameFormatError: 语法错误、重复编号、未知后继、重复边或没有后继的节点

    >>> parse_game("0 0 0 0;").successors
    ((0,),)
    """
    records: dict[int, tuple[int, int, list[tuple[int, int]], str | None, _Line]] = {}
    for line in _lines(text):
        head = line.peek()
        if head in {"parity", "start"}:
            line.take()
            line.number("编号")
            line.finish()
            continue

        start = line.pos
        node = line.number("节点编号")
        if node in records:
            line.pos = start
            msg = f"节点编号 {node} 重复"
            raise line.error(msg)
        priority = line.number("优先级")
        owner_pos = line.pos
        owner = line.number("所有者")
        if owner not in {0, 1}:
            line.pos = owner_pos
            msg = f"所有者必须是 0 或 1, 实际为 {owner}"
            raise line.error(msg)
        if line.peek() == ";":
            msg = f"missing-successor({node}): {_LEAF_RULE}"
            raise line.error(msg)

        successors = [(line.number("后继编号"), line.tokens[line.pos - 1][1])]
        while line.peek() == ",":
            line.take()
            successors.append((line.number("后继编号"), line.tokens[line.pos - 1][1]))
        name: str | None = None
        token = line.peek()
        if token is not None and token.startswith('"'):
            name = line.take()[1:-1]
        line.finish()

        seen: set[int] = set()
        for w, column in successors:
            if w in seen:
                msg = f"duplicate-edge({node}): 边 {node}->{w} 重复"
                raise GameFormatError(msg, line.lineno, column)
            seen.add(w)
        records[node] = (priority, owner, successors, name, line)

    if not records:
        msg = "没有节点"
        raise GameFormatError(msg, 1, 1)

    ids = sorted(records)
    dense = {old: new for new, old in enumerate(ids)}
    sparse = ids != list(range(len(ids)))
    owners, priorities, successor_lists, names = [], [], [], []
    for old in ids:
        priority, owner, successors, name, line = records[old]
        mapped = []
        for w, column in successors:
            if w not in dense:
                msg = f"后继 {w} 不是已声明的节点"
                raise GameFormatError(msg, line.lineno, column)
            mapped.append(dense[w])
        owners.append(owner)
        priorities.append(priority)
        successor_lists.append(mapped)
        names.append(name if name is not None or not sparse else str(old))

    try:
        return build_game(owners, priorities, successor_lists, names)
    except GameError as e:
        msg = str(e)
        raise GameFormatError(msg, 1, 1) from e


def emit_game(game: ParityGame) -> str:
    """输出 PGSolver 格式的博弈."""
    out = [f"parity {game.size - 1};"]
    for v in game.nodes:
        succ = ",".join(str(w) for w in game.successors_of(v))
        record = f"{v} {game.priority(v)} {int(game.owner(v))} {succ}"
        name = game.names[v]
        if name is not None:
            record += f' "{name}"'
        out.append(record + ";")
    return "\n".join(out) + "\n"


def parse_solution(text: str, game: ParityGame) -> Solution:
    """解析解文件, 节点编号为博弈中的稠密编号.

    Raises
    ------
        GameFormatError: 语法错误、编号越界、重复或缺失的节点
    """
    winners: dict[int, Player] = {}
    strategies: dict[Player, dict[int, int]] = {Player.EVEN: {}, Player.ODD: {}}
    for line in _lines(text):
        if line.peek() == "paritysol":
            line.take()
            line.number("编号")
            line.finish()
            continue
        node = line.number("节点编号")
        if not 0 <= node < game.size or node in winners:
            line.pos -= 1
            msg = f"节点编号 {node} 越界或重复"
            raise line.error(msg)
        winner_pos = line.pos
        winner = line.number("胜者")
        if winner not in {0, 1}:
            line.pos = winner_pos
            msg = f"胜者必须是 0 或 1, 实际为 {winner}"
            raise line.error(msg)
        winners[node] = Player(winner)
        if line.peek() != ";":
            strategies[Player(winner)][node] = line.number("策略后继")
        line.finish()

    missing = [v for v in game.nodes if v not in winners]
    if missing:
        msg = f"解缺少节点: {missing}"
        raise GameFormatError(msg, 1, 1)
    return Solution(
        winner=tuple(winners[v] for v in game.nodes),
        strategy0=strategies[Player.EVEN],
        strategy1=strategies[Player.ODD],
    )


def emit_solution(solution: Solution) -> str:
    """输出解文件."""
    out = [f"paritysol {len(solution.winner) - 1};"]
    for v, winner in enumerate(solution.winner):
        strategy = solution.strategy(winner)
        record = f"{v} {int(winner)}"
        if v in strategy:
            record += f" {strategy[v]}"
        out.append(record + ";")
    return "\n".join(out) + "\n"


def _read_text(path: str | Path) -> str:
    """按 UTF-8 读取文件, 解码失败时报告出错字节所在的行列."""
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        column = e.start - (data.rfind(b"\n", 0, e.start) + 1) + 1
        msg = f"{path} 不是 UTF-8 文本: {e.reason}"
        raise GameFormatError(msg, line, column) from e


def read_game(path: str | Path) -> ParityGame:
    """读取博弈文件."""
    return parse_game(_read_text(path))


def write_game(path: str | Path, game: ParityGame) -> None:
    """写入博弈文件."""
    Path(path).write_text(emit_game(game), encoding="utf-8")


def read_solution(path: str | Path, game: ParityGame) -> Solution:
    """读取解文件."""
    return parse_solution(_read_text(path), game)


def write_solution(path: str | Path, solution: Solution) -> None:
    """写入解文件."""
    Path(path).write_text(emit_solution(solution), encoding="utf-8")


EXAMPLE_GAME_FILE = Path(__file__).parent.parent / "resources" / "example_game.gm"


def load_example_game() -> ParityGame:
    """读取自带的六节点示例博弈 (节点 a 到 f)."""
    return read_game(EXAMPLE_GAME_FILE)
