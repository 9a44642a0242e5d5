"""PGSolver 格式测试."""

from pathlib import Path

import pytest

from src.game import ParityGame, Player, build_game
from src.services import oracle_solve, random_game
from src.utils.pgsolver_format import (
    EXAMPLE_GAME_FILE,
    GameFormatError,
    emit_game,
    emit_solution,
    parse_game,
    parse_solution,
    read_game,
    read_solution,
    write_game,
    write_solution,
)


def test_single_self_loop() -> None:
    """一个节点的自环博弈."""
    game = parse_game("parity 0;\n0 0 0 0;")
    assert game.size == 1
    assert game.successors == ((0,),)
    assert game.owner(0) is Player.EVEN


def test_leaf_node_error() -> None:
    """没有后继的节点引用博弈的合法性规则."""
    with pytest.raises(GameFormatError) as excinfo:
        parse_game("0 2 0;")
    assert "missing-successor(0)" in str(excinfo.value)
    assert "every node has at least one successor" in str(excinfo.value)
    assert (excinfo.value.line, excinfo.value.column) == (1, 6)


def test_unknown_successor_position() -> None:
    """未声明的后继指出行号和列号."""
    with pytest.raises(GameFormatError) as excinfo:
        parse_game("parity 1;\n0 0 0 0;\n1 1 1 0,7;")
    assert (excinfo.value.line, excinfo.value.column) == (3, 9)


@pytest.mark.parametrize(
    "text",
    [
        "0 0 0 0;\n0 1 1 0;",
        "0 0 2 0;",
        "0 0 0 0,0;",
        "0 0 0 0",
        "0 0 0 0; 1",
        "",
        "x 0 0 0;",
    ],
)
def test_malformed_games(text: str) -> None:
    """重复编号、所有者越界、重复边、缺少分号、多余内容和空文件."""
    with pytest.raises(GameFormatError):
        parse_game(text)


def test_names_and_start_header() -> None:
    """start 行被忽略, 名称保留."""
    game = parse_game('parity 1;\nstart 0;\n0 3 1 1 "left";\n1 2 0 0,1;')
    assert game.names == ("left", None)
    assert game.successors_of(1) == (0, 1)


def test_names_are_written_verbatim() -> None:
    """名称原样写出, 含单引号、分号和逗号的名称也能读回."""
    game = build_game([0, 1], [2, 1], [[1], [0]], ["it's; a, b", None])
    text = emit_game(game)
    assert "\"it's; a, b\"" in text
    assert parse_game(text).names == ("it's; a, b", None)


def test_sparse_ids_are_renumbered() -> None:
    """稀疏编号重新编号, 原编号作为名称."""
    game = parse_game("parity 9;\n3 1 0 9;\n9 2 1 3,9;")
    assert game.size == 2
    assert game.names == ("3", "9")
    assert game.successors == ((1,), (0, 1))


def test_example_game_file(example_game: ParityGame) -> None:
    """自带的示例博弈."""
    assert EXAMPLE_GAME_FILE.exists()
    assert example_game.priorities == (3, 4, 5, 2, 1, 0)
    assert parse_game(emit_game(example_game)) == example_game


@pytest.mark.parametrize("seed", range(10))
def test_emit_parse_inverse(seed: int) -> None:
    """emit 与 parse 互逆."""
    game = random_game(seed, 2 + seed, 5, 0.4)
    assert parse_game(emit_game(game)) == game


def test_solution_files(example_game: ParityGame, tmp_path: Path) -> None:
    """解文件写入后读回相同."""
    solution = oracle_solve(example_game)
    path = tmp_path / "example.sol"
    write_solution(path, solution)
    assert read_solution(path, example_game) == solution
    assert emit_solution(solution).startswith("paritysol 5;\n")

    game_path = tmp_path / "example.gm"
    write_game(game_path, example_game)
    assert read_game(game_path) == example_game


def test_solution_missing_node(example_game: ParityGame) -> None:
    """解必须覆盖全部节点."""
    with pytest.raises(GameFormatError, match="缺少"):
        parse_solution("paritysol 5;\n0 1 1;", example_game)


def test_solution_bad_winner(example_game: ParityGame) -> None:
    """胜者必须是 0 或 1."""
    with pytest.raises(GameFormatError) as excinfo:
        parse_solution("0 4;", example_game)
    assert (excinfo.value.line, excinfo.value.column) == (1, 3)


def test_non_utf8_file_position(tmp_path: Path) -> None:
    """解码失败报告出错字节的行列."""
    path = tmp_path / "latin1.gm"
    path.write_bytes(b'parity 0;\n0 0 0 0 "\xff";\n')
    with pytest.raises(GameFormatError, match="UTF-8") as excinfo:
        read_game(path)
    assert (excinfo.value.line, excinfo.value.column) == (2, 10)
    assert isinstance(excinfo.value.__cause__, UnicodeDecodeError)
