"""测试夹具.

示例博弈的节点: a=0, b=1, c=2, d=3, e=4, f=5。
"""

import logging
from collections.abc import Iterator

import pytest

from src.core import SolverFactory
from src.game import ParityGame, Player, build_game
from src.justification import DirectJustification, Justification, Update
from src.utils import ROOT_LOGGER
from src.utils.pgsolver_format import load_example_game

A, B, C, D, E, F = range(6)

EVEN, ODD = Player.EVEN, Player.ODD


@pytest.fixture(autouse=True)
def _clean_state() -> Iterator[None]:
    """每个测试之后清掉日志处理器和工厂单例中的实例."""
    yield
    root = logging.getLogger(ROOT_LOGGER)
    root.handlers.clear()
    root.setLevel(logging.NOTSET)
    SolverFactory().reset()


@pytest.fixture
def example_game() -> ParityGame:
    """自带的六节点示例博弈."""
    return load_example_game()


@pytest.fixture
def example_state(example_game: ParityGame) -> Justification:
    """示例博弈上的证成: P = {a: 1, d: 0}.

    b 取全部出边, c 取自环, e 指向 d, f 取全部出边。
    """
    j = Justification(example_game, hypothesis=(ODD, ODD, ODD, EVEN, EVEN, EVEN))
    j.apply(
        [
            Update(B, DirectJustification.all_edges(), ODD),
            Update(C, DirectJustification.edge(C), ODD),
            Update(E, DirectJustification.edge(D), EVEN),
            Update(F, DirectJustification.all_edges(), EVEN),
        ],
    )
    return j


@pytest.fixture
def promotion_game() -> ParityGame:
    """两次提升的五节点博弈: 低区域先提升到 6, 再提升到 +∞."""
    return build_game(
        owners=[1, 0, 1, 0, 0],
        priorities=[6, 5, 2, 1, 0],
        successors=[[1], [2], [3, 0], [2], [3]],
        names=["t", "m", "b", "c", "d"],
    )
