"""奇偶博弈模块.

表示奇偶博弈 (V, E, O, Pr) 与参数化奇偶博弈的参数映射，并提供结构校验、
默认假设和参数化博弈到普通博弈的归约。
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property


class Player(IntEnum):
    """玩家: 0 为 Even, 1 为 Odd."""

    EVEN = 0
    ODD = 1

    @property
    def opponent(self) -> "Player":
        """对手玩家."""
        return Player(1 - self.value)


type Hypothesis = tuple[Player, ...]
type ParameterMap = Mapping[int, Player]


class GameError(ValueError):
    """博弈结构不合法."""

    def __init__(self, violations: "list[Violation]") -> None:
        """初始化结构错误.

        Args:
            violations: 所有结构违规
        """
        self.violations = violations
        msg = "博弈结构不合法: " + ", ".join(str(v) for v in violations)
        super().__init__(msg)


@dataclass(frozen=True, slots=True)
class Violation:
    """一条结构违规."""

    kind: str
    node: int
    detail: str = ""

    def __str__(self) -> str:
        """格式如 ``missing-successor(3)``."""
        if self.detail:
            return f"{self.kind}({self.node}: {self.detail})"
        return f"{self.kind}({self.node})"


@dataclass(frozen=True)
class ParityGame:
    """不可变的奇偶博弈图.

    节点是稠密的 0 起始整数。后继列表保留输入顺序，所有"选择一条边"的操作
    都取第一个满足条件的后继，保证运行可复现。构造后不可变，可在线程间共享。
    """

    owners: tuple[Player, ...]
    priorities: tuple[int, ...]
    successors: tuple[tuple[int, ...], ...]
    names: tuple[str | None, ...] = field(default=())

    def __post_init__(self) -> None:
        """补全名称并统一为元组."""
        object.__setattr__(self, "owners", tuple(Player(o) for o in self.owners))
        object.__setattr__(self, "priorities", tuple(self.priorities))
        object.__setattr__(self, "successors", tuple(tuple(s) for s in self.successors))
        if not self.names:
            object.__setattr__(self, "names", (None,) * len(self.owners))
        else:
            object.__setattr__(self, "names", tuple(self.names))

    @property
    def size(self) -> int:
        """节点数 |V|."""
        return len(self.owners)

    @property
    def nodes(self) -> range:
        """全部节点."""
        return range(self.size)

    def owner(self, v: int) -> Player:
        """节点的所有者 O(v)."""
        return self.owners[v]

    def priority(self, v: int) -> int:
        """节点的优先级 Pr(v)."""
        return self.priorities[v]

    def successors_of(self, v: int) -> tuple[int, ...]:
        """节点的后继列表."""
        return self.successors[v]

    def predecessors_of(self, v: int) -> tuple[int, ...]:
        """节点的前驱列表（按节点编号升序）."""
        return self._predecessors[v]

    def label(self, v: int) -> str:
        """节点的显示名称，没有名称时使用编号."""
        name = self.names[v]
        return name if name is not None else str(v)

    @cached_property
    def _predecessors(self) -> tuple[tuple[int, ...], ...]:
        preds: list[list[int]] = [[] for _ in self.nodes]
        for v in self.nodes:
            for w in self.successors[v]:
                if 0 <= w < self.size:
                    preds[w].append(v)
        return tuple(tuple(p) for p in preds)

    @cached_property
    def min_priority(self) -> int:
        """最小优先级."""
        return min(self.priorities, default=0)

    @cached_property
    def max_priority(self) -> int:
        """最大优先级."""
        return max(self.priorities, default=0)

    def edges(self) -> list[tuple[int, int]]:
        """全部边 E."""
        return [(v, w) for v in self.nodes for w in self.successors[v]]


def validate_game(game: ParityGame) -> list[Violation]:
    """校验博弈的结构要求.

    每个节点至少有一个后继，后继编号在范围内且不重复，优先级非负，名称中没有双引号和换行。
    违规以列表返回，不抛出异常。

    Args:
        game: 待校验的博弈

    Returns
    -------
        结构违规列表，合法时为空

    >>> g = ParityGame(owners=(Player.EVEN,), priorities=(0,), successors=((0,),))
    >>> validate_game(g)
    []
    """
    violations: list[Violation] = []
    n = game.size
    if len(game.priorities) != n or len(game.successors) != n or len(game.names) != n:
        violations.append(Violation("length-mismatch", 0, "owners/priorities/successors"))
        return violations

    for v in game.nodes:
        if game.priorities[v] < 0:
            violations.append(Violation("negative-priority", v, str(game.priorities[v])))
        succ = game.successors[v]
        if not succ:
            violations.append(Violation("missing-successor", v))
            continue
        violations.extend(
            Violation("out-of-range-edge", v, str(w)) for w in succ if not 0 <= w < n
        )
        if len(set(succ)) != len(succ):
            violations.append(Violation("duplicate-edge", v))
        name = game.names[v]
        if name is not None and ('"' in name or "".join(name.splitlines()) != name):
            violations.append(Violation("unquotable-name", v, repr(name)))
    return violations


def build_game(
    owners: Sequence[int],
    priorities: Sequence[int],
    successors: Sequence[Sequence[int]],
    names: Sequence[str | None] | None = None,
) -> ParityGame:
    """构造并校验博弈.

    Raises
    ------
        GameError: 结构不合法
    """
    game = ParityGame(
        owners=tuple(Player(o) for o in owners),
        priorities=tuple(priorities),
        successors=tuple(tuple(s) for s in successors),
        names=tuple(names) if names is not None else (),
    )
    violations = validate_game(game)
    if violations:
        raise GameError(violations)
    return game


def winner_of_priority(n: int) -> Player:
    """优先级 n 的胜者, 即 n mod 2.

    >>> winner_of_priority(4)
    <Player.EVEN: 0>
    >>> winner_of_priority(3)
    <Player.ODD: 1>
    """
    return Player(n % 2)


def default_hypothesis(game: ParityGame) -> Hypothesis:
    """默认假设 H_d: 每个节点的假设胜者是其优先级的胜者."""
    return tuple(winner_of_priority(p) for p in game.priorities)


def ppg_to_pg(game: ParityGame, params: ParameterMap) -> ParityGame:
    """把参数化奇偶博弈归约成普通奇偶博弈.

    每个参数 v 的出边替换为自环，优先级替换为 P(v)；其余节点不变。
    两个博弈中非参数节点的胜者相同，参数节点的胜者为 P(v)。
    """
    if not params:
        return game
    priorities = list(game.priorities)
    successors = list(game.successors)
    for v, player in params.items():
        priorities[v] = int(player)
        successors[v] = (v,)
    return ParityGame(
        owners=game.owners,
        priorities=tuple(priorities),
        successors=tuple(successors),
        names=game.names,
    )
