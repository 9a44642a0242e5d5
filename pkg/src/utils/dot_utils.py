"""DOT工具模块.

把证成 (V, D, H) 输出成 Graphviz DOT 文本。
"""

from enum import Enum

from src.game import Player
from src.justification import Justification


class HypothesisColor(Enum):
    """假设胜者的节点颜色."""

    EVEN = ("#2e7d32", "#c8e6c9")  # 边框, 填充
    ODD = ("#c62828", "#ffcdd2")

    @classmethod
    def of(cls, player: Player) -> "HypothesisColor":
        """玩家对应的颜色."""
        return cls.EVEN if player is Player.EVEN else cls.ODD


class NodeShape(Enum):
    """所有者对应的节点形状."""

    EVEN = "box"
    ODD = "diamond"


class DotUtils:
    """DOT工具类."""

    @staticmethod
    def quote(text: str) -> str:
        """转义为 DOT 字符串."""
        return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'

    @staticmethod
    def node_line(j: Justification, v: int) -> str:
        """一个节点的 DOT 语句: 标签为 ``名称:优先级``, 颜色表示 H, 形状表示所有者."""
        game = j.game
        border, fill = HypothesisColor.of(j.hyp(v)).value
        shape = NodeShape.EVEN.value if game.owner(v) is Player.EVEN else NodeShape.ODD.value
        label = DotUtils.quote(f"{game.label(v)}:{game.priority(v)}")
        style = "filled" if j.is_justified(v) else "filled,dashed"
        return (
            f'  n{v} [label={label}, shape={shape}, color="{border}", '
            f'fillcolor="{fill}", style="{style}"];'
        )

    @staticmethod
    def to_dot(j: Justification, name: str = "justification") -> str:
        """整个证成的 DOT 文本.

        D 中的边加粗，E 中其余的边用点线。未证成的节点（参数）用虚线边框。

        Args:
            j: 证成
            name: 图名

        Returns
        -------
            DOT 文本
        """
        game = j.game
        lines = [f"digraph {DotUtils.quote(name)} {{"]
        lines.extend(DotUtils.node_line(j, v) for v in game.nodes)
        for v in game.nodes:
            in_d = set(j.targets(v))
            for w in game.successors_of(v):
                style = "bold" if w in in_d else "dotted"
                lines.append(f"  n{v} -> n{w} [style={style}];")
        lines.append("}")
        return "\n".join(lines) + "\n"
