"""求解器工厂模块.

管理配置、求解器和求解管理器实例的创建。
"""

from pathlib import Path
from typing import TYPE_CHECKING, Optional

from src.config import Algorithm, ConfigManager, SolverConfig
from src.game import ParityGame
from src.services import FixpointSolver, JustifySolver, PromotionSolver, ZielonkaSolver

if TYPE_CHECKING:
    from src.core.solve_manager import SolveManager

_SOLVERS: dict[Algorithm, type[JustifySolver]] = {
    Algorithm.FIXPOINT: FixpointSolver,
    Algorithm.ZIELONKA: ZielonkaSolver,
    Algorithm.PRIORITY_PROMOTION: PromotionSolver,
}


class SolverFactory:
    """求解器工厂类.

    单例; 配置和求解管理器在第一次使用时创建。
    """

    _instance: Optional["SolverFactory"] = None
    _config: ConfigManager | None = None
    _solve_manager: Optional["SolveManager"] = None

    def __new__(cls) -> "SolverFactory":
        """单例模式实现."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self) -> None:
        """初始化求解器工厂."""
        # 单例模式，避免重复初始化
        if hasattr(self, "_initialized"):
            return

        self._initialized = True

    def get_config(self, config_file: str | Path | None = None) -> ConfigManager:
        """获取配置管理器实例.

        Args:
            config_file: 配置文件路径, 为 None 时使用默认文件

        Returns
        -------
            配置管理器实例
        """
        if self._config is None:
            self._config = ConfigManager(config_file)
            self._config.validate()

        return self._config

    def solver_config(self, **overrides: object) -> SolverConfig:
        """用配置文件中的默认值构造求解器配置, 关键字参数优先."""
        config = self.get_config()
        values: dict[str, object] = {
            "reset_policy": config.reset_policy,
            "reverse_index": config.reverse_index,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return SolverConfig(**values)  # type: ignore[arg-type]

    @staticmethod
    def create_solver(game: ParityGame, config: SolverConfig) -> JustifySolver:
        """按算法创建求解器.

        Args:
            game: 博弈
            config: 求解器配置

        Returns
        -------
            求解器实例
        """
        return _SOLVERS[config.algorithm](game, config)

    def get_solve_manager(self, config: ConfigManager | None = None) -> "SolveManager":
        """获取求解管理器实例.

        Args:
            config: 配置管理器，如果为None则使用默认配置

        Returns
        -------
            求解管理器实例
        """
        from src.core.solve_manager import SolveManager

        if config is None:
            config = self.get_config()

        if self._solve_manager is None:
            self._solve_manager = SolveManager(config)

        return self._solve_manager

    def reset(self) -> None:
        """重置所有实例."""
        self._config = None
        self._solve_manager = None
