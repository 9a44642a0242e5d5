"""配置管理包."""

from src.config.config_manager import ConfigManager
from src.config.solver_config import Algorithm, SolverConfig

__all__ = ["Algorithm", "ConfigManager", "SolverConfig"]
