"""配置管理模块.

统一管理项目配置，支持从JSON文件加载配置，并用 dotenv 文件中的
``PG_JUSTIFY_<KEY>`` 覆盖。两者都是可选的，缺省时使用默认值。
"""

import json
from pathlib import Path
from typing import Any

from dotenv import dotenv_values

from src.justification import ResetPolicy, ReverseIndexKind

DEFAULT_CONFIG_FILE = ".pg-justify.json"
ENV_PREFIX = "PG_JUSTIFY_"

DEFAULTS: dict[str, Any] = {
    "log_level": "INFO",
    "log_file": None,
    "oracle_bound": 12,
    "oracle_strategy_limit": 200_000,
    "play_limit": 100_000,
    "reverse_index": ReverseIndexKind.SCAN.value,
    "reset_policy": ResetPolicy.MINIMAL.value,
    "corpus_workers": 1,
}

_POSITIVE_KEYS = ("oracle_bound", "oracle_strategy_limit", "play_limit", "corpus_workers")


def _project_root() -> Path:
    # src 的父目录
    return Path(__file__).parent.parent.parent


class ConfigManager:
    """配置管理器类.

    负责加载、验证和管理项目配置。
    """

    def __init__(
        self,
        config_file: str | Path | None = None,
        env_file: str | Path | None = ".env",
    ) -> None:
        """初始化配置管理器.

        Args:
            config_file: 配置文件路径，支持相对路径和绝对路径；为 None 时使用项目根目录下的
                默认文件（不存在则只用默认值）
            env_file: dotenv 文件路径，不存在时忽略

        Raises
        ------
            FileNotFoundError: 显式指定的配置文件不存在
        """
        explicit = config_file is not None
        path = Path(config_file) if config_file is not None else Path(DEFAULT_CONFIG_FILE)
        if not path.is_absolute():
            path = _project_root() / path if not explicit else path.resolve()
        self.config_file = path
        self.env_file = Path(env_file) if env_file is not None else None

        self._config: dict[str, Any] = dict(DEFAULTS)
        self._load_config(required=explicit)
        self._load_env()

    def _load_config(self, *, required: bool) -> None:
        """加载配置文件."""
        if not self.config_file.exists():
            if required:
                msg = f"配置文件不存在: {self.config_file}"
                raise FileNotFoundError(msg)
            return

        try:
            with Path.open(self.config_file, encoding="utf-8") as f:
                loaded = json.load(f)
        except json.JSONDecodeError as e:
            msg = f"配置文件格式错误: {e}"
            raise ValueError(msg) from e
        if not isinstance(loaded, dict):
            msg = "配置文件顶层必须是对象"
            raise ValueError(msg)
        self._config.update(loaded)

    def _load_env(self) -> None:
        """用 dotenv 文件中的 PG_JUSTIFY_<KEY> 覆盖配置."""
        if self.env_file is None or not self.env_file.exists():
            return
        for key, value in dotenv_values(self.env_file).items():
            if key.startswith(ENV_PREFIX) and value is not None:
                self._config[key.removeprefix(ENV_PREFIX).lower()] = value

    def get(self, key: str, default: Any = None) -> Any:
        """获取配置值.

        Args:
            key: 配置键
            default: 默认值

        Returns
        -------
            配置值
        """
        return self._config.get(key, default)

    def _get_int(self, key: str) -> int:
        try:
            return int(self._config[key])
        except (TypeError, ValueError) as e:
            msg = f"配置项 {key} 必须是整数: {self._config[key]!r}"
            raise ValueError(msg) from e

    @property
    def log_level(self) -> str:
        """获取日志级别."""
        return str(self.get("log_level", "INFO")).upper()

    @property
    def log_file(self) -> str | None:
        """获取日志文件路径."""
        path = self.get("log_file")
        if not path:
            return None
        # 处理相对路径
        if not Path(path).is_absolute():
            return str(_project_root() / path)
        return str(path)

    @property
    def oracle_bound(self) -> int:
        """获取穷举求解的节点数上限."""
        return self._get_int("oracle_bound")

    @property
    def oracle_strategy_limit(self) -> int:
        """获取穷举求解的策略数上限."""
        return self._get_int("oracle_strategy_limit")

    @property
    def play_limit(self) -> int:
        """获取对局枚举上限."""
        return self._get_int("play_limit")

    @property
    def corpus_workers(self) -> int:
        """获取语料运行的并行数."""
        return self._get_int("corpus_workers")

    @property
    def reverse_index(self) -> ReverseIndexKind:
        """获取反向依赖编码方式."""
        return ReverseIndexKind(str(self.get("reverse_index")))

    @property
    def reset_policy(self) -> ResetPolicy:
        """获取重置策略."""
        return ResetPolicy(str(self.get("reset_policy")))

    def validate(self) -> None:
        """验证配置.

        Raises
        ------
            ValueError: 枚举值未知或上限不是正整数
        """
        problems: list[str] = []
        for key in _POSITIVE_KEYS:
            try:
                if self._get_int(key) < 1:
                    problems.append(f"{key} 必须为正")
            except ValueError as e:
                problems.append(str(e))
        for key, enum in (("reverse_index", ReverseIndexKind), ("reset_policy", ResetPolicy)):
            value = str(self.get(key))
            if value not in {m.value for m in enum}:
                problems.append(f"{key} 的取值未知: {value}")
        if problems:
            msg = f"配置不合法: {'; '.join(problems)}"
            raise ValueError(msg)

    def get_all_config(self) -> dict[str, Any]:
        """获取所有配置（用于调试）.

        Returns
        -------
            所有配置的字典
        """
        return {key: self.get(key) for key in DEFAULTS}
