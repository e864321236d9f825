"""
SnCharLab Local Configuration Manager

Manages the config.json file stored in ~/.sncharlab/.
This file stores experiment budgets, the default worker count,
sampler limits and the table cache location.
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, Optional

from app.constants import (
    DEFAULT_BUDGETS,
    DEFAULT_MAX_REJECTIONS,
    DEFAULT_SEED,
    ENV_CACHE_DIR,
    EXACT_TCORE_MAX_N,
    LOCAL_APP_FOLDER,
    LOCAL_CACHE_FOLDER,
    LOCAL_CONFIG_FILE,
    LOCAL_LOGS_FOLDER,
)

logger = logging.getLogger(__name__)


@dataclass
class LabConfig:
    """
    Local configuration for experiment runs.

    Attributes:
        cache_dir: Folder for table cache files (None = resolve from env/default)
        threads: Worker processes for table columns and certificate sweeps
        budgets: Largest n accepted per experiment (see DEFAULT_BUDGETS)
        memory_cap_mb: Abort table construction above this estimate (None = no cap)
        max_rejections: Consecutive Boltzmann rejections tolerated per sample
        exact_tcore_max_n: Sampled densities use exact t-core counts up to this n
        default_seed: Seed used when --seed is not given
        show_progress: Show tqdm progress bars on long loops
    """

    cache_dir: Optional[str] = None
    threads: int = 1
    budgets: Dict[str, int] = field(default_factory=lambda: dict(DEFAULT_BUDGETS))
    memory_cap_mb: Optional[float] = None
    max_rejections: int = DEFAULT_MAX_REJECTIONS
    exact_tcore_max_n: int = EXACT_TCORE_MAX_N
    default_seed: int = DEFAULT_SEED
    show_progress: bool = False

    def budget(self, name: str) -> int:
        """
        Get a budget limit by key.

        Args:
            name: Budget key (e.g. "lemma21_max_n")

        Returns:
            Largest n allowed for that experiment
        """
        if name in self.budgets:
            return self.budgets[name]
        return DEFAULT_BUDGETS[name]

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "LabConfig":
        """Create a LabConfig from a dictionary, ignoring unknown keys."""
        budgets = dict(DEFAULT_BUDGETS)
        budgets.update(data.get("budgets") or {})
        return cls(
            cache_dir=data.get("cache_dir"),
            threads=int(data.get("threads", 1)),
            budgets=budgets,
            memory_cap_mb=data.get("memory_cap_mb"),
            max_rejections=int(data.get("max_rejections", DEFAULT_MAX_REJECTIONS)),
            exact_tcore_max_n=int(data.get("exact_tcore_max_n", EXACT_TCORE_MAX_N)),
            default_seed=int(data.get("default_seed", DEFAULT_SEED)),
            show_progress=bool(data.get("show_progress", False)),
        )


class ConfigManager:
    """
    Manages the local configuration file.

    The configuration is stored in:
    - ~/.sncharlab/config.json
    Logs go to ~/.sncharlab/logs/ and cached tables to ~/.sncharlab/cache/
    unless overridden.
    """

    _instance: Optional["ConfigManager"] = None
    _config: Optional[LabConfig] = None

    def __new__(cls) -> "ConfigManager":
        """Singleton pattern - only one ConfigManager instance."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    @classmethod
    def get_instance(cls) -> "ConfigManager":
        """Get the singleton ConfigManager instance."""
        if cls._instance is None:
            cls._instance = cls()
        return cls._instance

    @classmethod
    def reset_instance(cls) -> None:
        """Reset the singleton instance (mainly for testing)."""
        cls._instance = None
        cls._config = None

    @staticmethod
    def get_local_app_folder() -> Path:
        """
        Get the local app folder path.

        Returns:
            Path to ~/.sncharlab
        """
        return Path.home() / LOCAL_APP_FOLDER

    @staticmethod
    def get_config_path() -> Path:
        """Get the path to the config.json file."""
        return ConfigManager.get_local_app_folder() / LOCAL_CONFIG_FILE

    @staticmethod
    def get_logs_folder() -> Path:
        """Get the path to the logs folder."""
        return ConfigManager.get_local_app_folder() / LOCAL_LOGS_FOLDER

    def ensure_local_folders(self) -> None:
        """
        Ensure the local app folder and subfolders exist.

        Creates:
        - ~/.sncharlab/
        - ~/.sncharlab/logs/
        """
        app_folder = self.get_local_app_folder()
        logs_folder = self.get_logs_folder()

        try:
            app_folder.mkdir(parents=True, exist_ok=True)
            logs_folder.mkdir(parents=True, exist_ok=True)
            logger.debug(f"Local folders ensured at: {app_folder}")
        except OSError as e:
            logger.error(f"Failed to create local folders: {e}")
            raise

    def load(self) -> LabConfig:
        """
        Load the configuration from disk.

        Returns:
            LabConfig instance (defaults if the file doesn't exist or is invalid)
        """
        if self._config is not None:
            return self._config

        config_path = self.get_config_path()

        if not config_path.exists():
            logger.info("No config file found, using defaults")
            self._config = LabConfig()
            return self._config

        try:
            with open(config_path, "r", encoding="utf-8") as f:
                data = json.load(f)
                self._config = LabConfig.from_dict(data)
                logger.info(f"Config loaded from: {config_path}")
                return self._config
        except (json.JSONDecodeError, TypeError, ValueError) as e:
            logger.warning(f"Invalid config file, using defaults: {e}")
            self._config = LabConfig()
            return self._config
        except OSError as e:
            logger.error(f"Failed to read config file: {e}")
            self._config = LabConfig()
            return self._config

    def save(self, config: LabConfig) -> None:
        """
        Save the configuration to disk.

        Args:
            config: LabConfig instance to save
        """
        self.ensure_local_folders()
        config_path = self.get_config_path()

        try:
            with open(config_path, "w", encoding="utf-8") as f:
                json.dump(config.to_dict(), f, indent=2)
            self._config = config
            logger.info(f"Config saved to: {config_path}")
        except OSError as e:
            logger.error(f"Failed to save config file: {e}")
            raise

    def update(self, **kwargs) -> LabConfig:
        """
        Update specific configuration values and save.

        Args:
            **kwargs: LabConfig fields to update

        Returns:
            Updated LabConfig instance
        """
        config = self.load()

        for key, value in kwargs.items():
            if not hasattr(config, key):
                raise ValueError(f"Unknown config key: {key}")
            setattr(config, key, value)

        self.save(config)
        return config

    def resolve_cache_dir(self, flag_value: Optional[str] = None) -> Path:
        """
        Resolve the table cache folder.

        Precedence: --cache-dir flag, then SNCHARLAB_CACHE_DIR, then the
        config file, then ~/.sncharlab/cache.

        Args:
            flag_value: Value of --cache-dir, if given

        Returns:
            Path to the cache folder (not created)
        """
        if flag_value:
            return Path(flag_value)

        env_value = os.environ.get(ENV_CACHE_DIR)
        if env_value:
            return Path(env_value)

        config = self.load()
        if config.cache_dir:
            return Path(config.cache_dir)

        return self.get_local_app_folder() / LOCAL_CACHE_FOLDER

    def reset(self) -> None:
        """Reset to default configuration (clears all saved settings)."""
        self._config = LabConfig()
        config_path = self.get_config_path()
        if config_path.exists():
            try:
                config_path.unlink()
                logger.info("Config file deleted")
            except OSError as e:
                logger.error(f"Failed to delete config file: {e}")
