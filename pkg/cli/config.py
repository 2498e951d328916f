"""
config.py - Run defaults from assets/config/simulation_config.json and the environment
"""
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

logger = logging.getLogger(__name__)

CONFIG_PATH = Path(__file__).resolve().parent.parent / "assets" / "config" / "simulation_config.json"
WORKERS_ENV = "QGB_MAX_WORKERS"

# Default run configuration
DEFAULT_CONFIG = {
    "shots": 20000,
    "seed": 7,
    "block_size": 8,
    "branch_budget": 1 << 20,
    "max_workers": 1,
    "progress": False,
    "log_level": "INFO",
}


def load_config(config_path: Optional[Union[str, Path]] = CONFIG_PATH) -> Dict[str, Any]:
    """
    Load run defaults.

    Starts from DEFAULT_CONFIG, overlays the JSON file when it exists, then
    applies the worker cap from QGB_MAX_WORKERS.

    Args:
        config_path: Path to the JSON config file, or None for built-in defaults

    Returns:
        Configuration dictionary
    """
    config = DEFAULT_CONFIG.copy()

    if config_path and Path(config_path).exists():
        try:
            with open(config_path, "r", encoding="utf-8") as f:
                config.update(json.load(f))
            logger.debug(f"Loaded config from {config_path}")
        except Exception as e:
            logger.error(f"Error loading config from {config_path}: {str(e)}")
            logger.warning("Using default configuration")
            config = DEFAULT_CONFIG.copy()
    elif config_path:
        logger.warning(f"Config file not found: {config_path}. Using defaults.")

    cap = os.environ.get(WORKERS_ENV)
    if cap:
        try:
            config["worker_cap"] = max(1, int(cap))
        except ValueError:
            logger.warning(f"Ignoring non-integer {WORKERS_ENV}={cap!r}")

    return config


def resolve_workers(requested: Optional[int], config: Dict[str, Any]) -> int:
    """Worker count: the flag, else the config value, never above the environment cap."""
    workers = requested if requested is not None else int(config["max_workers"])
    cap = config.get("worker_cap")
    if cap is not None:
        workers = min(workers, cap)
    return max(1, workers)
