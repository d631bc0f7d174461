"""
Configuration layer.

Defaults live in defaults.json next to this file. A user file passed with
--config is merged on top, key by key.
"""

import copy
import json
import logging
import os
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

DEFAULTS_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'defaults.json')


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_defaults() -> Dict[str, Any]:
    """Read the packaged defaults."""
    with open(DEFAULTS_FILE, 'r', encoding='utf-8') as f:
        return json.load(f)


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load the effective configuration.

    Args:
        path: optional JSON file whose keys override the defaults.

    Returns:
        A fresh nested dict; callers may mutate it.
    """
    config = load_defaults()
    if path is None:
        return config
    if not os.path.exists(path):
        raise FileNotFoundError(f"Config file not found: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        user = json.load(f)
    logger.info(f"Loaded config overrides from {path}: {sorted(user)}")
    return _merge(config, user)


_CONFIG: Optional[Dict[str, Any]] = None


def get_config() -> Dict[str, Any]:
    """Process-wide configuration (defaults unless set_config was called)."""
    global _CONFIG
    if _CONFIG is None:
        _CONFIG = load_defaults()
    return _CONFIG


def set_config(config: Dict[str, Any]) -> None:
    global _CONFIG
    _CONFIG = config
