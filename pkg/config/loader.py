"""Run configuration: defaults overridden by an optional JSON file"""

import copy
import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional

from core.errors import ConfigError
from .defaults import (
    CUT_LIMIT, DEFAULT_HORIZON, INTERVAL_PREC_BITS, INTERVAL_WIDTH, SCC_RETRY_LIMIT,
    SEARCH_BUDGET, SUITE_DEFAULTS, SUITE_SEED,
)

logger = logging.getLogger(__name__)

CACHE_ENV = 'IW_CACHE_DIR'

_SCALARS = {
    'horizon': int,
    'search_budget': int,
    'precision_bits': int,
    'interval_width': str,
    'retry_limit': int,
    'cut_limit': int,
    'seed': int,
}


@dataclass
class HarnessConfig:
    horizon: int = DEFAULT_HORIZON
    search_budget: int = SEARCH_BUDGET
    precision_bits: int = INTERVAL_PREC_BITS
    interval_width: str = INTERVAL_WIDTH
    retry_limit: int = SCC_RETRY_LIMIT
    cut_limit: int = CUT_LIMIT
    seed: int = SUITE_SEED
    suites: Dict[str, Dict[str, Any]] = field(default_factory=lambda: copy.deepcopy(SUITE_DEFAULTS))

    def suite(self, name: str) -> Dict[str, Any]:
        return dict(self.suites.get(name, {}))

    @property
    def width(self) -> Fraction:
        return Fraction(self.interval_width)

    def to_dict(self) -> Dict[str, Any]:
        out = {key: getattr(self, key) for key in _SCALARS}
        out['suites'] = copy.deepcopy(self.suites)
        return out


def _same_type(value: Any, default: Any) -> bool:
    if isinstance(default, bool):
        return isinstance(value, bool)
    if isinstance(default, int):
        return isinstance(value, int) and not isinstance(value, bool)
    if isinstance(default, list):
        return isinstance(value, list) and all(
            _same_type(v, default[0]) for v in value
        ) if default else isinstance(value, list)
    return isinstance(value, type(default))


def from_dict(data: Any, base: Optional[HarnessConfig] = None) -> HarnessConfig:
    """Apply overrides to base; every problem is reported with its JSON path"""
    config = copy.deepcopy(base) if base else HarnessConfig()
    if not isinstance(data, dict):
        raise ConfigError('$', "top level must be an object")
    for key, value in data.items():
        if key == 'suites':
            _apply_suites(config, value)
            continue
        kind = _SCALARS.get(key)
        if kind is None:
            raise ConfigError(key, "unknown setting")
        if kind is int and (not isinstance(value, int) or isinstance(value, bool)):
            raise ConfigError(key, f"expected an integer, got {value!r}")
        if kind is str and not isinstance(value, str):
            raise ConfigError(key, f"expected a string, got {value!r}")
        setattr(config, key, value)
    if config.horizon < 2:
        raise ConfigError('horizon', "horizon must be at least 2")
    if config.search_budget < 1:
        raise ConfigError('search_budget', "budget must be positive")
    try:
        if config.width <= 0:
            raise ConfigError('interval_width', "width must be positive")
    except (ValueError, ZeroDivisionError):
        raise ConfigError('interval_width', f"not a rational: {config.interval_width!r}")
    return config


def _apply_suites(config: HarnessConfig, value: Any):
    if not isinstance(value, dict):
        raise ConfigError('suites', "expected an object keyed by suite name")
    for name, overrides in value.items():
        path = f"suites.{name}"
        if name not in config.suites:
            raise ConfigError(path, "unknown suite")
        if not isinstance(overrides, dict):
            raise ConfigError(path, "expected an object")
        current = config.suites[name]
        for key, setting in overrides.items():
            if key not in current:
                raise ConfigError(f"{path}.{key}", "unknown setting")
            if not _same_type(setting, current[key]):
                raise ConfigError(
                    f"{path}.{key}", f"expected {type(current[key]).__name__}, got {setting!r}"
                )
            current[key] = setting


def load_config(path: Optional[str] = None) -> HarnessConfig:
    if path is None:
        return HarnessConfig()
    try:
        with open(path, 'r', encoding='utf-8') as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ConfigError('$', f"no config file at {path}")
    except json.JSONDecodeError as e:
        raise ConfigError('$', f"invalid JSON at line {e.lineno}: {e.msg}")
    config = from_dict(data)
    logger.info("loaded config from %s", path)
    return config


def cache_dir() -> Optional[str]:
    """Directory for certificate files, from IW_CACHE_DIR"""
    return os.environ.get(CACHE_ENV) or None
