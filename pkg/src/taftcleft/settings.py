"""
TAFT-CLEFT Settings

Budgets and execution knobs, loaded from YAML the same way for the library
and the command line.
"""

import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from taftcleft.errors import ConfigError
from taftcleft.utils.constants import CONFIG_ENV_VAR, DEFAULT_SETTINGS


@dataclass(frozen=True)
class Settings:
    """
    Exhaustive-computation budgets.

    Attributes:
        max_ring_elements: Largest ring whose elements may be enumerated
        max_fingerprint_words: Largest word space a full fingerprint may span
        max_fingerprint_maps: Largest comodule-map family a full fingerprint
            may evaluate; beyond it the verifier uses transport certificates
        identity_check_max_maps: Largest solution set solve_copy enumerates
        axiom_samples: Random triples used when axioms are not checked
            exhaustively
        random_seed: Seed for every sampled check
        workers: Process count for the verifier (1 runs in-process)
        chunk_size: Pairs per worker task
    """

    max_ring_elements: int = DEFAULT_SETTINGS['max_ring_elements']
    max_fingerprint_words: int = DEFAULT_SETTINGS['max_fingerprint_words']
    max_fingerprint_maps: int = DEFAULT_SETTINGS['max_fingerprint_maps']
    identity_check_max_maps: int = DEFAULT_SETTINGS['identity_check_max_maps']
    axiom_samples: int = DEFAULT_SETTINGS['axiom_samples']
    random_seed: int = DEFAULT_SETTINGS['random_seed']
    workers: int = DEFAULT_SETTINGS['workers']
    chunk_size: int = DEFAULT_SETTINGS['chunk_size']

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ConfigError(f"Setting '{f.name}' must be an integer, got {value!r}")
            if f.name != 'random_seed' and value < 1:
                raise ConfigError(f"Setting '{f.name}' must be positive, got {value}")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Settings':
        """Build settings from a mapping, rejecting unknown keys."""
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Unknown settings: {sorted(unknown)}")
        return cls(**data)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return asdict(self)

    def with_overrides(self, **overrides: Any) -> 'Settings':
        """Return a copy with the non-None overrides applied."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **changes) if changes else self


def load_settings(config_path: Optional[Union[str, Path]] = None) -> Settings:
    """
    Load settings from a YAML file.

    Args:
        config_path: Path to YAML configuration. Falls back to the file named
            by ``TAFTCLEFT_CONFIG``, then to the built-in defaults.

    Returns:
        Settings with the file's entries merged over the defaults

    Raises:
        ConfigError: If the file is not a mapping or names unknown keys
    """
    if config_path is None:
        config_path = os.environ.get(CONFIG_ENV_VAR)
    if not config_path:
        return Settings()

    with open(config_path, 'r') as f:
        data = yaml.safe_load(f) or {}

    if not isinstance(data, dict):
        raise ConfigError(f"{config_path}: expected a mapping at top level")

    # Files may group everything under a 'taftcleft' section
    data = data.get('taftcleft', data)
    merged = dict(DEFAULT_SETTINGS)
    merged.update(data)
    return Settings.from_dict(merged)
