"""
TAFT-CLEFT Constants Module

Centralized constants used throughout the package.
"""

from typing import Any, Dict

# Package version
VERSION = "1.0.0"

# JSON report schema
REPORT_SCHEMA = 1

# Symbol aliases for the three labels the identities use
SYMBOL_ALIASES = {
    'E': (0, 0),  # Z^1
    'G': (1, 0),  # Z^g
    'X': (0, 1),  # Z^x
}

# Budgets and knobs; overridden by config/taftcleft.*.yaml
DEFAULT_SETTINGS: Dict[str, Any] = {
    'max_ring_elements': 2048,
    'max_fingerprint_words': 400,
    'max_fingerprint_maps': 4096,
    'identity_check_max_maps': 4096,
    'axiom_samples': 200,
    'random_seed': 20240611,
    'workers': 1,
    'chunk_size': 2048,
}

# Rings up to this size get exhaustive axiom checks
EXHAUSTIVE_AXIOM_LIMIT = 12

# Base-ring sugar accepted by the ring grammar
FIELD_SUGAR_PREFIX = 'F_'

# Environment variable naming a settings file
CONFIG_ENV_VAR = 'TAFTCLEFT_CONFIG'

# Reference rings for verifier runs: (spec, N, expected classes)
REFERENCE_RINGS = [
    ('Z/5', 2, 10),
    ('Z/7', 3, 21),
    ('GF(2^2)', 3, 12),
    ('Z/25', 2, 50),
    ('F_5[t]/(t^2)', 2, 50),
    ('Z/5 x Z/5', 2, 100),
]
