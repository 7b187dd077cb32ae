"""
TAFT-CLEFT Utilities Module

Constants and small helpers for the command line and reports.
"""

from taftcleft.utils.helpers import (
    check_import,
    configure_logging,
    format_data,
    format_class,
)
from taftcleft.utils.constants import (
    VERSION,
    REPORT_SCHEMA,
    SYMBOL_ALIASES,
    DEFAULT_SETTINGS,
    REFERENCE_RINGS,
)

__all__ = [
    'check_import',
    'configure_logging',
    'format_data',
    'format_class',
    'VERSION',
    'REPORT_SCHEMA',
    'SYMBOL_ALIASES',
    'DEFAULT_SETTINGS',
    'REFERENCE_RINGS',
]
