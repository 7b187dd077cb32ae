"""
TAFT-CLEFT Input/Output Module

Functions for loading and exporting polynomials and reports.
"""

from taftcleft.io.loaders import (
    load_polynomial_file,
    load_report,
)
from taftcleft.io.exporters import (
    export_to_csv,
    export_to_json,
    export_report,
)

__all__ = [
    'load_polynomial_file',
    'load_report',
    'export_to_csv',
    'export_to_json',
    'export_report',
]
