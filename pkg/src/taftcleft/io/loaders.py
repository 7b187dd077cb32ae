"""
TAFT-CLEFT Data Loaders

Functions for reading polynomial lists and saved reports.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Union

from taftcleft.errors import ConfigError
from taftcleft.utils.constants import REPORT_SCHEMA


def load_polynomial_file(file_path: Union[str, Path]) -> List[str]:
    """
    Load one polynomial per line.

    Blank lines are skipped; ``#`` starts a comment.

    Args:
        file_path: Path to the polynomial file

    Returns:
        Polynomial texts in file order
    """
    file_path = Path(file_path)

    if not file_path.exists():
        raise FileNotFoundError(f"File not found: {file_path}")

    polynomials = []
    with open(file_path, 'r') as f:
        for line in f:
            text = line.split('#', 1)[0].strip()
            if text:
                polynomials.append(text)
    return polynomials


def load_report(file_path: Union[str, Path]) -> Dict[str, Any]:
    """
    Load a JSON report written by the verifier.

    Raises:
        ConfigError: If the schema version is missing or unsupported
    """
    file_path = Path(file_path)

    if not file_path.exists():
        raise FileNotFoundError(f"File not found: {file_path}")

    with open(file_path, 'r') as f:
        data = json.load(f)

    if data.get('schema') != REPORT_SCHEMA:
        raise ConfigError(f"{file_path}: unsupported report schema {data.get('schema')!r}")
    return data
