"""
TAFT-CLEFT Helper Functions

Small utilities shared by the command line and the reports.
"""

import logging
from typing import TYPE_CHECKING, Optional, Sequence, Union

if TYPE_CHECKING:
    from taftcleft.algebra.cleft import CleftData


def check_import(module_name: str) -> Optional[Union[str, bool]]:
    """Return the installed version of a module, True if it has none, None if missing."""
    try:
        module = __import__(module_name)
        if hasattr(module, '__version__'):
            return module.__version__
        else:
            return True
    except ImportError:
        return None


def configure_logging(verbosity: int = 0) -> None:
    """WARNING by default, INFO for -v, DEBUG for -vv."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format='%(asctime)s %(levelname)s %(name)s: %(message)s')


def format_data(d: 'CleftData', with_b: bool = False) -> str:
    """
    Short text for a datum.

    Args:
        d: Cleft data
        with_b: Include b

    Returns:
        "u=2 a=3" style string
    """
    text = f"u={d.u} a={d.a}"
    return f"{text} b={d.b}" if with_b else text


def format_class(members: Sequence['CleftData'], limit: int = 6) -> str:
    """Comma-separated members, elided after limit."""
    shown = ', '.join(f"({d.u},{d.a})" for d in members[:limit])
    if len(members) > limit:
        shown += f", ... ({len(members)} total)"
    return shown
