"""
TAFT-CLEFT Command Line Interface
"""

from taftcleft.cli.main import main, cli

__all__ = ['main', 'cli']
