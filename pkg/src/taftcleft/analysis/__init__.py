"""
TAFT-CLEFT Analysis Module

The exhaustive theorem verifier.
"""

from taftcleft.analysis.theorem import (
    PairRecord,
    VerifierReport,
    verify_theorem,
)

__all__ = [
    'PairRecord',
    'VerifierReport',
    'verify_theorem',
]
