"""
TAFT-CLEFT: Cleft Extensions of Taft Algebras over Finite Rings
================================================================

Exhaustive tools for the Taft Hopf algebras H_N^q over finite commutative
rings, their cleft extensions B_(u,a,b), the polynomial H-identities those
extensions satisfy, and the isomorphism problem between them.

Key Components:
    - algebra: rings, Taft algebras, cleft extensions, identities, isomorphisms
    - analysis: exhaustive verifier comparing identities against isomorphism
    - io: JSON/CSV exporters and loaders
    - cli: Command-line interface (``taftcleft``)

Version: 1.0.0
"""

from taftcleft.utils.constants import VERSION

__version__ = VERSION

# Import main components
from taftcleft.core import TaftCleft, IdentityCheckResult, classify, verify
from taftcleft.algebra import (
    FiniteRing,
    TaftParams,
    CleftData,
    ZPolynomial,
    parse_ring_spec,
    parse_polynomial,
    are_isomorphic,
    iso_classes,
)
from taftcleft.analysis import VerifierReport, verify_theorem
from taftcleft.settings import Settings, load_settings

__all__ = [
    'TaftCleft',
    'IdentityCheckResult',
    'classify',
    'verify',
    'FiniteRing',
    'TaftParams',
    'CleftData',
    'ZPolynomial',
    'parse_ring_spec',
    'parse_polynomial',
    'are_isomorphic',
    'iso_classes',
    'VerifierReport',
    'verify_theorem',
    'Settings',
    'load_settings',
]
