"""
TAFT-CLEFT Algebra Module

Finite commutative rings, Taft algebras, their cleft extensions,
polynomial identities and the isomorphism criterion.
"""

from taftcleft.algebra.ring import (
    FiniteRing,
    RingElement,
    parse_ring_spec,
    parse_element,
    ring_structure,
    cyclotomic_roots,
    has_nth_root,
    check_hypotheses,
)
from taftcleft.algebra.taft import (
    TaftParams,
    TaftAlgebra,
    taft_algebra,
    q_binomial,
    skew_binomial_check,
)
from taftcleft.algebra.cleft import (
    CleftData,
    CleftExtension,
    cleft_extension,
)
from taftcleft.algebra.identities import (
    ZSymbol,
    ZPolynomial,
    ComoduleMap,
    Fingerprint,
    parse_polynomial,
    enumerate_comodule_maps,
    is_identity,
    formal_expansion,
    build_Pa,
    build_Qu,
    fingerprint,
    fingerprint_fits,
)
from taftcleft.algebra.iso import (
    IsoWitness,
    normalize_b,
    build_iso,
    are_isomorphic,
    iso_classes,
)

__all__ = [
    'FiniteRing',
    'RingElement',
    'parse_ring_spec',
    'parse_element',
    'ring_structure',
    'cyclotomic_roots',
    'has_nth_root',
    'check_hypotheses',
    'TaftParams',
    'TaftAlgebra',
    'taft_algebra',
    'q_binomial',
    'skew_binomial_check',
    'CleftData',
    'CleftExtension',
    'cleft_extension',
    'ZSymbol',
    'ZPolynomial',
    'ComoduleMap',
    'Fingerprint',
    'parse_polynomial',
    'enumerate_comodule_maps',
    'is_identity',
    'formal_expansion',
    'build_Pa',
    'build_Qu',
    'fingerprint',
    'fingerprint_fits',
    'IsoWitness',
    'normalize_b',
    'build_iso',
    'are_isomorphic',
    'iso_classes',
]
