"""
Core entry point: one ring, one N, one q.

TaftCleft bundles a parsed ring with the Taft parameters and exposes the
workflows the command line runs: ring analysis, classification of the
cleft extensions with b = 0, identity checks on one extension and the
exhaustive theorem verifier.
"""

import json
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Union

import pandas as pd

from taftcleft.algebra.cleft import CleftData, CleftExtension, cleft_extension
from taftcleft.algebra.identities import (
    ComoduleMap,
    ZPolynomial,
    ZSymbol,
    build_Pa,
    build_Qu,
    family_size,
    find_witness,
    parse_polynomial,
)
from taftcleft.algebra.iso import iso_classes, normalize_b
from taftcleft.algebra.ring import (
    ElementLike,
    FiniteRing,
    check_hypotheses,
    cyclotomic_roots,
    local_blocks,
    max_order_generation,
    parse_element,
    parse_ring_spec,
    ring_structure,
)
from taftcleft.algebra.taft import TaftParams
from taftcleft.analysis.theorem import VerifierReport, verify_theorem
from taftcleft.errors import HypothesisError
from taftcleft.settings import Settings, load_settings

logger = logging.getLogger(__name__)


@dataclass
class IdentityCheckResult:
    """Container for one identity check."""

    polynomial: str
    data: CleftData
    is_identity: bool
    maps_checked: int
    witness: Optional[ComoduleMap] = None
    label: Optional[str] = None

    def to_dict(self) -> Dict:
        """Convert to dictionary."""
        return {
            'polynomial': self.polynomial,
            'label': self.label,
            'data': self.data.to_dict(),
            'is_identity': self.is_identity,
            'maps_checked': self.maps_checked,
            'witness': self.witness.to_dict() if self.witness is not None else None,
        }

    def to_json(self) -> str:
        """Convert to JSON string."""
        return json.dumps(self.to_dict(), indent=2)


class TaftCleft:
    """
    Cleft extensions of one Taft algebra over a finite ring.

    Attributes:
        ring: The coefficient ring
        N: Taft parameter N
        q: Root of the N-th cyclotomic polynomial, or None when R has none
        settings: Budgets used by every exhaustive step
    """

    def __init__(self, ring: Union[str, FiniteRing], N: int, q: Optional[ElementLike] = None,
                 settings: Optional[Settings] = None):
        """
        Initialize for a ring given by spec or object.

        Args:
            ring: Ring spec such as ``"Z/5"`` or a FiniteRing
            N: Integer >= 2
            q: Root of Phi_N; the first root in index order when omitted
            settings: Budgets, ``load_settings()`` by default

        Raises:
            RingSpecError: If the spec does not parse
            HypothesisError: If an explicit q is not a root of Phi_N
            ValueError: If N < 2
        """
        if N < 2:
            raise ValueError(f"N must be >= 2, got {N}")
        if isinstance(ring, str):
            self.settings = settings or load_settings()
            ring = parse_ring_spec(ring, self.settings)
        else:
            self.settings = settings or ring.settings
        self.ring = ring
        self.N = N
        if q is None:
            roots = cyclotomic_roots(ring, N)
            self.q = roots[0] if roots else None
        else:
            self.q = parse_element(ring, q) if isinstance(q, str) else ring.element(q)
        self._params = TaftParams.of(ring, N, self.q) if self.q is not None else None

    @property
    def params(self) -> TaftParams:
        if self._params is None:
            raise HypothesisError(f"Phi_{self.N} has no root in {self.ring.spec}")
        return self._params

    def data(self, u: ElementLike, a: ElementLike, b: ElementLike = 0) -> CleftData:
        """Cleft data from integers, tuples or element strings."""
        values = [parse_element(self.ring, v) if isinstance(v, str) else self.ring.element(v)
                  for v in (u, a, b)]
        return CleftData(*values)

    def cleft(self, u: ElementLike, a: ElementLike, b: ElementLike = 0) -> CleftExtension:
        return cleft_extension(self.params, self.data(u, a, b))

    def ring_report(self) -> Dict:
        """Structure of R, the roots of Phi_N and the standing hypotheses."""
        structure = ring_structure(self.ring)
        roots = cyclotomic_roots(self.ring, self.N)
        report = {
            'ring': self.ring.spec,
            'order': self.ring.order,
            'moduli': list(self.ring.moduli),
            'units': len(self.ring.unit_indices),
            **structure.to_dict(),
            'local_blocks': len(local_blocks(self.ring)),
            'max_order_generation': max_order_generation(self.ring),
            'N': self.N,
            'q_candidates': [r.to_json() for r in roots],
            'hypotheses': None,
        }
        if self.q is not None:
            report['hypotheses'] = check_hypotheses(self.ring, self.N, self.q).to_dict()
        return report

    def classify(self) -> List[List[CleftData]]:
        """Isomorphism classes of the data (u, a, 0)."""
        return iso_classes(self.params)

    def classify_frame(self) -> pd.DataFrame:
        """The class table, one row per datum."""
        rows = []
        for i, members in enumerate(self.classify()):
            for d in members:
                rows.append({'class': i, 'u': d.u.to_json(), 'a': d.a.to_json(),
                             'representative': d is members[0]})
        return pd.DataFrame(rows, columns=['class', 'u', 'a', 'representative'])

    def normalize(self, u: ElementLike, a: ElementLike, b: ElementLike) -> Dict:
        """The isomorphic datum with b = 0 and its witness."""
        normalized, witness = normalize_b(self.params, self.data(u, a, b))
        return {'data': normalized.to_dict(), 'witness': witness.to_dict()}

    def separator(self, kind: str, d: CleftData) -> ZPolynomial:
        """P_a or Q_u for the datum d."""
        if kind == 'Pa':
            return build_Pa(self.params, d.a)
        if kind == 'Qu':
            structure = ring_structure(self.ring)
            return build_Qu(self.params, d.u, structure.alpha, structure.beta)
        raise ValueError(f"Unknown separator '{kind}'; expected 'Pa' or 'Qu'")

    def identity_check(self, d: CleftData, polynomial: Union[str, ZPolynomial],
                       label: Optional[str] = None) -> IdentityCheckResult:
        """
        Decide whether a polynomial vanishes under every comodule algebra map.

        Args:
            d: Cleft data of the target algebra
            polynomial: ZPolynomial or its text
            label: Name shown in reports

        Returns:
            IdentityCheckResult, with the first nonvanishing map as witness
        """
        P = parse_polynomial(polynomial, self.ring, self.N) if isinstance(polynomial, str) else polynomial
        B = cleft_extension(self.params, d)
        maps = family_size(B, P.symbols() or (ZSymbol.alias('E'),))
        witness = find_witness(P, B, self.settings.chunk_size)
        return IdentityCheckResult(
            polynomial=P.to_text(),
            data=d,
            is_identity=witness is None,
            maps_checked=maps,
            witness=witness,
            label=label,
        )

    def verify(self, degree: Optional[int] = None, width: int = 1,
               check_identities: Optional[bool] = None) -> VerifierReport:
        """Run the exhaustive theorem verifier."""
        return verify_theorem(self.params, degree=degree, width=width, settings=self.settings,
                              check_identities=check_identities)


# Convenience functions
def classify(ring: str, N: int, q: Optional[ElementLike] = None) -> List[List[CleftData]]:
    """
    Convenience function to list isomorphism classes.

    Args:
        ring: Ring spec
        N: Taft parameter
        q: Root of Phi_N, first root by default

    Returns:
        Classes of data (u, a, 0)
    """
    return TaftCleft(ring, N, q).classify()


def verify(ring: str, N: int, q: Optional[ElementLike] = None,
           degree: Optional[int] = None) -> VerifierReport:
    """Convenience function running the theorem verifier."""
    return TaftCleft(ring, N, q).verify(degree=degree)
