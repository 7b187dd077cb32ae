"""
TAFT-CLEFT Theorem Verifier

Exhaustive check, over a finite ring, that two cleft extensions with the
same polynomial identities are isomorphic, and conversely.

Every unordered pair of data (u, a, 0) gets two independent decisions:

- fingerprint equality, settled by a separating identity (P_a or Q_u of one
  side evaluated under the section map of the other), by comparing full
  fingerprints, or by a transport certificate;
- isomorphism, from the criterion a' = a and u'/u an N-th power, with the
  witness rebuilt and verified as a comodule algebra map.

A pair on which the two decisions disagree is a counterexample.
"""

import logging
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from taftcleft.algebra.cleft import CleftData, cleft_extension
from taftcleft.algebra.identities import (
    Fingerprint,
    ZPolynomial,
    ZSymbol,
    build_Pa,
    build_Qu,
    evaluate,
    fingerprint,
    fingerprint_fits,
    is_identity,
    section_comodule_map,
)
from taftcleft.algebra.iso import (
    IsoWitness,
    are_isomorphic,
    b_zero_data,
    build_iso,
    iso_classes,
    transport_certificate,
)
from taftcleft.algebra.ring import HypothesisReport, RingElement, check_hypotheses, ring_structure
from taftcleft.algebra.taft import TaftParams
from taftcleft.errors import HypothesisError, InvalidWitnessError, VerificationError
from taftcleft.settings import Settings
from taftcleft.utils.constants import REPORT_SCHEMA

logger = logging.getLogger(__name__)

SEPARATOR_P = 'separator:P_a'
SEPARATOR_Q = 'separator:Q_u'
METHOD_FINGERPRINT = 'fingerprint'
METHOD_TRANSPORT = 'transport'
METHOD_UNDECIDED = 'undecided'


@dataclass
class PairRecord:
    """
    Both decisions for one unordered pair of data.

    Attributes:
        first: Datum d
        second: Datum d'
        fingerprints_equal: Whether the truncated identity sets agree, None
            when undecided
        isomorphic: Decision of the isomorphism criterion
        witness: Verified (s, t) for B_d' -> B_d when isomorphic
        method: How fingerprint equality was decided
        note: Error text when a step failed
    """

    first: CleftData
    second: CleftData
    fingerprints_equal: Optional[bool]
    isomorphic: bool
    witness: Optional[IsoWitness] = None
    method: str = METHOD_UNDECIDED
    note: Optional[str] = None

    @property
    def decided(self) -> bool:
        return self.fingerprints_equal is not None

    @property
    def agrees(self) -> bool:
        return self.decided and self.fingerprints_equal == self.isomorphic

    def to_dict(self) -> Dict:
        out = {
            'first': self.first.to_dict(with_b=False),
            'second': self.second.to_dict(with_b=False),
            'fingerprints_equal': self.fingerprints_equal,
            'isomorphic': self.isomorphic,
            'witness': self.witness.to_dict() if self.witness is not None else None,
            'method': self.method,
        }
        if self.note:
            out['note'] = self.note
        return out


@dataclass
class VerifierReport:
    """
    Outcome of verify_theorem.

    Attributes:
        ring_spec: Ring specification string
        N: Taft parameter N
        q: Root of unity q
        hypotheses: Standing-hypothesis report
        degree: Truncation degree D
        width: Symbol copies in fingerprints
        data: The data (u, a, 0) in (u, a) order
        classes: Isomorphism classes
        pairs: One record per unordered pair, in index order
        separators_confirmed: Whether every separator was confirmed to be an
            identity of its own algebra, None when the check was skipped
        errors: Failed steps
    """

    ring_spec: str
    N: int
    q: RingElement
    hypotheses: HypothesisReport
    degree: int
    width: int
    data: List[CleftData]
    classes: List[List[CleftData]]
    pairs: List[PairRecord] = field(default_factory=list)
    separators_confirmed: Optional[bool] = None
    errors: List[str] = field(default_factory=list)

    @property
    def counterexamples(self) -> List[PairRecord]:
        return [p for p in self.pairs if p.decided and not p.agrees]

    @property
    def undecided(self) -> List[PairRecord]:
        return [p for p in self.pairs if not p.decided]

    @property
    def ok(self) -> bool:
        return not (self.counterexamples or self.undecided or self.errors) \
            and self.separators_confirmed is not False

    def summary(self) -> Dict:
        """Counts, with the two implications reported separately."""
        methods: Dict[str, int] = {}
        for p in self.pairs:
            methods[p.method] = methods.get(p.method, 0) + 1
        return {
            'data': len(self.data),
            'classes': len(self.classes),
            'pairs': len(self.pairs),
            'isomorphic_pairs': sum(p.isomorphic for p in self.pairs),
            'methods': dict(sorted(methods.items())),
            # iso => equal fingerprints
            'iso_but_fingerprints_differ': sum(
                p.isomorphic and p.fingerprints_equal is False for p in self.pairs),
            # equal fingerprints => iso
            'fingerprints_equal_but_not_iso': sum(
                (not p.isomorphic) and p.fingerprints_equal is True for p in self.pairs),
            'counterexamples': len(self.counterexamples),
            'undecided': len(self.undecided),
            'errors': len(self.errors),
        }

    def to_dict(self) -> Dict:
        return {
            'schema': REPORT_SCHEMA,
            'ring': self.ring_spec,
            'N': self.N,
            'q': self.q.to_json(),
            'hypotheses': self.hypotheses.to_dict(),
            'degree': self.degree,
            'width': self.width,
            'summary': self.summary(),
            'separators_confirmed': self.separators_confirmed,
            'classes': [[d.to_dict(with_b=False) for d in members] for members in self.classes],
            'pairs': [p.to_dict() for p in self.pairs],
            'counterexamples': [p.to_dict() for p in self.counterexamples],
            'errors': list(self.errors),
            'ok': self.ok,
        }

    def to_frame(self) -> pd.DataFrame:
        """One row per pair."""
        rows = []
        for p in self.pairs:
            rows.append({
                'u': p.first.u.to_json(),
                'a': p.first.a.to_json(),
                'u_prime': p.second.u.to_json(),
                'a_prime': p.second.a.to_json(),
                'fingerprints_equal': p.fingerprints_equal,
                'isomorphic': p.isomorphic,
                's': p.witness.s.to_json() if p.witness is not None else None,
                't': p.witness.t.to_json() if p.witness is not None else None,
                'method': p.method,
            })
        return pd.DataFrame(rows, columns=[
            'u', 'a', 'u_prime', 'a_prime', 'fingerprints_equal', 'isomorphic', 's', 't', 'method',
        ])


# ----------------------------------------------------------------------
# Separators
# ----------------------------------------------------------------------

def _section_values(params: TaftParams, d: CleftData, polys: Sequence[ZPolynomial]) -> List[np.ndarray]:
    gamma = section_comodule_map(cleft_extension(params, d))
    return [evaluate(P, gamma).coeffs for P in polys]


def separator_tables(params: TaftParams, data: Sequence[CleftData],
                     alpha: int, beta: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Which separators are nonzero under which section maps.

    P_a and Q_u are affine in a and u^k, so two evaluations per polynomial
    family and datum suffice.

    Returns:
        (p_nonzero, q_nonzero) of shape (len(data), |R|); entry [j, c] says
        whether Gamma_j(P_c), respectively Gamma_j(Q_c), is nonzero. Columns
        of non-units are False in q_nonzero.
    """
    ring, N, q = params.ring, params.N, params.q
    k = alpha // N
    E, G = (ZPolynomial.symbol(ring, ZSymbol.alias(name)) for name in 'EG')
    polys = [build_Pa(params, 0), E ** N * G ** N, G ** beta, G ** (alpha + beta)]

    everything = np.arange(ring.order)
    c = ((1 - q) ** N).value
    a_coords = ring.coords(ring.mul_table[c, everything])
    units = ring.unit_indices
    uk_coords = ring.coords(ring.pow_indices(units, k))

    p_nonzero = np.zeros((len(data), ring.order), dtype=bool)
    q_nonzero = np.zeros((len(data), ring.order), dtype=bool)
    for j, d in enumerate(data):
        B = cleft_extension(params, d)
        p0, eng, g_beta, g_top = _section_values(params, d, polys)
        values = (p0[None] + B.scale(a_coords, eng)) % ring.mod
        p_nonzero[j] = values.reshape(ring.order, -1).any(axis=1)
        values = (B.scale(uk_coords, g_beta) - g_top[None]) % ring.mod
        q_nonzero[j, units] = values.reshape(len(units), -1).any(axis=1)
    return p_nonzero, q_nonzero


def confirm_separators(params: TaftParams, data: Sequence[CleftData],
                       alpha: int, beta: int) -> List[str]:
    """Check exhaustively that P_a and Q_u are identities of B_(u,a); return failures."""
    failures = []
    for d in data:
        B = cleft_extension(params, d)
        for name, P in (('P_a', build_Pa(params, d.a)), ('Q_u', build_Qu(params, d.u, alpha, beta))):
            if not is_identity(P, B):
                failures.append(f"{name} is not an identity of B_{d}")
    return failures


# ----------------------------------------------------------------------
# Pair decisions
# ----------------------------------------------------------------------

@dataclass
class _Context:
    params: TaftParams
    data: List[CleftData]
    degree: int
    width: int
    settings: Settings
    use_p: bool
    use_q: bool
    p_nonzero: np.ndarray
    q_nonzero: np.ndarray
    fingerprints: Dict[int, Fingerprint] = field(default_factory=dict)

    @property
    def full_fingerprints(self) -> bool:
        return fingerprint_fits(self.params.ring, self.degree, self.width, self.settings)

    def fingerprint_of(self, i: int) -> Fingerprint:
        if i not in self.fingerprints:
            B = cleft_extension(self.params, self.data[i])
            self.fingerprints[i] = fingerprint(B, self.degree, self.width, self.settings)
        return self.fingerprints[i]


_CONTEXT: Optional[_Context] = None


def _init_worker(context: _Context) -> None:
    global _CONTEXT
    _CONTEXT = context


def _separator(ctx: _Context, i: int, j: int) -> Optional[str]:
    d_i, d_j = ctx.data[i], ctx.data[j]
    if ctx.use_p and (ctx.p_nonzero[j, d_i.a.value] or ctx.p_nonzero[i, d_j.a.value]):
        return SEPARATOR_P
    if ctx.use_q and (ctx.q_nonzero[j, d_i.u.value] or ctx.q_nonzero[i, d_j.u.value]):
        return SEPARATOR_Q
    return None


def decide_pair(ctx: _Context, i: int, j: int) -> PairRecord:
    """Fingerprint equality and isomorphism for data i < j."""
    params = ctx.params
    d_i, d_j = ctx.data[i], ctx.data[j]
    record = PairRecord(d_i, d_j, None, False)

    witness = are_isomorphic(params, d_i, d_j)
    if witness is not None:
        try:
            witness = build_iso(params, d_i, d_j, witness.s, witness.t)
        except (InvalidWitnessError, VerificationError) as e:
            record.note = str(e)
            return record
        record.isomorphic = True

    method = _separator(ctx, i, j)
    if method is not None:
        record.fingerprints_equal = False
        record.method = method
    elif ctx.full_fingerprints:
        record.fingerprints_equal = ctx.fingerprint_of(i) == ctx.fingerprint_of(j)
        record.method = METHOD_FINGERPRINT
    elif witness is not None:
        if transport_certificate(params, witness):
            record.fingerprints_equal = True
            record.method = METHOD_TRANSPORT
        else:
            record.note = f"Transport certificate failed for {witness}"

    if witness is not None:
        record.witness = replace(witness, map=None)
    return record


def _demote_separator_pairs(pairs: Sequence[PairRecord]) -> int:
    """Mark pairs settled by an unconfirmed separator as undecided."""
    demoted = 0
    for p in pairs:
        if p.method in (SEPARATOR_P, SEPARATOR_Q):
            p.fingerprints_equal = None
            p.method = METHOD_UNDECIDED
            demoted += 1
    return demoted


def _decide_chunk(pairs: Sequence[Tuple[int, int]]) -> List[PairRecord]:
    return [decide_pair(_CONTEXT, i, j) for i, j in pairs]


def _partition(data: Sequence[CleftData], pairs: Sequence[PairRecord]) -> List[List[CleftData]]:
    """Classes spanned by the isomorphic pairs, in the order iso_classes uses."""
    parent = {d.key: d.key for d in data}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in pairs:
        if p.isomorphic:
            parent[find(p.first.key)] = find(p.second.key)
    groups: Dict[Tuple, List[CleftData]] = {}
    for d in data:
        groups.setdefault(find(d.key), []).append(d)
    ordered = [sorted(members, key=lambda c: c.key) for members in groups.values()]
    return sorted(ordered, key=lambda members: members[0].key)


def verify_theorem(
    params: TaftParams,
    degree: Optional[int] = None,
    width: int = 1,
    settings: Optional[Settings] = None,
    check_identities: Optional[bool] = None,
) -> VerifierReport:
    """
    Run the exhaustive verifier over all pairs of data (u, a, 0).

    Args:
        params: Taft parameters; the standing hypotheses must hold
        degree: Truncation degree, max(2N, alpha + beta) by default
        width: Symbol copies in full fingerprints
        settings: Budgets and worker count, the ring's settings by default
        check_identities: Confirm that every separator is an identity of its
            own algebra (default). When skipped, pairs settled by a separator
            are reported as undecided

    Returns:
        VerifierReport

    Raises:
        HypothesisError: If N is not a unit in R
    """
    settings = settings or params.ring.settings
    ring, N = params.ring, params.N
    ring.require_enumerable('verify_theorem')
    hypotheses = check_hypotheses(ring, N, params.q)
    if not hypotheses.ok:
        raise HypothesisError(
            f"Hypotheses fail for {ring.spec}, N={N}, q={params.q}; the theorem is not claimed there"
        )
    structure = ring_structure(ring)
    alpha, beta = structure.alpha, structure.beta
    D = degree if degree is not None else max(2 * N, alpha + beta)
    if D < 1:
        raise ValueError(f"Degree bound must be positive, got {D}")

    started = time.perf_counter()
    data = b_zero_data(params)
    classes = iso_classes(params)
    report = VerifierReport(ring.spec, N, params.q, hypotheses, D, width, data, classes)
    logger.info("Verifying %s, N=%d, q=%s: %d data, %d classes, D=%d",
                ring.spec, N, params.q, len(data), len(classes), D)

    use_p, use_q = 2 * N <= D, alpha + beta <= D
    if not (use_p and use_q):
        warnings.warn(f"Degree {D} excludes a separator (P_a needs {2 * N}, Q_u needs {alpha + beta})")
    p_nonzero, q_nonzero = separator_tables(params, data, alpha, beta)
    logger.info("Separator tables ready (%.2fs)", time.perf_counter() - started)

    if check_identities is not False:
        failures = confirm_separators(params, data, alpha, beta)
        report.separators_confirmed = not failures
        report.errors.extend(failures)
        logger.info("Separator confirmation: %d failures (%.2fs)",
                    len(failures), time.perf_counter() - started)

    ctx = _Context(params, data, D, width, settings, use_p, use_q, p_nonzero, q_nonzero)
    index_pairs = [(i, j) for i in range(len(data)) for j in range(i + 1, len(data))]
    chunks = [index_pairs[s:s + settings.chunk_size]
              for s in range(0, len(index_pairs), settings.chunk_size)]
    if settings.workers > 1 and len(chunks) > 1:
        logger.info("Deciding %d pairs on %d workers", len(index_pairs), settings.workers)
        with ProcessPoolExecutor(max_workers=settings.workers, initializer=_init_worker,
                                 initargs=(ctx,)) as pool:
            for records in pool.map(_decide_chunk, chunks):
                report.pairs.extend(records)
    else:
        report.pairs.extend(decide_pair(ctx, i, j) for i, j in index_pairs)

    if report.separators_confirmed is None:
        demoted = _demote_separator_pairs(report.pairs)
        if demoted:
            warnings.warn(f"Separators were not confirmed; {demoted} pairs they decided are undecided")

    report.errors.extend(p.note for p in report.pairs if p.note)
    if [[d.key for d in c] for c in _partition(data, report.pairs)] != [[d.key for d in c] for c in classes]:
        report.errors.append("Isomorphic pairs do not span the classes of iso_classes")

    logger.info("Verified %d pairs in %.2fs: %s",
                len(report.pairs), time.perf_counter() - started, report.summary())
    return report
