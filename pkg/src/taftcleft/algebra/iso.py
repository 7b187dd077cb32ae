"""
Isomorphisms of cleft extensions.

A comodule algebra map F: B_d' -> B_d is fixed by a unit s and an element
t through F(v_g') = s v_g and F(v_x') = v_x + t v_g. It is well defined
exactly when

    u' = s^N u
    a' = a + t (t + [1]_q b)(t + [2]_q b)...(t + [N-1]_q b) u
    b' = (b + t - q t) s^-1

with [j]_q = 1 + q + ... + q^(j-1). Every datum is isomorphic to one with
b = 0, and two data with b = 0 are isomorphic iff a' = a and u'/u is an
N-th power.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from taftcleft.algebra.cleft import CleftData, CleftExtension, cleft_extension, scalar_part
from taftcleft.algebra.identities import family_from_triples
from taftcleft.algebra.linalg import RLinearMap, ring_apply, ring_identity, ring_kron, ring_matmul
from taftcleft.algebra.ring import ElementLike, RingElement, coset_representative, has_nth_root
from taftcleft.algebra.structure import LinearMap
from taftcleft.algebra.taft import TaftParams, monomial_images
from taftcleft.errors import InvalidWitnessError, NotAUnitError, VerificationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IsoWitness:
    """
    A pair (s, t) defining F: B_source -> B_target.

    Attributes:
        s: Unit scaling v_g
        t: Shift of v_x by t v_g
        source: Datum d' of the domain, when known
        target: Datum d of the codomain, when known
        map: The verified R-linear map, set by build_iso
    """

    s: RingElement
    t: RingElement
    source: Optional[CleftData] = None
    target: Optional[CleftData] = None
    map: Optional[LinearMap] = field(default=None, compare=False, repr=False)

    def compose(self, other: 'IsoWitness') -> 'IsoWitness':
        """self o other, for other: B_d'' -> B_d' and self: B_d' -> B_d."""
        return IsoWitness(self.s * other.s, self.t + self.s * other.t,
                          source=other.source, target=self.target)

    def inverse(self) -> 'IsoWitness':
        s_inv = self.s.inverse()
        return IsoWitness(s_inv, -(self.t * s_inv), source=self.target, target=self.source)

    def to_dict(self) -> Dict:
        return {'s': self.s.to_json(), 't': self.t.to_json()}

    def __str__(self) -> str:
        return f"(s={self.s}, t={self.t})"


def _q_integer(q: RingElement, j: int) -> RingElement:
    """[j]_q = 1 + q + ... + q^(j-1)."""
    total = q.ring.zero()
    for i in range(j):
        total = total + q ** i
    return total


def transported_data(params: TaftParams, d: CleftData, s: ElementLike, t: ElementLike) -> CleftData:
    """The datum d' the compatibility equations assign to (d, s, t)."""
    ring, N, q = params.ring, params.N, params.q
    s, t = ring.element(s), ring.element(t)
    if not s.is_unit():
        raise NotAUnitError(f"s={s} is not a unit")
    product = t
    for j in range(1, N):
        product = product * (t + _q_integer(q, j) * d.b)
    return CleftData(
        u=s ** N * d.u,
        a=d.a + product * d.u,
        b=(d.b + t - q * t) * s.inverse(),
    )


def compatibility_equations(params: TaftParams, d: CleftData, d_prime: CleftData,
                            s: ElementLike, t: ElementLike) -> bool:
    """Whether (s, t) defines a comodule algebra map B_d' -> B_d."""
    expected = transported_data(params, d, s, t)
    return (expected.u, expected.a, expected.b) == (d_prime.u, d_prime.a, d_prime.b)


def normalize_b(params: TaftParams, d: CleftData) -> Tuple[CleftData, IsoWitness]:
    """
    An isomorphic datum with b = 0.

    Takes s = 1 and t = -b / (1 - q).

    Returns:
        (d0, witness) with witness: B_d0 -> B_d

    Raises:
        NotAUnitError: If 1 - q is not a unit
    """
    ring, q = params.ring, params.q
    t = -(d.b * (1 - q).inverse())
    normalized = transported_data(params, d, 1, t)
    return normalized, IsoWitness(ring.one(), t, source=normalized, target=d)


def induced_data(params: TaftParams, d: CleftData, s: ElementLike, t: ElementLike) -> Optional[CleftData]:
    """
    Read d' off the images of v_g' and v_x' in B_d.

    Computes G' = s v_g and X' = v_x + t v_g in B_d and returns the datum
    whose relations they satisfy, or None when G'^N or X'^N is not a scalar
    or X'G' - q G'X' is not a multiple of G'^2.
    """
    ring, N, q = params.ring, params.N, params.q
    s, t = ring.element(s), ring.element(t)
    if not s.is_unit():
        raise NotAUnitError(f"s={s} is not a unit")
    B = cleft_extension(params, d)
    G = B.v_g() * s
    X = B.v_x() + B.v_g() * t
    u_prime = scalar_part(G ** N)
    a_prime = scalar_part(X ** N)
    if u_prime is None or a_prime is None:
        return None
    square = G * G
    commutator = X * G - (G * X) * q
    # G'^2 is s^2 times a basis element (or times u when N = 2)
    pivot = int(np.nonzero(square.coeffs.any(axis=1))[0][0])
    scale = ring.element(square.coeffs[pivot])
    b_prime = ring.element(commutator.coeffs[pivot]) * scale.inverse()
    if commutator != square * b_prime:
        return None
    return CleftData(u_prime, a_prime, b_prime)


def isomorphism_matrix(params: TaftParams, d: CleftData, s: RingElement, t: RingElement) -> np.ndarray:
    """F on the basis: v_g'^m v_x'^n -> (s v_g)^m (v_x + t v_g)^n."""
    B = cleft_extension(params, d)
    image_g = (B.v_g() * s).coeffs
    image_x = (B.v_x() + B.v_g() * t).coeffs
    return monomial_images(B, params.N, image_g, image_x)


def build_iso(params: TaftParams, d: CleftData, d_prime: CleftData,
              s: ElementLike, t: ElementLike) -> IsoWitness:
    """
    Build and verify F: B_d' -> B_d for the pair (s, t).

    Raises:
        InvalidWitnessError: If the compatibility equations fail
        VerificationError: If the equations hold but F is not a bijective
            comodule algebra map
    """
    ring = params.ring
    s, t = ring.element(s), ring.element(t)
    if not s.is_unit() or not compatibility_equations(params, d, d_prime, s, t):
        raise InvalidWitnessError(f"(s={s}, t={t}) is not a witness for B_{d_prime} -> B_{d}")
    B = cleft_extension(params, d)
    B_prime = cleft_extension(params, d_prime)
    matrix = isomorphism_matrix(params, d, s, t)
    F = LinearMap(B_prime, B, matrix)
    images = F.images()
    multiplicative = np.array_equal(
        ring_apply(ring, matrix, B_prime.basis_products),
        B.multiply(images[:, None], images[None, :]),
    )
    id_h = ring_identity(ring, B.taft.rank)
    comodule = np.array_equal(
        ring_matmul(ring, B.coaction_matrix, matrix),
        ring_matmul(ring, ring_kron(ring, matrix, id_h), B_prime.coaction_matrix),
    )
    bijective = RLinearMap(ring, matrix).is_invertible()
    if not (multiplicative and comodule and bijective):
        raise VerificationError(
            f"Witness (s={s}, t={t}) for B_{d_prime} -> B_{d} fails verification: "
            f"multiplicative={multiplicative}, comodule={comodule}, bijective={bijective}"
        )
    return IsoWitness(s, t, source=d_prime, target=d, map=F)


def search_witnesses(params: TaftParams, d: CleftData, d_prime: CleftData) -> List[IsoWitness]:
    """Every (s, t) in units x R satisfying the equations (exhaustive)."""
    ring = params.ring
    return [
        IsoWitness(s, t, source=d_prime, target=d)
        for s in ring.units()
        for t in ring.elements()
        if compatibility_equations(params, d, d_prime, s, t)
    ]


def are_isomorphic(params: TaftParams, d: CleftData, d_prime: CleftData) -> Optional[IsoWitness]:
    """
    A witness B_d' -> B_d, or None when the extensions are not isomorphic.

    Both data are first normalized to b = 0; then they are isomorphic iff
    the a's agree and u'/u has an N-th root.
    """
    n1, w1 = normalize_b(params, d)
    n2, w2 = normalize_b(params, d_prime)
    if n1.a != n2.a:
        return None
    ratio = n2.u * n1.u.inverse()
    root = has_nth_root(params.ring, ratio, params.N)
    if root is None:
        return None
    middle = IsoWitness(root, params.ring.zero(), source=n2, target=n1)
    return w1.compose(middle).compose(w2.inverse())


def iso_classes(params: TaftParams) -> List[List[CleftData]]:
    """
    Partition of the data (u, a, 0) into isomorphism classes.

    Classes are keyed by a and the coset of u modulo N-th powers, listed in
    order of their least member.
    """
    ring, N = params.ring, params.N
    zero = ring.zero()
    reps = {u.value: coset_representative(ring, u, N).value for u in ring.units()}
    classes: Dict[Tuple[int, int], List[CleftData]] = {}
    for u in ring.units():
        for a in ring.elements():
            classes.setdefault((a.value, reps[u.value]), []).append(CleftData(u, a, zero))
    ordered = [sorted(members, key=lambda c: c.key) for members in classes.values()]
    return sorted(ordered, key=lambda members: members[0].key)


def b_zero_data(params: TaftParams) -> List[CleftData]:
    """All data (u, a, 0), ordered by (u, a)."""
    ring = params.ring
    zero = ring.zero()
    return [CleftData(u, a, zero) for u in ring.units() for a in ring.elements()]


def transport_triples(params: TaftParams, witness: IsoWitness, triples: np.ndarray) -> np.ndarray:
    """
    Triples of F o f for maps f into the source of F.

    (lambda, mu, xi) -> (lambda, s mu, lambda t + s xi), on ring indices of
    shape (..., 3).
    """
    ring = params.ring
    mul, add = ring.mul_table, ring.add_table
    triples = np.asarray(triples, dtype=np.int64)
    lam, mu, xi = triples[..., 0], triples[..., 1], triples[..., 2]
    s, t = witness.s.value, witness.t.value
    return np.stack([lam, mul[s, mu], add[mul[lam, t], mul[s, xi]]], axis=-1)


def transport_certificate(params: TaftParams, witness: IsoWitness) -> bool:
    """
    Check that F o (-) permutes the comodule maps by transport_triples.

    F is verified with build_iso; composition with F agrees with the
    transported triples on the unit triples, which span R^3, and the
    transport is invertible because s is a unit.
    """
    if witness.source is None or witness.target is None:
        raise ValueError("Transport needs a witness with known source and target")
    verified = witness if witness.map is not None else build_iso(
        params, witness.target, witness.source, witness.s, witness.t)
    ring = params.ring
    B_source = cleft_extension(params, witness.source)
    B_target = cleft_extension(params, witness.target)
    basis = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) * ring.one_index
    source_family = family_from_triples(B_source, (1,), basis)
    target_family = family_from_triples(B_target, (1,), transport_triples(params, verified, basis))
    for sym, images in source_family.images.items():
        if not np.array_equal(verified.map.apply(images), target_family.images[sym]):
            return False
    return witness.s.is_unit()
