"""
Cleft extensions B_(u,a,b) of R by the Taft algebra.

B_d is generated by v_g and v_x subject to v_g^N = u, v_x^N = a and
v_x v_g = q v_g v_x + b v_g^2. Products of basis monomials v_g^m v_x^n are
found once by rewriting words into normal order; afterwards B_d is an
ordinary structure-constant algebra and all further arithmetic is
vectorised.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from taftcleft.algebra.linalg import (
    RLinearMap,
    ring_apply,
    ring_identity,
    ring_kron,
    ring_matmul,
    span_canonical,
)
from taftcleft.algebra.ring import ElementLike, FiniteRing, RingElement
from taftcleft.algebra.structure import (
    AlgebraElement,
    LinearMap,
    StructureAlgebra,
    TensorAlgebra,
    matrix_from_images,
    sparse_constants,
)
from taftcleft.algebra.taft import (
    TaftAlgebra,
    TaftElement,
    TaftParams,
    monomial_images,
    monomial_text,
    taft_algebra,
)
from taftcleft.errors import NotAUnitError, VerificationError

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int]


@dataclass(frozen=True)
class CleftData:
    """
    A cleft data triple (u, a, b).

    Attributes:
        u: Unit with v_g^N = u
        a: Value of v_x^N
        b: Coefficient of v_g^2 in v_x v_g
    """

    u: RingElement
    a: RingElement
    b: RingElement

    def __post_init__(self):
        if not self.u.is_unit():
            raise NotAUnitError(f"Cleft data needs a unit u, got {self.u}")

    @classmethod
    def of(cls, ring: FiniteRing, u: ElementLike, a: ElementLike, b: ElementLike = 0) -> 'CleftData':
        return cls(ring.element(u), ring.element(a), ring.element(b))

    @property
    def ring(self) -> FiniteRing:
        return self.u.ring

    @property
    def key(self) -> Tuple[int, int, int]:
        """Sort key by element index."""
        return self.u.value, self.a.value, self.b.value

    def to_dict(self, with_b: bool = True) -> Dict:
        out = {'u': self.u.to_json(), 'a': self.a.to_json()}
        if with_b:
            out['b'] = self.b.to_json()
        return out

    def __str__(self) -> str:
        return f"({self.u},{self.a},{self.b})"


class CleftElement(AlgebraElement):
    """An element sum c[m][n] v_g^m v_x^n of B_d."""

    __slots__ = ()

    def table(self) -> np.ndarray:
        N = self.algebra.params.N
        return self.ring.index(self.coeffs).reshape(N, N)

    def to_json(self) -> List[List]:
        return [[self.ring.to_json_value(int(v)) for v in row] for row in self.table()]


class CleftTensor(AlgebraElement):
    """An element of B_d (x) H."""

    __slots__ = ()

    def to_json(self) -> List[List]:
        r = self.algebra.first.rank
        idx = self.ring.index(self.coeffs).reshape(r, r)
        return [[self.ring.to_json_value(int(v)) for v in row] for row in idx]


class _Rewriter:
    """Normal forms of words over {g, x} in B_d."""

    def __init__(self, params: TaftParams, data: CleftData):
        self.N = params.N
        self.q = params.q
        self.data = data
        self._memo: Dict[str, Dict[Monomial, RingElement]] = {}

    def normal_form(self, word: str) -> Dict[Monomial, RingElement]:
        if word in self._memo:
            return self._memo[word]
        result: Dict[Monomial, RingElement]
        i = word.find('xg')
        if i < 0:
            m = word.count('g')
            n = len(word) - m
            coeff = self.data.u ** (m // self.N) * self.data.a ** (n // self.N)
            result = {} if coeff.is_zero() else {(m % self.N, n % self.N): coeff}
        else:
            head, tail = word[:i], word[i + 2:]
            result = {}
            for middle, c in (('gx', self.q), ('gg', self.data.b)):
                if c.is_zero():
                    continue
                for mono, v in self.normal_form(head + middle + tail).items():
                    result[mono] = result.get(mono, c.ring.zero()) + c * v
            result = {mono: v for mono, v in result.items() if not v.is_zero()}
        self._memo[word] = result
        return result


class CleftExtension(StructureAlgebra):
    """
    The comodule algebra B_d with its coaction, section and Galois map.

    Attributes:
        params: Taft parameters (R, N, q)
        data: The cleft data d
        taft: The Taft algebra H acting on the right
    """

    element_class = CleftElement

    def __init__(self, params: TaftParams, data: CleftData):
        if data.ring != params.ring:
            raise ValueError("Cleft data and Taft parameters use different rings")
        self.params = params
        self.data = data
        self.taft: TaftAlgebra = taft_algebra(params)
        N = params.N
        rewriter = _Rewriter(params, data)
        products: Dict[Tuple[int, int], Dict[int, RingElement]] = {}
        for m1 in range(N):
            for n1 in range(N):
                for m2 in range(N):
                    for n2 in range(N):
                        word = 'g' * m1 + 'x' * n1 + 'g' * m2 + 'x' * n2
                        products[(m1 * N + n1, m2 * N + n2)] = {
                            m * N + n: c for (m, n), c in rewriter.normal_form(word).items()
                        }
        labels = [(m, n) for m in range(N) for n in range(N)]
        super().__init__(params.ring, labels, *sparse_constants(params.ring, products))
        logger.debug("Built B_%s over %s, N=%d (%d constants)", data, params.ring.spec, N, self.nnz)

    def label_text(self, label) -> str:
        return monomial_text(*label, g='v_g', x='v_x')

    def monomial(self, m: int, n: int) -> CleftElement:
        return self.basis_element((m, n))

    def v_g(self) -> CleftElement:
        return self.monomial(1, 0)

    def v_x(self) -> CleftElement:
        return self.monomial(0, 1)

    def _own(self, e: AlgebraElement) -> None:
        if e.algebra is not self:
            raise ValueError("Element belongs to a different cleft extension (parameter mismatch)")

    # ------------------------------------------------------------------
    # Coaction and section
    # ------------------------------------------------------------------

    @cached_property
    def tensor_h(self) -> TensorAlgebra:
        """B_d (x) H."""
        return TensorAlgebra(self, self.taft, element_class=CleftTensor)

    @cached_property
    def coaction_matrix(self) -> np.ndarray:
        """rho as an R-matrix, shape (rB * rH, rB, d)."""
        BH = self.tensor_h
        H = self.taft
        rho_g = BH.pure(self.v_g().coeffs, H.g().coeffs)
        rho_x = BH.pure(self.unit, H.x().coeffs) + BH.pure(self.v_x().coeffs, H.g().coeffs)
        return monomial_images(BH, self.params.N, rho_g % self.ring.mod, rho_x % self.ring.mod)

    def coaction(self, e: CleftElement) -> CleftTensor:
        self._own(e)
        return self.tensor_h.element(ring_apply(self.ring, self.coaction_matrix, e.coeffs))

    @cached_property
    def section_map(self) -> LinearMap:
        """phi(g^m x^n) = v_g^m v_x^n."""
        return LinearMap(self.taft, self, ring_identity(self.ring, self.rank))

    def section(self, h: TaftElement) -> CleftElement:
        return self.section_map(h)

    def power_generators(self) -> Tuple[RingElement, RingElement]:
        """v_g^N and v_x^N read back as scalars."""
        N = self.params.N
        values = []
        for gen in (self.v_g(), self.v_x()):
            value = scalar_part(gen ** N)
            if value is None:
                raise VerificationError(f"{gen}^{N} is not a scalar in B_{self.data}")
            values.append(value)
        return values[0], values[1]

    # ------------------------------------------------------------------
    # Convolution
    # ------------------------------------------------------------------

    def unit_counit(self) -> LinearMap:
        """eta o eps as a map H -> B_d."""
        eps = self.taft.counit_vector[0]
        return LinearMap(self.taft, self, matrix_from_images(self.scale(eps, self.unit)))

    @cached_property
    def convolution_inverse(self) -> LinearMap:
        """
        The convolution inverse psi of the section.

        Solves phi * psi = eta eps = psi * phi as one linear system over R
        for the coordinates of psi(e_t).

        Raises:
            VerificationError: If the system has no solution or the solution
                fails the re-convolution check
        """
        ring = self.ring
        r, d = self.rank, ring.dim
        H = self.taft
        D3 = H.delta_matrix.reshape(r, r, r, d)
        P = self.basis_products
        left = np.einsum('stpx,sjky,xyz->pktjz', D3, P, ring.structure) % ring.mod
        right = np.einsum('stpx,jtky,xyz->pksjz', D3, P, ring.structure) % ring.mod
        system = np.concatenate([left.reshape(r * r, r * r, d), right.reshape(r * r, r * r, d)])
        target = self.scale(H.counit_vector[0], self.unit).reshape(r * r, d)
        solution = RLinearMap(ring, system).solve(np.concatenate([target, target]))
        if solution is None:
            raise VerificationError(f"Section of B_{self.data} has no convolution inverse")
        psi = LinearMap(H, self, matrix_from_images(solution.reshape(r, r, d)))
        eta_eps = self.unit_counit()
        if convolve(self.section_map, psi) != eta_eps or convolve(psi, self.section_map) != eta_eps:
            raise VerificationError(f"Convolution inverse of B_{self.data} fails re-convolution")
        return psi

    # ------------------------------------------------------------------
    # Coinvariants and Galois map
    # ------------------------------------------------------------------

    def _coinvariant_map(self) -> RLinearMap:
        """e -> rho(e) - e (x) 1."""
        inclusion = self.tensor_h.pure(self.basis_coords(), self.taft.unit)
        return RLinearMap(self.ring, self.coaction_matrix - matrix_from_images(inclusion))

    def coinvariants(self) -> List[CleftElement]:
        """Generators of {e : rho(e) = e (x) 1}."""
        return [self.element(v) for v in self._coinvariant_map().kernel_vectors()]

    def coinvariants_are_scalars(self) -> bool:
        """Whether the coinvariants are exactly R * 1."""
        return np.array_equal(
            self._coinvariant_map().kernel_canonical(),
            span_canonical(self.ring, self.unit[None]),
        )

    def galois_matrix(self) -> np.ndarray:
        """beta(e_p (x) e_q) = (e_p (x) 1) rho(e_q) as an R-matrix."""
        BH = self.tensor_h
        r = self.rank
        lifted = BH.pure(self.basis_coords(), self.taft.unit)
        rho = np.transpose(self.coaction_matrix, (1, 0, 2))
        images = BH.multiply(lifted[:, None], rho[None, :])
        return matrix_from_images(images.reshape(r * r, BH.rank, self.ring.dim))

    def galois_check(self) -> bool:
        return RLinearMap(self.ring, self.galois_matrix()).is_invertible()

    # ------------------------------------------------------------------
    # Axiom suite
    # ------------------------------------------------------------------

    def check_comodule(self) -> bool:
        """(rho (x) id) rho = (id (x) Delta) rho and (id (x) eps) rho = id."""
        ring = self.ring
        H = self.taft
        rho = self.coaction_matrix
        id_b = ring_identity(ring, self.rank)
        id_h = ring_identity(ring, H.rank)
        left = ring_matmul(ring, ring_kron(ring, rho, id_h), rho)
        right = ring_matmul(ring, ring_kron(ring, id_b, H.delta_matrix), rho)
        counit = ring_matmul(ring, ring_kron(ring, id_b, H.counit_vector), rho)
        return np.array_equal(left, right) and np.array_equal(counit, id_b)

    def check_coaction_multiplicative(self) -> bool:
        """rho(e_p e_q) = rho(e_p) rho(e_q) on all basis pairs, and rho(1) = 1 (x) 1."""
        BH = self.tensor_h
        images = np.transpose(self.coaction_matrix, (1, 0, 2))
        lhs = ring_apply(self.ring, self.coaction_matrix, self.basis_products)
        rhs = BH.multiply(images[:, None], images[None, :])
        unital = np.array_equal(ring_apply(self.ring, self.coaction_matrix, self.unit), BH.unit)
        return np.array_equal(lhs, rhs) and unital

    def is_comodule_map(self, f: LinearMap) -> bool:
        """rho o f = (f (x) id) o Delta for a linear map f: H -> B_d."""
        ring = self.ring
        H = self.taft
        left = ring_matmul(ring, self.coaction_matrix, f.matrix)
        right = ring_matmul(ring, ring_kron(ring, f.matrix, ring_identity(ring, H.rank)), H.delta_matrix)
        return np.array_equal(left, right)

    def check_section_comodule(self) -> bool:
        return self.is_comodule_map(self.section_map)

    def check_associativity(self, samples=None, exhaustive=None, seed=None) -> bool:
        if exhaustive is None:
            exhaustive = self.params.N <= 3
        return super().check_associativity(samples=samples, exhaustive=exhaustive, seed=seed)

    def check_axioms(self) -> Dict[str, bool]:
        return {
            'associativity': self.check_associativity(),
            'comodule': self.check_comodule(),
            'multiplicative': self.check_coaction_multiplicative(),
            'section': self.check_section_comodule(),
            'coinvariants': self.coinvariants_are_scalars(),
            'galois': self.galois_check(),
        }


def convolve(phi: LinearMap, psi: LinearMap) -> LinearMap:
    """(phi * psi)(h) = sum phi(h_1) psi(h_2) for linear maps H -> B."""
    if phi.source is not psi.source or phi.target is not psi.target:
        raise ValueError("Convolution needs maps between the same algebras")
    H, B = phi.source, phi.target
    ring = B.ring
    r, d = H.rank, ring.dim
    D3 = H.delta_matrix.reshape(r, r, r, d)
    products = B.multiply(phi.images()[:, None], psi.images()[None, :])
    matrix = np.einsum('stpx,stky,xyz->kpz', D3, products, ring.structure) % ring.mod
    return LinearMap(H, B, matrix)


@lru_cache(maxsize=256)
def cleft_extension(params: TaftParams, data: CleftData) -> CleftExtension:
    """The (cached) cleft extension B_d."""
    return CleftExtension(params, data)


# ----------------------------------------------------------------------
# Functional interface
# ----------------------------------------------------------------------

def cleft_mul(a: CleftElement, b: CleftElement) -> CleftElement:
    if a.algebra is not b.algebra:
        raise ValueError("Cleft elements from different extensions")
    return a * b


def coaction(e: CleftElement) -> CleftTensor:
    return e.algebra.coaction(e)


def section(B: CleftExtension, h: TaftElement) -> CleftElement:
    return B.section(h)


def convolution_inverse(B: CleftExtension) -> LinearMap:
    return B.convolution_inverse


def coinvariants(B: CleftExtension) -> List[CleftElement]:
    return B.coinvariants()


def galois_check(B: CleftExtension) -> bool:
    return B.galois_check()


def scalar_part(e: CleftElement) -> Optional[RingElement]:
    """The scalar c when e = c * 1, else None."""
    rest = e.coeffs.copy()
    rest[0] = 0
    return None if rest.any() else e.ring.element(e.coeffs[0])
