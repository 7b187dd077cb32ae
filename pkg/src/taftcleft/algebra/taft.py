"""
The Taft Hopf algebra H_N^q over a finite commutative ring.

H is free with basis g^m x^n (0 <= m, n < N), stored at index m * N + n.
The coproduct, counit and antipode are computed once per parameter set as
R-matrices and reused for every element.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, List, Tuple

import numpy as np
import sympy

from taftcleft.algebra.linalg import ring_apply, ring_identity, ring_kron, ring_matmul
from taftcleft.algebra.ring import (
    ElementLike,
    FiniteRing,
    RingElement,
    cyclotomic_polynomial,
    evaluate_integer_polynomial,
)
from taftcleft.algebra.structure import (
    AlgebraElement,
    StructureAlgebra,
    TensorAlgebra,
    sparse_constants,
)
from taftcleft.errors import HypothesisError

logger = logging.getLogger(__name__)

_Q = sympy.Symbol('q')


@dataclass(frozen=True)
class TaftParams:
    """
    Parameters (R, N, q) of a Taft algebra.

    Attributes:
        ring: Coefficient ring
        N: Integer >= 2
        q: Root of the N-th cyclotomic polynomial in R
    """

    ring: FiniteRing
    N: int
    q: RingElement

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")
        q = self.ring.element(self.q)
        object.__setattr__(self, 'q', q)
        value = evaluate_integer_polynomial(self.ring, cyclotomic_polynomial(self.N), q.coords)
        if value.any():
            raise HypothesisError(f"Phi_{self.N}({q}) != 0 in {self.ring.spec}")

    @classmethod
    def of(cls, ring: FiniteRing, N: int, q: ElementLike) -> 'TaftParams':
        return cls(ring, N, ring.element(q))

    def to_dict(self) -> Dict:
        return {'ring': self.ring.spec, 'N': self.N, 'q': self.q.to_json()}


def monomial_text(m: int, n: int, g: str = 'g', x: str = 'x') -> str:
    """Render g^m x^n, dropping trivial factors."""
    parts = []
    if m:
        parts.append(g if m == 1 else f"{g}^{m}")
    if n:
        parts.append(x if n == 1 else f"{x}^{n}")
    return ' '.join(parts) or '1'


class TaftElement(AlgebraElement):
    """An element sum c[m][n] g^m x^n of H_N^q."""

    __slots__ = ()

    def table(self) -> np.ndarray:
        """Coefficient indices as an N x N array."""
        N = self.algebra.params.N
        return self.ring.index(self.coeffs).reshape(N, N)

    def to_json(self) -> List[List]:
        return [[self.ring.to_json_value(int(v)) for v in row] for row in self.table()]


class TaftTensor(AlgebraElement):
    """An element of H (x) H."""

    __slots__ = ()

    def to_json(self) -> List[List]:
        r = self.algebra.first.rank
        idx = self.ring.index(self.coeffs).reshape(r, r)
        return [[self.ring.to_json_value(int(v)) for v in row] for row in idx]


class TaftAlgebra(StructureAlgebra):
    """
    H_N^q with its Hopf structure.

    Attributes:
        params: The (R, N, q) it was built from
    """

    element_class = TaftElement

    def __init__(self, params: TaftParams):
        self.params = params
        ring, N, q = params.ring, params.N, params.q
        q_powers = [q ** e for e in range(N * N)]
        products: Dict[Tuple[int, int], Dict[int, RingElement]] = {}
        for a in range(N):
            for b in range(N):
                for c in range(N):
                    for d in range(N):
                        if b + d >= N:
                            continue
                        out = ((a + c) % N) * N + b + d
                        products[(a * N + b, c * N + d)] = {out: q_powers[b * c]}
        labels = [(m, n) for m in range(N) for n in range(N)]
        super().__init__(ring, labels, *sparse_constants(ring, products))
        logger.debug("Built Taft algebra N=%d q=%s over %s (%d constants)", N, q, ring.spec, self.nnz)

    def label_text(self, label) -> str:
        return monomial_text(*label)

    def monomial(self, m: int, n: int) -> TaftElement:
        N = self.params.N
        if not (0 <= m < N and 0 <= n < N):
            raise ValueError(f"Monomial g^{m} x^{n} is outside the basis for N={N}")
        return self.basis_element((m, n))

    def g(self) -> TaftElement:
        return self.monomial(1, 0)

    def x(self) -> TaftElement:
        return self.monomial(0, 1)

    # ------------------------------------------------------------------
    # Hopf structure
    # ------------------------------------------------------------------

    @cached_property
    def tensor_square(self) -> TensorAlgebra:
        return TensorAlgebra(self, self, element_class=TaftTensor)

    @cached_property
    def delta_matrix(self) -> np.ndarray:
        """Delta as an R-matrix, shape (r*r, r, d)."""
        HH = self.tensor_square
        g, x = self.g().coeffs, self.x().coeffs
        one = self.unit
        dg = HH.pure(g, g)
        dx = HH.pure(one, x) + HH.pure(x, g)
        return monomial_images(HH, self.params.N, dg, dx)

    @cached_property
    def counit_vector(self) -> np.ndarray:
        """epsilon as a 1 x r R-matrix."""
        N = self.params.N
        eps = np.zeros((1, self.rank, self.ring.dim), dtype=np.int64)
        eps[0, [m * N for m in range(N)]] = self.ring.unit_coords
        return eps

    @cached_property
    def antipode_matrix(self) -> np.ndarray:
        """S as an R-matrix, S(g^m x^n) = S(x)^n S(g)^m."""
        N, q = self.params.N, self.params.q
        ring = self.ring
        sg = self.monomial(N - 1, 0)
        sx = self.monomial(N - 1, 1) * (-(q ** (N - 1)))
        images = np.zeros((self.rank, self.rank, ring.dim), dtype=np.int64)
        for m in range(N):
            for n in range(N):
                images[m * N + n] = ((sx ** n) * (sg ** m)).coeffs
        return np.transpose(images, (1, 0, 2))

    def delta(self, h: TaftElement) -> TaftTensor:
        self._own(h)
        return self.tensor_square.element(ring_apply(self.ring, self.delta_matrix, h.coeffs))

    def counit(self, h: TaftElement) -> RingElement:
        self._own(h)
        return self.ring.element(ring_apply(self.ring, self.counit_vector, h.coeffs)[0])

    def antipode(self, h: TaftElement) -> TaftElement:
        self._own(h)
        return self.element(ring_apply(self.ring, self.antipode_matrix, h.coeffs))

    def _own(self, h: AlgebraElement) -> None:
        if h.algebra is not self:
            raise ValueError("Element belongs to a different Taft algebra (parameter mismatch)")

    # ------------------------------------------------------------------
    # Axiom suite
    # ------------------------------------------------------------------

    def check_coassociativity(self) -> bool:
        """(Delta (x) id) Delta = (id (x) Delta) Delta on the basis."""
        ring, r = self.ring, self.rank
        ident = ring_identity(ring, r)
        left = ring_matmul(ring, ring_kron(ring, self.delta_matrix, ident), self.delta_matrix)
        right = ring_matmul(ring, ring_kron(ring, ident, self.delta_matrix), self.delta_matrix)
        return np.array_equal(left, right)

    def check_counit(self) -> bool:
        """(eps (x) id) Delta = id = (id (x) eps) Delta on the basis."""
        ring, r = self.ring, self.rank
        ident = ring_identity(ring, r)
        left = ring_matmul(ring, ring_kron(ring, self.counit_vector, ident), self.delta_matrix)
        right = ring_matmul(ring, ring_kron(ring, ident, self.counit_vector), self.delta_matrix)
        return np.array_equal(left, ident) and np.array_equal(right, ident)

    def check_bialgebra(self) -> bool:
        """Delta and eps are unital algebra maps, checked on all basis pairs."""
        ring = self.ring
        HH = self.tensor_square
        products = self.basis_products
        images = np.transpose(self.delta_matrix, (1, 0, 2))
        lhs = ring_apply(ring, self.delta_matrix, products)
        rhs = HH.multiply(images[:, None], images[None, :])
        eps = ring_apply(ring, self.counit_vector, self.basis_coords())[:, 0]
        eps_lhs = ring_apply(ring, self.counit_vector, products)[..., 0, :]
        eps_rhs = ring.mul(eps[:, None], eps[None, :])
        unital = np.array_equal(ring_apply(ring, self.delta_matrix, self.unit), HH.unit) and \
            np.array_equal(ring_apply(ring, self.counit_vector, self.unit)[0], ring.unit_coords)
        return np.array_equal(lhs, rhs) and np.array_equal(eps_lhs, eps_rhs) and unital

    def check_antipode(self) -> bool:
        """m(S (x) id)Delta = eta eps = m(id (x) S)Delta on the basis."""
        ring, r = self.ring, self.rank
        basis = self.basis_coords()
        s_images = np.transpose(self.antipode_matrix, (1, 0, 2))
        coeffs = np.transpose(self.delta_matrix, (1, 0, 2)).reshape(r, r, r, ring.dim)
        eps = ring_apply(ring, self.counit_vector, basis)[:, 0]
        expected = self.scale(eps, self.unit)
        left_products = self.multiply(s_images[:, None], basis[None, :])
        right_products = self.multiply(basis[:, None], s_images[None, :])
        left = ring.mul(coeffs[..., None, :], left_products[None]).sum(axis=(1, 2)) % ring.mod
        right = ring.mul(coeffs[..., None, :], right_products[None]).sum(axis=(1, 2)) % ring.mod
        return np.array_equal(left, expected) and np.array_equal(right, expected)

    def check_associativity(self, samples=None, exhaustive=None, seed=None) -> bool:
        if exhaustive is None:
            exhaustive = self.params.N <= 3
        return super().check_associativity(samples=samples, exhaustive=exhaustive, seed=seed)

    def check_hopf_axioms(self) -> Dict[str, bool]:
        return {
            'associativity': self.check_associativity(),
            'coassociativity': self.check_coassociativity(),
            'counit': self.check_counit(),
            'bialgebra': self.check_bialgebra(),
            'antipode': self.check_antipode(),
        }


def monomial_images(algebra: StructureAlgebra, N: int, image_g: np.ndarray,
                    image_x: np.ndarray) -> np.ndarray:
    """R-matrix of the algebra map g^m x^n -> image_g^m image_x^n."""
    g_powers = [algebra.unit]
    for _ in range(1, N):
        g_powers.append(algebra.multiply(g_powers[-1], image_g))
    columns = np.zeros((N * N, algebra.rank, algebra.ring.dim), dtype=np.int64)
    for m in range(N):
        current = g_powers[m]
        for n in range(N):
            columns[m * N + n] = current
            current = algebra.multiply(current, image_x)
    return np.transpose(columns, (1, 0, 2))


@lru_cache(maxsize=32)
def taft_algebra(params: TaftParams) -> TaftAlgebra:
    """The (cached) Taft algebra for a parameter set."""
    return TaftAlgebra(params)


# ----------------------------------------------------------------------
# Functional interface
# ----------------------------------------------------------------------

def taft_mul(a: TaftElement, b: TaftElement) -> TaftElement:
    if a.algebra is not b.algebra:
        raise ValueError("Taft elements with different parameters")
    return a * b


def taft_delta(a: TaftElement) -> TaftTensor:
    return a.algebra.delta(a)


def taft_counit(a: TaftElement) -> RingElement:
    return a.algebra.counit(a)


def taft_antipode(a: TaftElement) -> TaftElement:
    return a.algebra.antipode(a)


def q_binomial(n: int, i: int, q: RingElement) -> RingElement:
    """
    Gaussian binomial coefficient C(n, i)_q in R.

    Uses the q-Pascal recurrence C(n, i) = C(n-1, i-1) + q^i C(n-1, i), which
    needs no division.
    """
    if i < 0 or i > n:
        raise ValueError(f"q_binomial needs 0 <= i <= n, got n={n}, i={i}")
    ring = q.ring
    row = [ring.one()]
    for m in range(1, n + 1):
        nxt = [ring.one()]
        for j in range(1, m):
            nxt.append(row[j - 1] + (q ** j) * row[j])
        nxt.append(ring.one())
        row = nxt
    return row[i]


def gaussian_binomial_poly(n: int, i: int) -> List[int]:
    """
    Integer coefficients (constant term first) of C(n, i) in Z[q].

    Exact division of the q-factorial quotient with sympy.
    """
    if i < 0 or i > n:
        raise ValueError(f"gaussian_binomial_poly needs 0 <= i <= n, got n={n}, i={i}")

    def q_factorial(k: int) -> sympy.Poly:
        acc = sympy.Poly(1, _Q, domain='ZZ')
        for j in range(1, k + 1):
            acc *= sympy.Poly(sum(_Q ** e for e in range(j)), _Q, domain='ZZ')
        return acc

    quotient, remainder = sympy.div(q_factorial(n), q_factorial(i) * q_factorial(n - i))
    if not remainder.is_zero:
        raise ArithmeticError(f"Gaussian binomial ({n} {i}) is not a polynomial")
    return [int(c) for c in reversed(quotient.all_coeffs())]


def skew_power(params: TaftParams, n: int) -> Dict[Tuple[int, int], RingElement]:
    """
    (z + w)^n in R<z, w>/(zw - q wz).

    Returns:
        Nonzero coefficients keyed by (i, j) for the normal monomial
        w^j z^i (every w to the left of every z)
    """
    q = params.q
    ring = params.ring
    power: Dict[Tuple[int, int], RingElement] = {(0, 0): ring.one()}
    for _ in range(n):
        step: Dict[Tuple[int, int], RingElement] = {}
        for (i, j), c in power.items():
            # (w^j z^i) z = w^j z^(i+1);  (w^j z^i) w = q^i w^(j+1) z^i
            step[(i + 1, j)] = step.get((i + 1, j), ring.zero()) + c
            step[(i, j + 1)] = step.get((i, j + 1), ring.zero()) + c * q ** i
        power = {key: c for key, c in step.items() if not c.is_zero()}
    return power


def skew_binomial_check(params: TaftParams, n: int) -> bool:
    """Whether (z + w)^n = sum_i C(n, i)_q w^(n-i) z^i, and (z + w)^N = z^N + w^N."""
    if not 1 <= n <= params.N:
        raise ValueError(f"skew_binomial_check needs 1 <= n <= N, got {n}")
    power = skew_power(params, n)
    ring = params.ring
    for i in range(n + 1):
        if power.get((i, n - i), ring.zero()) != q_binomial(n, i, params.q):
            return False
    if any(i + j != n for i, j in power):
        return False
    if n == params.N:
        expected = {(n, 0): ring.one(), (0, n): ring.one()}
        return power == expected
    return True
