"""
Free R-algebras of finite rank given by sparse structure constants.

The Taft algebra, every cleft extension B_d and the tensor products
H (x) H and B (x) H are all instances of StructureAlgebra: a basis indexed
by labels and a list of nonzero products e_p * e_q = sum c e_r. Elements are
ring-coordinate arrays of shape (rank, d); every product is vectorised and
broadcasts over leading axes, so a whole family of elements can be
multiplied at once.
"""

import logging
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from taftcleft.algebra.linalg import RLinearMap, ring_apply, ring_matmul
from taftcleft.algebra.ring import FiniteRing, RingElement

logger = logging.getLogger(__name__)


class StructureAlgebra:
    """
    A free R-algebra with basis e_0..e_{r-1}.

    Attributes:
        ring: Coefficient ring
        labels: Basis labels, in coordinate order
        unit: Coordinates of the identity, shape (rank, d)
    """

    element_class: Callable[..., 'AlgebraElement']

    def __init__(
        self,
        ring: FiniteRing,
        labels: Sequence[Hashable],
        left: np.ndarray,
        right: np.ndarray,
        out: np.ndarray,
        coeff: np.ndarray,
        unit_index: int = 0,
    ):
        self.ring = ring
        self.labels = list(labels)
        self.label_index = {label: i for i, label in enumerate(self.labels)}
        keep = np.asarray(coeff, dtype=np.int64).reshape(-1, ring.dim) % ring.mod
        mask = keep.any(axis=1)
        order = np.argsort(np.asarray(out)[mask], kind='stable')
        self._left = np.asarray(left, dtype=np.int64)[mask][order]
        self._right = np.asarray(right, dtype=np.int64)[mask][order]
        self._out = np.asarray(out, dtype=np.int64)[mask][order]
        self._coeff = keep[mask][order]
        self._targets, self._starts = np.unique(self._out, return_index=True)
        self.unit = np.zeros((self.rank, ring.dim), dtype=np.int64)
        self.unit[unit_index] = ring.unit_coords

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def nnz(self) -> int:
        """Number of nonzero structure constants."""
        return len(self._out)

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product of coordinate arrays of shape (..., rank, d)."""
        ring = self.ring
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        shape = np.broadcast_shapes(x.shape, y.shape)
        result = np.zeros(shape, dtype=np.int64)
        if not self.nnz:
            return result
        terms = ring.mul(ring.mul(x[..., self._left, :], y[..., self._right, :]), self._coeff)
        sums = np.add.reduceat(terms, self._starts, axis=-2)
        result[..., self._targets, :] = sums % ring.mod
        return result

    def scale(self, c: np.ndarray, x: np.ndarray) -> np.ndarray:
        """Scalar multiple c * x with c of shape (..., d)."""
        return self.ring.mul(np.asarray(c)[..., None, :], x)

    def basis_coords(self) -> np.ndarray:
        """Every basis element, shape (rank, rank, d)."""
        out = np.zeros((self.rank, self.rank, self.ring.dim), dtype=np.int64)
        out[np.arange(self.rank), np.arange(self.rank)] = self.ring.unit_coords
        return out

    @property
    def basis_products(self) -> np.ndarray:
        """e_p * e_q for all p, q, shape (rank, rank, rank, d)."""
        if not hasattr(self, '_basis_products'):
            basis = self.basis_coords()
            self._basis_products = self.multiply(basis[:, None], basis[None, :])
        return self._basis_products

    # ------------------------------------------------------------------
    # Elements
    # ------------------------------------------------------------------

    def element(self, coeffs: np.ndarray) -> 'AlgebraElement':
        return self.element_class(self, coeffs)

    def zero(self) -> 'AlgebraElement':
        return self.element(np.zeros((self.rank, self.ring.dim), dtype=np.int64))

    def one(self) -> 'AlgebraElement':
        return self.element(self.unit.copy())

    def basis_element(self, label: Hashable) -> 'AlgebraElement':
        coeffs = np.zeros((self.rank, self.ring.dim), dtype=np.int64)
        coeffs[self.label_index[label]] = self.ring.unit_coords
        return self.element(coeffs)

    def scalar(self, c) -> 'AlgebraElement':
        c = self.ring.element(c)
        return self.element(self.scale(c.coords, self.unit))

    def label_text(self, label: Hashable) -> str:
        return str(label)

    def check_associativity(self, samples: Optional[int] = None, exhaustive: bool = True,
                            seed: Optional[int] = None) -> bool:
        """(ab)c = a(bc) on all basis triples, or on random element triples."""
        if exhaustive:
            prods = self.basis_products
            basis = self.basis_coords()
            left = self.multiply(prods[:, :, None], basis[None, None, :])
            right = self.multiply(basis[:, None, None], prods[None, :, :])
            return np.array_equal(left, right)
        ring = self.ring
        rng = np.random.default_rng(ring.settings.random_seed if seed is None else seed)
        n = samples or ring.settings.axiom_samples
        x, y, z = (ring.coords(rng.integers(0, ring.order, size=(n, self.rank))) for _ in range(3))
        return np.array_equal(self.multiply(self.multiply(x, y), z),
                              self.multiply(x, self.multiply(y, z)))


class TensorAlgebra(StructureAlgebra):
    """The tensor product A (x) B over R; basis (p, q) at index p * rank_B + q."""

    def __init__(self, first: StructureAlgebra, second: StructureAlgebra, element_class=None):
        if first.ring is not second.ring and first.ring != second.ring:
            raise ValueError("Tensor factors must share the coefficient ring")
        ring = first.ring
        rb = second.rank
        la, ra, oa, ca = first._left, first._right, first._out, first._coeff
        lb, rb_, ob, cb = second._left, second._right, second._out, second._coeff
        left = (la[:, None] * rb + lb[None, :]).ravel()
        right = (ra[:, None] * rb + rb_[None, :]).ravel()
        out = (oa[:, None] * rb + ob[None, :]).ravel()
        coeff = ring.mul(ca[:, None, :], cb[None, :, :]).reshape(-1, ring.dim)
        labels = [(a, b) for a in first.labels for b in second.labels]
        unit_index = int(np.argmax(first.unit.any(axis=1))) * rb + int(np.argmax(second.unit.any(axis=1)))
        self.first = first
        self.second = second
        self.element_class = element_class or AlgebraElement
        super().__init__(ring, labels, left, right, out, coeff, unit_index=unit_index)
        self.unit = ring.mul(first.unit[:, None, :], second.unit[None, :, :]).reshape(self.rank, ring.dim)

    def pure(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Coordinates of a (x) b (broadcast over leading axes)."""
        a = np.asarray(a)
        b = np.asarray(b)
        prod = self.ring.mul(a[..., :, None, :], b[..., None, :, :])
        return prod.reshape(prod.shape[:-3] + (self.rank, self.ring.dim))

    def pure_element(self, a: 'AlgebraElement', b: 'AlgebraElement') -> 'AlgebraElement':
        return self.element(self.pure(a.coeffs, b.coeffs))

    def label_text(self, label: Hashable) -> str:
        a, b = label
        return f"{self.first.label_text(a)} (x) {self.second.label_text(b)}"


class AlgebraElement:
    """An element of a StructureAlgebra."""

    __slots__ = ('algebra', 'coeffs')

    def __init__(self, algebra: StructureAlgebra, coeffs: np.ndarray):
        self.algebra = algebra
        self.coeffs = np.asarray(coeffs, dtype=np.int64) % algebra.ring.mod
        if self.coeffs.shape != (algebra.rank, algebra.ring.dim):
            raise ValueError(f"Expected coefficient shape {(algebra.rank, algebra.ring.dim)}, "
                             f"got {self.coeffs.shape}")

    @property
    def ring(self) -> FiniteRing:
        return self.algebra.ring

    def _check(self, other: 'AlgebraElement') -> None:
        if other.algebra is not self.algebra:
            raise ValueError("Elements belong to different algebras (parameter mismatch)")

    def _wrap(self, coeffs: np.ndarray) -> 'AlgebraElement':
        return type(self)(self.algebra, coeffs)

    def __add__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return self._wrap(self.coeffs + other.coeffs)
        if isinstance(other, (RingElement, int, np.integer)):
            return self + self.algebra.scalar(other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return self._wrap(self.algebra.multiply(self.coeffs, other.coeffs))
        if isinstance(other, (RingElement, int, np.integer)):
            c = self.ring.element(other)
            return self._wrap(self.algebra.scale(c.coords, self.coeffs))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (RingElement, int, np.integer)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("Negative powers are not supported")
        result = self._wrap(self.algebra.unit)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            return other.algebra is self.algebra and np.array_equal(self.coeffs, other.coeffs)
        if isinstance(other, (RingElement, int, np.integer)):
            return self == self.algebra.scalar(other)
        return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def coefficient(self, label: Hashable) -> RingElement:
        return self.ring.element(self.coeffs[self.algebra.label_index[label]])

    def terms(self) -> List[Tuple[Hashable, RingElement]]:
        """Nonzero (label, coefficient) pairs in basis order."""
        return [
            (label, self.ring.element(self.coeffs[i]))
            for i, label in enumerate(self.algebra.labels)
            if self.coeffs[i].any()
        ]

    def to_json(self):
        return [self.ring.to_json_value(self.ring.index(c)) for c in self.coeffs]

    def __str__(self) -> str:
        parts = [f"{c} * {self.algebra.label_text(label)}" for label, c in self.terms()]
        return ' + '.join(parts) if parts else '0'

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


StructureAlgebra.element_class = AlgebraElement


class LinearMap:
    """An R-linear map between free algebras, stored by the images of basis elements."""

    def __init__(self, source: StructureAlgebra, target: StructureAlgebra, matrix: np.ndarray):
        self.source = source
        self.target = target
        self.matrix = np.asarray(matrix, dtype=np.int64) % source.ring.mod
        expected = (target.rank, source.rank, source.ring.dim)
        if self.matrix.shape != expected:
            raise ValueError(f"Expected matrix shape {expected}, got {self.matrix.shape}")

    def apply(self, coeffs: np.ndarray) -> np.ndarray:
        """Image of coordinate arrays (..., source.rank, d)."""
        return ring_apply(self.source.ring, self.matrix, coeffs)

    def __call__(self, element: AlgebraElement) -> AlgebraElement:
        if element.algebra is not self.source:
            raise ValueError("Element is not in the source algebra")
        return self.target.element(self.apply(element.coeffs))

    def images(self) -> np.ndarray:
        """Images of the basis elements, shape (source.rank, target.rank, d)."""
        return np.transpose(self.matrix, (1, 0, 2))

    def compose(self, other: 'LinearMap') -> 'LinearMap':
        """self o other."""
        return LinearMap(other.source, self.target, ring_matmul(self.source.ring, self.matrix, other.matrix))

    def as_rlinear(self) -> RLinearMap:
        return RLinearMap(self.source.ring, self.matrix)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.source is other.source and self.target is other.target and \
            np.array_equal(self.matrix, other.matrix)

    __hash__ = None


def matrix_from_images(images: np.ndarray) -> np.ndarray:
    """Stack basis images (cols, rows, d) into a matrix (rows, cols, d)."""
    return np.transpose(np.asarray(images), (1, 0, 2))


def sparse_constants(ring: FiniteRing, products: Dict[Tuple[int, int], Dict[int, RingElement]]):
    """
    Flatten {(p, q): {r: c}} into the arrays StructureAlgebra takes.

    Returns:
        (left, right, out, coeff) with coeff of shape (nnz, d)
    """
    entries = [
        (p, q, r, c.coords)
        for (p, q), terms in sorted(products.items())
        for r, c in sorted(terms.items())
        if not c.is_zero()
    ]
    if not entries:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty, np.zeros((0, ring.dim), dtype=np.int64)
    left, right, out, coeff = zip(*entries)
    return np.array(left), np.array(right), np.array(out), np.array(coeff).reshape(-1, ring.dim)
