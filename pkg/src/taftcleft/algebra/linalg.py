"""
Exact linear algebra over Z/n and over finite rings.

Row spans over Z/n are normalised to Howell form: pivots are divisors of n,
entries above a pivot are reduced below it, and annihilator rows are added
so that the form is unique for the span. Kernels, solvability and
invertibility all reduce to Howell forms.

An R-linear map is handled through the additive embedding of R into
(Z/n)^d, n the exponent of (R, +): a coordinate with modulus m is stored as
a multiple of n/m.
"""

import itertools
import logging
import math
from typing import List, Optional, Tuple

import numpy as np
try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from taftcleft.algebra.ring import FiniteRing

logger = logging.getLogger(__name__)


def _unit_normaliser(a: int, n: int) -> int:
    """A unit u of Z/n with a*u = gcd(a, n) mod n."""
    g = math.gcd(a, n)
    m = n // g
    if m == 1:
        return 1
    base = pow(a // g, -1, m)
    for k in range(g):
        u = base + k * m
        if math.gcd(u, n) == 1:
            return u
    raise ArithmeticError(f"no unit normaliser for {a} mod {n}")


def howell_form(matrix: np.ndarray, n: int) -> np.ndarray:
    """
    Howell form of the row span of ``matrix`` over Z/n.

    Args:
        matrix: Integer matrix, shape (rows, cols)
        n: Modulus

    Returns:
        The nonzero rows of the Howell form, ordered by pivot column
    """
    a = np.array(matrix, dtype=np.int64) % n
    if a.ndim != 2:
        raise ValueError(f"Expected a matrix, got shape {a.shape}")
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r >= a.shape[0]:
            break
        below = a[r:, c]
        nz = np.nonzero(below)[0]
        if nz.size == 0:
            continue
        gcds = np.gcd(below[nz], n)
        target = int(np.gcd.reduce(gcds))
        hit = nz[gcds == target]
        if hit.size:
            p = r + int(hit[0])
            a[[r, p]] = a[[p, r]]
        else:
            # No single row reaches the column gcd: fold rows together
            for i in nz:
                i = r + int(i)
                if i == r:
                    continue
                x, y = int(a[r, c]), int(a[i, c])
                if y == 0:
                    continue
                s, t, g = igcdex(x, y)
                row_r = (s * a[r] + t * a[i]) % n
                row_i = ((-y // g) * a[r] + (x // g) * a[i]) % n
                a[r], a[i] = row_r, row_i
        u = _unit_normaliser(int(a[r, c]), n)
        a[r] = a[r] * u % n
        pivot = int(a[r, c])
        if a.shape[0] > r + 1:
            factors = a[r + 1:, c] // pivot
            a[r + 1:] = (a[r + 1:] - factors[:, None] * a[r]) % n
        if r > 0:
            factors = a[:r, c] // pivot
            a[:r] = (a[:r] - factors[:, None] * a[r]) % n
        if pivot != 1:
            extra = (n // pivot) * a[r] % n
            if extra.any():
                a = np.vstack([a, extra[None, :]])
        r += 1
    a = a[:r]
    return a[a.any(axis=1)]


def kernel(matrix: np.ndarray, n: int) -> np.ndarray:
    """Howell basis of {y : matrix @ y = 0 mod n}."""
    m = np.array(matrix, dtype=np.int64) % n
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    augmented = np.hstack([m.T, np.eye(cols, dtype=np.int64)])
    h = howell_form(augmented, n)
    left = h[:, :rows]
    basis = h[~left.any(axis=1), rows:]
    return howell_form(basis, n) if basis.size else np.zeros((0, cols), dtype=np.int64)


def span_size(basis: np.ndarray, n: int) -> int:
    """Number of elements of the span of a Howell basis."""
    size = 1
    for row in basis:
        pivot = int(row[np.nonzero(row)[0][0]])
        size *= n // pivot
    return size


def enumerate_span(basis: np.ndarray, n: int) -> np.ndarray:
    """Every vector of the span of a Howell basis, without repeats."""
    if len(basis) == 0:
        return np.zeros((1, basis.shape[1] if basis.ndim == 2 else 0), dtype=np.int64)
    ranges = []
    for row in basis:
        pivot = int(row[np.nonzero(row)[0][0]])
        ranges.append(range(n // pivot))
    coeffs = np.array(list(itertools.product(*ranges)), dtype=np.int64)
    vectors = coeffs @ basis % n
    return np.unique(vectors, axis=0)


class RLinearMap:
    """
    An R-linear map R^cols -> R^rows given by a matrix over R.

    The matrix is stored as ring coordinates, shape (rows, cols, d): column
    j holds the image of the j-th standard basis vector.

    Attributes:
        ring: Coefficient ring
        matrix: Coordinates of the entries
    """

    def __init__(self, ring: FiniteRing, matrix: np.ndarray):
        self.ring = ring
        self.matrix = np.asarray(matrix, dtype=np.int64) % ring.mod
        if self.matrix.ndim != 3 or self.matrix.shape[2] != ring.dim:
            raise ValueError(f"Expected shape (rows, cols, {ring.dim}), got {self.matrix.shape}")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape[0], self.matrix.shape[1]

    @property
    def _n(self) -> int:
        return self.ring.exponent

    @property
    def _scale(self) -> np.ndarray:
        """n / m for every ring coordinate."""
        return self._n // self.ring.mod

    def z_matrix(self) -> np.ndarray:
        """
        The map on Z-coordinates, embedded into (Z/n)^(rows*d).

        Entry [(row, k), (col, i)] is coordinate k of A[row, col] * b_i,
        scaled by n / m_k.
        """
        ring = self.ring
        rows, cols = self.shape
        z = np.einsum('rcj,jik->rkci', self.matrix, ring.structure) % ring.mod[None, :, None, None]
        z = z * self._scale[None, :, None, None]
        return z.reshape(rows * ring.dim, cols * ring.dim) % self._n

    def _to_ring_vectors(self, z_rows: np.ndarray) -> np.ndarray:
        """Embedded Z-rows -> ring coordinate vectors, shape (k, cols, d)."""
        d = self.ring.dim
        reshaped = z_rows.reshape(len(z_rows), -1, d)
        return (reshaped // self._scale) % self.ring.mod

    def _embed(self, vectors: np.ndarray) -> np.ndarray:
        """Ring coordinate vectors (k, cols, d) -> embedded Z-rows."""
        flat = (np.asarray(vectors) % self.ring.mod) * self._scale
        return flat.reshape(len(flat), -1) % self._n

    def kernel_canonical(self) -> np.ndarray:
        """Howell form of the embedded kernel; equal kernels give equal arrays."""
        n = self._n
        lifted = kernel(self.z_matrix(), n)
        scale = np.tile(self._scale, self.shape[1])
        return howell_form(lifted * scale % n, n) if len(lifted) else lifted

    def kernel_vectors(self) -> np.ndarray:
        """Z-generators of the kernel as ring vectors, shape (k, cols, d)."""
        canon = self.kernel_canonical()
        if len(canon) == 0:
            return np.zeros((0, self.shape[1], self.ring.dim), dtype=np.int64)
        return self._to_ring_vectors(canon)

    def kernel_elements(self) -> np.ndarray:
        """Every kernel vector (exhaustive; small kernels only)."""
        canon = self.kernel_canonical()
        n = self._n
        if len(canon) == 0:
            return np.zeros((1, self.shape[1], self.ring.dim), dtype=np.int64)
        return self._to_ring_vectors(enumerate_span(canon, n))

    def is_injective(self) -> bool:
        return len(self.kernel_canonical()) == 0

    def is_invertible(self) -> bool:
        """Square and injective; a finite module map with trivial kernel is bijective."""
        rows, cols = self.shape
        return rows == cols and self.is_injective()

    def solve(self, rhs: np.ndarray) -> Optional[np.ndarray]:
        """
        One solution x of A x = rhs, or None.

        Args:
            rhs: Ring coordinates, shape (rows, d)

        Returns:
            Ring coordinates of x, shape (cols, d), or None if unsolvable
        """
        n = self._n
        z = self.z_matrix()
        b = self._embed(np.asarray(rhs)[None, ...])[0]
        augmented = np.hstack([(-b % n)[:, None], z])
        basis = kernel(augmented, n)
        if len(basis) == 0 or basis[0, 0] != 1:
            return None
        lifted = basis[0, 1:]
        d = self.ring.dim
        return lifted.reshape(-1, d) % self.ring.mod

    def solution_set(self, rhs: np.ndarray) -> np.ndarray:
        """All solutions of A x = rhs (particular solution plus kernel)."""
        particular = self.solve(rhs)
        if particular is None:
            return np.zeros((0, self.shape[1], self.ring.dim), dtype=np.int64)
        return (self.kernel_elements() + particular[None]) % self.ring.mod

    def span_canonical(self) -> np.ndarray:
        """Howell form of the column span (as embedded Z-rows of images)."""
        return span_canonical(self.ring, np.transpose(self.matrix, (1, 0, 2)))


def span_canonical(ring: FiniteRing, vectors: np.ndarray) -> np.ndarray:
    """
    Howell form of the R-span of ring vectors.

    Args:
        ring: Coefficient ring
        vectors: Ring coordinates, shape (k, length, d)

    Returns:
        Canonical embedded Z-rows of the span
    """
    vectors = np.asarray(vectors, dtype=np.int64)
    k, length, d = vectors.shape
    n = ring.exponent
    scale = n // ring.mod
    # R-span = Z-span of every vector times every coordinate basis element
    basis = np.eye(d, dtype=np.int64)[None, :, None, :]
    products = ring.mul(vectors[:, None, :, :], basis)
    rows = (products * scale).reshape(-1, length * d) % n
    return howell_form(rows, n)


def ring_matmul(ring: FiniteRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over R of coordinate arrays (i, j, d) x (j, k, d)."""
    return np.einsum('ijx,jky,xyz->ikz', a, b, ring.structure) % ring.mod


def ring_kron(ring: FiniteRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product over R, shape (ra*rb, ca*cb, d)."""
    prod = np.einsum('ijx,kly,xyz->ikjlz', a, b, ring.structure) % ring.mod
    ra, ca = a.shape[:2]
    rb, cb = b.shape[:2]
    return prod.reshape(ra * rb, ca * cb, ring.dim)


def ring_identity(ring: FiniteRing, size: int) -> np.ndarray:
    """Identity matrix over R as coordinates."""
    out = np.zeros((size, size, ring.dim), dtype=np.int64)
    out[np.arange(size), np.arange(size)] = ring.unit_coords
    return out


def ring_apply(ring: FiniteRing, matrix: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Apply an R-matrix (rows, cols, d) to vectors (..., cols, d)."""
    return np.einsum('ijx,...jy,xyz->...iz', matrix, vectors, ring.structure) % ring.mod
