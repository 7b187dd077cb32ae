"""
Unit tests for linear algebra over Z/n and finite rings.
"""

import numpy as np

from taftcleft.algebra.linalg import (
    RLinearMap,
    enumerate_span,
    howell_form,
    kernel,
    ring_apply,
    ring_identity,
    ring_matmul,
    span_canonical,
    span_size,
)


class TestHowellForm:
    """Tests for howell_form."""

    def test_single_zero_divisor(self):
        """(2) over Z/4 is already in Howell form."""
        assert howell_form([[2]], 4).tolist() == [[2]]

    def test_annihilator_row_added(self):
        """(2, 1) over Z/4 needs the extra row (0, 2)."""
        assert howell_form([[2, 1]], 4).tolist() == [[2, 1], [0, 2]]

    def test_unit_pivot_normalised(self):
        """Pivots over a field become 1."""
        assert howell_form([[3, 1]], 5).tolist() == [[1, 2]]

    def test_same_span_same_form(self):
        """Different generators of one span give one form."""
        first = howell_form([[1, 2], [2, 4]], 5)
        second = howell_form([[3, 1]], 5)
        assert np.array_equal(first, second)

    def test_zero_matrix(self):
        """The zero span has no rows."""
        assert howell_form(np.zeros((2, 3), dtype=int), 6).shape == (0, 3)


class TestKernel:
    """Tests for kernel, span_size and enumerate_span."""

    def test_kernel_mod_4(self):
        """{y : 2y = 0 mod 4} = {0, 2}."""
        assert kernel([[2]], 4).tolist() == [[2]]

    def test_kernel_mod_6(self):
        """2 y1 + 3 y2 = 0 mod 6 has six solutions."""
        basis = kernel([[2, 3]], 6)
        assert span_size(basis, 6) == 6
        vectors = enumerate_span(basis, 6)
        assert len(vectors) == 6
        assert ((vectors @ np.array([2, 3])) % 6 == 0).all()

    def test_enumerate_span(self):
        """The span of (2, 1), (0, 2) over Z/4 has four vectors."""
        vectors = enumerate_span(np.array([[2, 1], [0, 2]]), 4)
        assert sorted(map(tuple, vectors.tolist())) == [(0, 0), (0, 2), (2, 1), (2, 3)]


class TestRLinearMap:
    """Tests for RLinearMap over Z/5 and F_5[t]/(t^2)."""

    def test_kernel_over_field(self, z5):
        """The kernel of [[1, 2], [2, 4]] is spanned by (1, 2) after normalisation."""
        A = RLinearMap(z5, np.array([[1, 2], [2, 4]])[..., None])
        assert A.kernel_canonical().tolist() == [[1, 2]]
        assert len(A.kernel_elements()) == 5
        assert not A.is_invertible()

    def test_solve(self, z5):
        """A solution of A x = b satisfies the system."""
        matrix = np.array([[1, 2], [2, 4]])[..., None]
        A = RLinearMap(z5, matrix)
        x = A.solve(np.array([[1], [2]]))
        assert x is not None
        assert np.array_equal(ring_apply(z5, matrix, x), [[1], [2]])
        assert A.solve(np.array([[1], [0]])) is None

    def test_solution_set(self, z5):
        """A solvable singular system has |kernel| solutions."""
        A = RLinearMap(z5, np.array([[1, 2], [2, 4]])[..., None])
        assert len(A.solution_set(np.array([[1], [2]]))) == 5
        assert len(A.solution_set(np.array([[1], [0]]))) == 0

    def test_multiplication_by_nilpotent(self, dual_numbers):
        """x -> t x has kernel tR and is not injective."""
        A = RLinearMap(dual_numbers, np.array([[[0, 1]]]))
        assert not A.is_injective()
        assert len(A.kernel_elements()) == 5
        assert A.solve(np.array([[0, 1]])) is not None
        assert A.solve(np.array([[1, 0]])) is None

    def test_multiplication_by_unit(self, dual_numbers):
        """x -> (1 + t) x is invertible."""
        assert RLinearMap(dual_numbers, np.array([[[1, 1]]])).is_invertible()

    def test_non_square_not_invertible(self, z5):
        """A 1 x 2 matrix is never invertible."""
        assert not RLinearMap(z5, np.array([[[1], [0]]])).is_invertible()


class TestRingMatrices:
    """Tests for ring_matmul, ring_identity and span_canonical."""

    def test_identity_is_neutral(self, dual_numbers):
        """I A = A."""
        A = np.array([[[1, 2], [0, 1]], [[3, 0], [4, 4]]])
        I = ring_identity(dual_numbers, 2)
        assert np.array_equal(ring_matmul(dual_numbers, I, A), A)

    def test_span_canonical(self, z5):
        """(1, 2) and (2, 4) span the same line."""
        first = span_canonical(z5, np.array([[[1], [2]]]))
        second = span_canonical(z5, np.array([[[2], [4]]]))
        assert np.array_equal(first, second)
