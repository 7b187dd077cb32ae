"""
Unit tests for structure-constant algebras and the Taft Hopf algebra.
"""

import numpy as np
import pytest

from taftcleft.algebra.linalg import ring_identity
from taftcleft.algebra.structure import LinearMap, TensorAlgebra, matrix_from_images, sparse_constants
from taftcleft.algebra.taft import (
    TaftAlgebra,
    TaftParams,
    gaussian_binomial_poly,
    q_binomial,
    skew_binomial_check,
    taft_algebra,
    taft_antipode,
    taft_counit,
    taft_delta,
    taft_mul,
)
from taftcleft.errors import HypothesisError


class TestStructureAlgebra:
    """Tests for the generic structure-constant machinery."""

    def test_basis_products(self, params_z5):
        """g * x is the basis monomial g x."""
        H = taft_algebra(params_z5)
        products = H.basis_products
        assert products.shape == (4, 4, 4, 1)
        expected = np.zeros((4, 1), dtype=int)
        expected[3] = 1
        assert np.array_equal(products[2, 1], expected)

    def test_associativity(self, params_z5):
        """Exhaustive and sampled associativity checks agree."""
        H = taft_algebra(params_z5)
        assert H.check_associativity(exhaustive=True)
        assert H.check_associativity(exhaustive=False, samples=50, seed=1)

    def test_tensor_unit(self, params_z5):
        """The unit of H (x) H is 1 (x) 1."""
        H = taft_algebra(params_z5)
        HH = TensorAlgebra(H, H)
        assert np.array_equal(HH.unit, HH.pure(H.unit, H.unit))
        assert HH.rank == 16

    def test_scalars_and_zero(self, params_z5):
        """Integers coerce to scalar multiples of 1."""
        H = taft_algebra(params_z5)
        assert H.one() == 1
        assert H.scalar(3) == H.one() * 3
        assert str(H.zero()) == '0'
        assert H.zero().is_zero()

    def test_terms(self, params_z5):
        """terms lists nonzero coefficients in basis order."""
        H = taft_algebra(params_z5)
        e = H.g() * 2 + H.x()
        assert [(label, c.value) for label, c in e.terms()] == [((0, 1), 1), ((1, 0), 2)]

    def test_negative_power_rejected(self, params_z5):
        """Algebra elements have no negative powers."""
        with pytest.raises(ValueError):
            taft_algebra(params_z5).g() ** -1

    def test_mixing_algebras_rejected(self, params_z5):
        """Elements of distinct algebra objects do not combine."""
        with pytest.raises(ValueError):
            TaftAlgebra(params_z5).g() * taft_algebra(params_z5).g()

    def test_linear_map_compose(self, params_z5):
        """The identity map is neutral for composition."""
        H = taft_algebra(params_z5)
        ident = LinearMap(H, H, ring_identity(H.ring, H.rank))
        twice = LinearMap(H, H, ring_identity(H.ring, H.rank) * 2)
        assert ident.compose(twice) == twice
        assert twice(H.g()) == H.g() * 2

    def test_linear_map_shape_checked(self, params_z5):
        """A matrix of the wrong shape is rejected."""
        H = taft_algebra(params_z5)
        with pytest.raises(ValueError):
            LinearMap(H, H, np.zeros((3, 4, 1)))

    def test_matrix_from_images(self):
        """Images are stacked as columns."""
        images = np.arange(6).reshape(2, 3, 1)
        assert matrix_from_images(images)[:, 1, 0].tolist() == [3, 4, 5]

    def test_sparse_constants_empty(self, z5):
        """No products gives empty arrays."""
        left, right, out, coeff = sparse_constants(z5, {})
        assert len(left) == len(right) == len(out) == 0
        assert coeff.shape == (0, 1)


class TestTaftParams:
    """Tests for parameter validation."""

    def test_n_too_small(self, z5):
        """N must be at least 2."""
        with pytest.raises(ValueError):
            TaftParams.of(z5, 1, 1)

    def test_q_not_a_root(self, z5):
        """q must satisfy Phi_N(q) = 0."""
        with pytest.raises(HypothesisError):
            TaftParams.of(z5, 2, 2)

    def test_to_dict(self, params_z7):
        """Parameters serialise to ring spec, N and q."""
        assert params_z7.to_dict() == {'ring': 'Z/7', 'N': 3, 'q': 2}


class TestTaftAlgebra:
    """Tests for the Taft relations and Hopf structure."""

    def test_relations(self, params_z5):
        """g^N = 1, x^N = 0 and x g = q g x."""
        H = taft_algebra(params_z5)
        g, x = H.g(), H.x()
        assert g ** 2 == H.one()
        assert (x ** 2).is_zero()
        assert taft_mul(x, g) == (g * x) * 4

    def test_relations_n3(self, params_z7):
        """Over Z/7 with N=3, q=2."""
        H = taft_algebra(params_z7)
        g, x = H.g(), H.x()
        assert g ** 3 == 1
        assert (x ** 3).is_zero()
        assert not (x ** 2).is_zero()
        assert x * g == g * x * 2

    def test_monomial_bounds(self, params_z5):
        """Monomials outside the basis are rejected."""
        with pytest.raises(ValueError):
            taft_algebra(params_z5).monomial(2, 0)

    def test_counit(self, params_z5):
        """eps(g) = 1, eps(x) = 0."""
        H = taft_algebra(params_z5)
        assert taft_counit(H.g()) == 1
        assert taft_counit(H.x()) == 0

    def test_coproduct(self, params_z5):
        """Delta(g) = g (x) g and Delta(x) = 1 (x) x + x (x) g."""
        H = taft_algebra(params_z5)
        HH = H.tensor_square
        g, x, one = H.g(), H.x(), H.one()
        assert taft_delta(g) == HH.pure_element(g, g)
        assert taft_delta(x) == HH.pure_element(one, x) + HH.pure_element(x, g)

    def test_antipode(self, params_z5):
        """S(g) = g^-1 and S(x) = -q^-1 g^-1 x."""
        H = taft_algebra(params_z5)
        assert taft_antipode(H.g()) == H.g()
        assert taft_antipode(H.x()) == H.monomial(1, 1)

    @pytest.mark.parametrize('fixture', ['params_z5', 'params_z7', 'params_gf4', 'params_dual'])
    def test_hopf_axioms(self, fixture, request):
        """Every Hopf algebra axiom holds."""
        params = request.getfixturevalue(fixture)
        checks = taft_algebra(params).check_hopf_axioms()
        assert all(checks.values()), checks

    def test_element_table(self, params_z7):
        """to_json gives an N x N coefficient table."""
        H = taft_algebra(params_z7)
        assert (H.g() * 3).to_json() == [[0, 0, 0], [3, 0, 0], [0, 0, 0]]

    def test_cache(self, params_z5):
        """taft_algebra returns one object per parameter set."""
        assert taft_algebra(params_z5) is taft_algebra(params_z5)


class TestGaussianBinomials:
    """Tests for q-binomials and the skew binomial theorem."""

    def test_polynomials(self):
        """Integer coefficients of small Gaussian binomials."""
        assert gaussian_binomial_poly(3, 1) == [1, 1, 1]
        assert gaussian_binomial_poly(4, 2) == [1, 1, 2, 1, 1]
        assert gaussian_binomial_poly(5, 0) == [1]

    def test_vanishing_at_root(self, params_z5, params_z7):
        """C(N, i)_q = 0 for 0 < i < N."""
        assert q_binomial(2, 1, params_z5.q) == 0
        assert q_binomial(3, 1, params_z7.q) == 0
        assert q_binomial(3, 2, params_z7.q) == 0

    def test_recurrence_matches_polynomial(self, params_z7):
        """The recurrence agrees with the integer polynomial evaluated at q."""
        q = params_z7.q
        for n in range(1, 9):
            for i in range(n + 1):
                coeffs = gaussian_binomial_poly(n, i)
                value = sum(c * 2 ** e for e, c in enumerate(coeffs)) % 7
                assert q_binomial(n, i, q) == value

    def test_out_of_range(self, params_z5):
        """i must lie in [0, n]."""
        with pytest.raises(ValueError):
            q_binomial(2, 3, params_z5.q)

    @pytest.mark.parametrize('fixture', ['params_z5', 'params_z7', 'params_gf4'])
    def test_skew_binomial(self, fixture, request):
        """(z + w)^n expands with q-binomials and (z + w)^N = z^N + w^N."""
        params = request.getfixturevalue(fixture)
        assert all(skew_binomial_check(params, n) for n in range(1, params.N + 1))
