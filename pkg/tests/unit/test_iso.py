"""
Unit tests for isomorphisms between cleft extensions.
"""

import numpy as np
import pytest

from taftcleft.algebra.cleft import CleftData, cleft_extension
from taftcleft.algebra.iso import (
    IsoWitness,
    are_isomorphic,
    b_zero_data,
    build_iso,
    compatibility_equations,
    induced_data,
    iso_classes,
    normalize_b,
    search_witnesses,
    transport_certificate,
    transport_triples,
    transported_data,
)
from taftcleft.errors import InvalidWitnessError, NotAUnitError


class TestTransport:
    """Tests for the compatibility equations."""

    def test_normalize_b(self, params_z5, z5):
        """(1, 0, 1) over Z/5 normalises to (1, 1, 0) with (s, t) = (1, 2)."""
        normalized, witness = normalize_b(params_z5, CleftData.of(z5, 1, 0, 1))
        assert normalized == CleftData.of(z5, 1, 1, 0)
        assert (witness.s, witness.t) == (1, 2)

    def test_normalize_b_n3(self, params_z7, z7):
        """(1, 0, 3) over Z/7 with N=3, q=2 normalises to (1, 6, 0)."""
        normalized, _ = normalize_b(params_z7, CleftData.of(z7, 1, 0, 3))
        assert normalized == CleftData.of(z7, 1, 6, 0)

    def test_non_unit_s(self, params_z5, z5):
        """s must be a unit."""
        with pytest.raises(NotAUnitError):
            transported_data(params_z5, CleftData.of(z5, 1, 0), 0, 1)

    @pytest.mark.parametrize('s,t', [(1, 0), (2, 0), (1, 3), (3, 4), (4, 1)])
    def test_induced_matches_equations(self, params_z5, z5, s, t):
        """Reading d' off F(v_g'), F(v_x') agrees with the closed formulas."""
        d = CleftData.of(z5, 2, 3, 1)
        assert induced_data(params_z5, d, s, t) == transported_data(params_z5, d, s, t)

    @pytest.mark.parametrize('s,t', [(1, 1), (3, 2), (6, 5)])
    def test_induced_matches_equations_n3(self, params_z7, z7, s, t):
        """The same over Z/7 with N=3."""
        d = CleftData.of(z7, 3, 1, 2)
        assert induced_data(params_z7, d, s, t) == transported_data(params_z7, d, s, t)

    def test_compatibility(self, params_z5, z5):
        """The equations hold exactly for the transported datum."""
        d = CleftData.of(z5, 2, 3)
        d_prime = transported_data(params_z5, d, 3, 1)
        assert compatibility_equations(params_z5, d, d_prime, 3, 1)
        assert not compatibility_equations(params_z5, d, d_prime, 3, 2)


class TestBuildIso:
    """Tests for verified isomorphisms."""

    def test_build_normalising_iso(self, params_z5, z5):
        """F: B_(1,1,0) -> B_(1,0,1) is a verified comodule algebra isomorphism."""
        d = CleftData.of(z5, 1, 0, 1)
        normalized, witness = normalize_b(params_z5, d)
        verified = build_iso(params_z5, d, normalized, witness.s, witness.t)
        B = cleft_extension(params_z5, d)
        B_prime = cleft_extension(params_z5, normalized)
        assert verified.map(B_prime.v_g()) == B.v_g()
        assert verified.map(B_prime.v_x()) == B.v_x() + B.v_g() * 2

    def test_map_is_multiplicative(self, params_z7, z7):
        """F(a b) = F(a) F(b) on generators."""
        d = CleftData.of(z7, 3, 1, 2)
        d_prime = transported_data(params_z7, d, 5, 4)
        F = build_iso(params_z7, d, d_prime, 5, 4).map
        B_prime = cleft_extension(params_z7, d_prime)
        x, g = B_prime.v_x(), B_prime.v_g()
        assert F(x * g) == F(x) * F(g)

    def test_invalid_witness(self, params_z5, z5):
        """A pair failing the equations raises InvalidWitnessError."""
        with pytest.raises(InvalidWitnessError):
            build_iso(params_z5, CleftData.of(z5, 2, 3), CleftData.of(z5, 1, 3), 1, 0)

    def test_transport_certificate(self, params_z5, z5):
        """Composition with F permutes comodule maps as the triple formula says."""
        d = CleftData.of(z5, 2, 3)
        d_prime = transported_data(params_z5, d, 2, 0)
        witness = build_iso(params_z5, d, d_prime, 2, 0)
        assert transport_certificate(params_z5, witness)

    def test_transport_triples(self, params_z5, z5):
        """(lambda, mu, xi) -> (lambda, s mu, lambda t + s xi)."""
        witness = IsoWitness(z5.element(2), z5.element(3))
        out = transport_triples(params_z5, witness, np.array([[1, 1, 1]]))
        assert out.tolist() == [[1, 2, 0]]


class TestCriterion:
    """Tests for are_isomorphic and the class partition."""

    def test_isomorphic(self, params_z5, z5):
        """u'/u = 4 is a square, so B_(2,3) and B_(3,3) are isomorphic."""
        d, d_prime = CleftData.of(z5, 2, 3), CleftData.of(z5, 3, 3)
        witness = are_isomorphic(params_z5, d, d_prime)
        assert witness is not None
        assert witness.source == d_prime and witness.target == d
        assert compatibility_equations(params_z5, d, d_prime, witness.s, witness.t)

    def test_not_isomorphic(self, params_z5, z5):
        """Different a, or u'/u not a square, gives no isomorphism."""
        d = CleftData.of(z5, 2, 3)
        assert are_isomorphic(params_z5, d, CleftData.of(z5, 1, 3)) is None
        assert are_isomorphic(params_z5, d, CleftData.of(z5, 2, 1)) is None

    def test_isomorphic_with_skew_terms(self, params_z5, z5):
        """Data with b != 0 are compared after normalisation."""
        d, d_prime = CleftData.of(z5, 1, 0, 1), CleftData.of(z5, 4, 1, 0)
        witness = are_isomorphic(params_z5, d, d_prime)
        assert witness is not None
        build_iso(params_z5, d, d_prime, witness.s, witness.t)

    def test_search_witnesses(self, params_z5, z5):
        """s = 2 and s = 3 with t = 0 are the only witnesses."""
        found = search_witnesses(params_z5, CleftData.of(z5, 2, 3), CleftData.of(z5, 3, 3))
        assert sorted((w.s.value, w.t.value) for w in found) == [(2, 0), (3, 0)]

    def test_compose_with_inverse(self, z5):
        """w o w^-1 is the identity pair."""
        w = IsoWitness(z5.element(3), z5.element(4))
        identity = w.compose(w.inverse())
        assert (identity.s, identity.t) == (1, 0)

    @pytest.mark.parametrize('fixture,data,classes', [
        ('params_z5', 20, 10),
        ('params_z7', 42, 21),
        ('params_gf4', 12, 12),
    ])
    def test_class_counts(self, fixture, data, classes, request):
        """|R| times the index of the N-th powers."""
        params = request.getfixturevalue(fixture)
        assert len(b_zero_data(params)) == data
        assert len(iso_classes(params)) == classes

    def test_class_order(self, params_z5):
        """Classes are listed by least member."""
        first = iso_classes(params_z5)[0]
        assert [d.key for d in first] == [(1, 0, 0), (4, 0, 0)]

    def test_classes_agree_with_criterion(self, params_z5):
        """Members of one class are pairwise isomorphic."""
        for members in iso_classes(params_z5):
            d = members[0]
            assert all(are_isomorphic(params_z5, d, other) is not None for other in members[1:])


def _mixed_data(params, a_values, b_values):
    """Every unit u with a and b drawn from the given values."""
    ring = params.ring
    return [CleftData(u, ring.element(a), ring.element(b))
            for u in ring.units() for a in a_values for b in b_values]


def _all_data(params):
    ring = params.ring
    return [CleftData(u, a, b) for u in ring.units() for a in ring.elements() for b in ring.elements()]


class TestCriterionAgainstSearch:
    """The normalise-then-compare criterion against exhaustive (s, t) search."""

    @pytest.mark.parametrize('fixture,a_values,b_values', [
        ('params_z5', range(5), [0, 1]),
        ('params_z7', [0, 3], [0, 2]),
    ])
    def test_agrees_on_every_pair(self, fixture, a_values, b_values, request):
        """are_isomorphic returns None exactly when no (s, t) solves the equations."""
        params = request.getfixturevalue(fixture)
        data = _mixed_data(params, a_values, b_values)
        for d in data:
            for d_prime in data:
                witness = are_isomorphic(params, d, d_prime)
                found = search_witnesses(params, d, d_prime)
                assert (witness is None) == (not found), (d, d_prime)
                if witness is not None:
                    assert (witness.s.value, witness.t.value) in {(w.s.value, w.t.value) for w in found}


class TestEquivalenceRelation:
    """Witnesses are closed under identity, inverse and composition."""

    @pytest.mark.parametrize('fixture', ['params_z5', 'params_gf4'])
    def test_reflexive(self, fixture, request):
        """(s, t) = (1, 0) maps every B_d onto itself."""
        params = request.getfixturevalue(fixture)
        ring = params.ring
        for d in _all_data(params):
            assert compatibility_equations(params, d, d, ring.one(), ring.zero()), d

    @pytest.mark.parametrize('fixture', ['params_z5', 'params_gf4'])
    def test_symmetric(self, fixture, request):
        """The inverse of a witness d' -> d is a witness d -> d'."""
        params = request.getfixturevalue(fixture)
        ring = params.ring
        for d in _all_data(params):
            for s in ring.units():
                for t in ring.elements():
                    d_prime = transported_data(params, d, s, t)
                    inverse = IsoWitness(s, t, source=d_prime, target=d).inverse()
                    assert compatibility_equations(params, d_prime, d, inverse.s, inverse.t)

    @pytest.mark.parametrize('fixture,a_values,b_values', [
        ('params_z5', range(5), [0, 1]),
        ('params_gf4', [0, (0, 1)], [0, (1, 1)]),
    ])
    def test_transitive(self, fixture, a_values, b_values, request):
        """Composing witnesses d'' -> d' -> d gives a witness d'' -> d."""
        params = request.getfixturevalue(fixture)
        ring = params.ring
        pairs = [(s, t) for s in ring.units() for t in ring.elements()]
        for d in _mixed_data(params, a_values, b_values):
            for s1, t1 in pairs:
                d_prime = transported_data(params, d, s1, t1)
                first = IsoWitness(s1, t1, source=d_prime, target=d)
                for s2, t2 in pairs:
                    d_second = transported_data(params, d_prime, s2, t2)
                    composed = first.compose(IsoWitness(s2, t2, source=d_second, target=d_prime))
                    assert compatibility_equations(params, d, d_second, composed.s, composed.t)
