"""
Unit tests for Z-symbol polynomials, comodule algebra maps and fingerprints.
"""

import pytest

from taftcleft.algebra.cleft import CleftData, cleft_extension
from taftcleft.algebra.identities import (
    ComoduleMap,
    ZPolynomial,
    ZSymbol,
    alias_symbols,
    brute_force_comodule_solutions,
    build_Pa,
    build_Qu,
    canonical_words,
    delta_T,
    delta_T_coassociative,
    enumerate_comodule_maps,
    evaluate,
    family_size,
    find_witness,
    fingerprint,
    fingerprint_fits,
    formal_expansion,
    is_identity,
    iter_families,
    parse_polynomial,
    section_comodule_map,
    solve_copy,
    word_count,
)
from taftcleft.algebra.ring import parse_ring_spec
from taftcleft.algebra.taft import TaftParams, taft_algebra
from taftcleft.errors import BudgetExceededError, PolynomialSyntaxError
from taftcleft.settings import Settings


class TestSymbols:
    """Tests for ZSymbol and words."""

    def test_aliases(self):
        """E, G and X name the labels 1, g and x."""
        assert ZSymbol.parse('G2') == ZSymbol(2, 1, 0)
        assert ZSymbol.parse('X') == ZSymbol.alias('X', 1)
        assert ZSymbol.alias('E').label == (0, 0)

    def test_general_symbol(self):
        """Z_i[m,n] names any basis label."""
        sym = ZSymbol.parse('Z1[1,1]')
        assert sym == ZSymbol(1, 1, 1)
        assert sym.alias_name is None
        assert sym.name == 'Z1[1,1]'

    def test_unknown_symbol(self):
        """Other names are rejected."""
        with pytest.raises(PolynomialSyntaxError):
            ZSymbol.parse('Y1')

    def test_alias_symbols(self):
        """Canonical order is copy, then E, G, X."""
        assert [s.name for s in alias_symbols(2)] == ['E1', 'G1', 'X1', 'E2', 'G2', 'X2']

    def test_word_count(self):
        """Words of length <= D over k symbols."""
        assert word_count(3, 2) == 13
        assert word_count(3, 5) == 364
        assert word_count(3, 7) == 3280

    def test_canonical_words(self):
        """Shorter words come first."""
        words = canonical_words(alias_symbols(1), 1)
        assert [len(w) for w in words] == [0, 1, 1, 1]
        assert [w[0].name for w in words[1:]] == ['E1', 'G1', 'X1']


class TestPolynomials:
    """Tests for ZPolynomial arithmetic and parsing."""

    def test_parse_and_print(self, z5):
        """to_text lists words in canonical order and parses back."""
        P = parse_polynomial('X1*G1 - 4*G1*X1', z5, 2)
        assert P.to_text() == 'G1*X1 + X1*G1'
        assert parse_polynomial(P.to_text(), z5, 2) == P

    def test_expansion(self, z5):
        """(E + G)^2 has four words."""
        P = parse_polynomial('(E1 + G1)^2', z5)
        assert len(P.terms) == 4
        assert P.degree == 2

    def test_arithmetic(self, z5):
        """Symbols combine with ring constants."""
        G = ZPolynomial.symbol(z5, 'G1')
        E = ZPolynomial.symbol(z5, 'E1')
        assert (G * 2 - G * 2).is_zero()
        assert 3 * G + E == parse_polynomial('E1 + 3*G1', z5)
        assert (G ** 3).degree == 3
        assert [s.name for s in (G * E).symbols()] == ['E1', 'G1']

    def test_coordinate_constant(self, dual_numbers):
        """[c0,c1] is a coordinate tuple."""
        P = parse_polynomial('[0,1]*G1', dual_numbers)
        (word, c), = P.terms.items()
        assert c.to_json() == [0, 1]

    @pytest.mark.parametrize('text', ['', 'E1 +', 'E1 ** 2', 'E1 $', 'G1^X1', '(E1', 'Z1[2,0]'])
    def test_syntax_errors(self, z5, text):
        """Malformed polynomials raise PolynomialSyntaxError."""
        with pytest.raises(PolynomialSyntaxError):
            parse_polynomial(text, z5, 2)

    def test_delta_of_symbol(self, params_z5, z5):
        """delta(G) = G (x) g."""
        H = taft_algebra(params_z5)
        terms = delta_T(ZPolynomial.symbol(z5, 'G1'), params_z5).items()
        assert len(terms) == 1
        word, h = terms[0]
        assert word == (ZSymbol.alias('G'),)
        assert h == H.g()

    def test_delta_coassociative(self, params_z5, z5):
        """The coaction of T is coassociative."""
        P = parse_polynomial('X1*G1 + 2*E1 + Z1[1,1]', z5, 2)
        assert delta_T_coassociative(P, params_z5)


class TestComoduleMaps:
    """Tests for the parametric comodule algebra maps."""

    def test_section_map(self, cleft_z5, z5):
        """Gamma sends G^N to u and X^N to a."""
        gamma = section_comodule_map(cleft_z5)
        assert gamma.triples[1] == (1, 1, 0)
        assert evaluate(parse_polynomial('G1^2', z5), gamma) == 2
        assert evaluate(parse_polynomial('X1^2', z5), gamma) == 3

    def test_from_triples(self, cleft_z5):
        """The triple family consists of comodule maps."""
        f = ComoduleMap.from_triples(cleft_z5, {1: (1, 2, 3)})
        assert f.is_comodule_map()
        assert str(f) == 'copy 1: (1,2,3)'
        assert f.to_dict() == {'1': [1, 2, 3]}

    def test_non_comodule_map(self, cleft_z5):
        """G -> v_x is not colinear."""
        f = ComoduleMap(cleft_z5, {ZSymbol.alias('G'): cleft_z5.v_x()})
        assert not f.is_comodule_map()

    def test_unassigned_symbol(self, cleft_z5, z5):
        """Evaluating a symbol the map does not assign fails."""
        with pytest.raises(ValueError):
            evaluate(parse_polynomial('G2', z5), section_comodule_map(cleft_z5))

    def test_family_size(self, cleft_z5):
        """|R|^(3 * copies)."""
        assert family_size(cleft_z5, alias_symbols(1)) == 125
        assert family_size(cleft_z5, alias_symbols(2)) == 5 ** 6

    def test_iteration_order(self, cleft_z5):
        """lambda varies slowest, xi fastest, in chunks."""
        chunks = list(iter_families(cleft_z5, alias_symbols(1), chunk_size=50))
        assert [offset for offset, _ in chunks] == [0, 50, 100]
        assert sum(family.size for _, family in chunks) == 125
        first = chunks[0][1]
        assert first.member(1).triples[1] == (0, 0, 1)
        assert first.member(5).triples[1] == (0, 1, 0)

    def test_enumerate(self, cleft_z5):
        """Every enumerated map is a comodule map."""
        maps = enumerate_comodule_maps(cleft_z5, alias_symbols(1))
        assert len(maps) == 125
        assert all(f.is_comodule_map() for f in maps[::17])

    def test_brute_force_matches_family(self, cleft_z5):
        """Direct solutions of the comodule condition give R v_g, R and v_x + R v_g."""
        B = cleft_z5
        G, E, X = (ZSymbol.alias(name) for name in 'GEX')
        assert len(brute_force_comodule_solutions(B, G)) == 5
        assert len(brute_force_comodule_solutions(B, E)) == 5
        solutions = brute_force_comodule_solutions(B, X, fixed={E: B.one()})
        assert len(solutions) == 5
        assert B.v_x() in solutions

    def test_brute_force_needs_fixed(self, cleft_z5):
        """X needs the image of E."""
        with pytest.raises(ValueError):
            brute_force_comodule_solutions(cleft_z5, ZSymbol.alias('X'))

    def test_solve_copy(self, cleft_z5):
        """E, G, X assignments are exactly the 125 triples."""
        assert len(solve_copy(cleft_z5, labels=[(0, 0), (1, 0), (0, 1)])) == 125

    def test_solve_copy_all_labels(self, cleft_z5):
        """Adding Z^(gx) adds one free scalar."""
        assert len(solve_copy(cleft_z5)) == 625

    def test_solve_copy_not_closed(self, cleft_z5):
        """Label sets must be closed under delta."""
        with pytest.raises(ValueError):
            solve_copy(cleft_z5, labels=[(0, 1)])


class TestSeparators:
    """Tests for P_a, Q_u and the identity checker."""

    def test_pa_is_identity(self, params_z5, cleft_z5):
        """P_a vanishes on B_(u,a)."""
        assert is_identity(build_Pa(params_z5, 3), cleft_z5)

    def test_pa_separates(self, params_z5, cleft_z5):
        """P_a' with a' != a has a witness."""
        P = build_Pa(params_z5, 1)
        witness = find_witness(P, cleft_z5)
        assert witness is not None
        assert not evaluate(P, witness).is_zero()

    def test_qu(self, params_z5, z5):
        """Q_u vanishes exactly when u'/u is a square."""
        Q = build_Qu(params_z5, 2, 4, 1)
        assert Q == parse_polynomial('4*G1 - G1^5', z5)
        assert is_identity(Q, cleft_extension(params_z5, CleftData.of(z5, 3, 0)))
        assert not is_identity(Q, cleft_extension(params_z5, CleftData.of(z5, 1, 0)))

    def test_qu_validation(self, params_z5):
        """alpha must be a multiple of N and beta positive."""
        with pytest.raises(ValueError):
            build_Qu(params_z5, 2, 3, 1)
        with pytest.raises(ValueError):
            build_Qu(params_z5, 2, 4, 0)

    def test_pa_n3(self, params_z7, z7):
        """P_a over Z/7 with N=3."""
        B = cleft_extension(params_z7, CleftData.of(z7, 3, 5))
        assert is_identity(build_Pa(params_z7, 5), B)
        assert not is_identity(build_Pa(params_z7, 4), B)

    def test_constant_polynomial(self, cleft_z5, z5):
        """A nonzero constant is never an identity."""
        assert not is_identity(ZPolynomial.constant(z5, 1), cleft_z5)


class TestFingerprints:
    """Tests for truncated identity modules."""

    def test_contains(self, cleft_z5, z5):
        """Scalars commute with everything; G^2 - E^2 is not an identity."""
        fp = fingerprint(cleft_z5, 2)
        assert fp.contains(parse_polynomial('E1*G1 - G1*E1', z5))
        assert fp.contains(parse_polynomial('E1*X1 - X1*E1', z5))
        assert not fp.contains(parse_polynomial('G1^2 - E1^2', z5))
        assert all(fp.contains(P) for P in fp.polynomials())

    def test_isomorphic_algebras_share_fingerprints(self, params_z5, z5):
        """B_(2,3) and B_(3,3) are isomorphic, so their fingerprints agree."""
        first = fingerprint(cleft_extension(params_z5, CleftData.of(z5, 2, 3)), 2)
        second = fingerprint(cleft_extension(params_z5, CleftData.of(z5, 3, 3)), 2)
        assert first == second
        assert first.digest == second.digest

    def test_size_is_power_of_order(self, cleft_z5):
        """Over a field the module has |R|^rank elements."""
        fp = fingerprint(cleft_z5, 1)
        assert fp.size == 5 ** len(fp.rows)

    def test_word_outside_truncation(self, cleft_z5, z5):
        """Words longer than D cannot be tested."""
        fp = fingerprint(cleft_z5, 1)
        with pytest.raises(ValueError):
            fp.contains(parse_polynomial('G1^2', z5))

    def test_budget(self, cleft_z5):
        """Too many words raise BudgetExceededError."""
        with pytest.raises(BudgetExceededError):
            fingerprint(cleft_z5, 3, settings=Settings(max_fingerprint_words=10))

    def test_to_dict(self, cleft_z5):
        """Serialised fingerprints carry the digest."""
        data = fingerprint(cleft_z5, 1).to_dict()
        assert data['symbols'] == ['E1', 'G1', 'X1']
        assert len(data['digest']) == 64

    def test_map_budget(self, cleft_z5):
        """Too many comodule maps raise BudgetExceededError."""
        with pytest.raises(BudgetExceededError, match='max_fingerprint_maps'):
            fingerprint(cleft_z5, 1, settings=Settings(max_fingerprint_maps=100))

    def test_fits(self, z5):
        """Z/5 at D=5 fits both budgets: 364 words, 125 maps."""
        assert fingerprint_fits(z5, 5)
        assert not fingerprint_fits(z5, 5, settings=Settings(max_fingerprint_maps=124))
        assert not fingerprint_fits(z5, 6)

    def test_product_ring_exceeds_map_budget(self):
        """Z/5 x Z/5 has 364 words at D=5 but 15625 maps, so no full fingerprint."""
        ring = parse_ring_spec('Z/5 x Z/5')
        assert word_count(3, 5) <= Settings().max_fingerprint_words
        assert not fingerprint_fits(ring, 5)


class TestFormalExpansion:
    """Tests for f(P) as a polynomial in (lambda, mu, xi)."""

    def test_pa_expands_to_zero(self, params_z5, cleft_z5):
        """Every coefficient of f(P_a) vanishes on B_(u,a,0)."""
        assert formal_expansion(build_Pa(params_z5, 3), cleft_z5) == {}

    def test_qu_is_not_formally_zero(self, params_z5, z5):
        """f(Q_u) = u^k (1 - mu^alpha) mu^beta v_g^beta vanishes only as a function."""
        B = cleft_extension(params_z5, CleftData.of(z5, 3, 0))
        Q = build_Qu(params_z5, 3, 4, 1)
        expansion = formal_expansion(Q, B)
        assert set(expansion) == {(0, 1, 0), (0, 5, 0)}
        assert is_identity(Q, B)

    def test_constant(self, cleft_z5, z5):
        """A constant expands to itself."""
        expansion = formal_expansion(ZPolynomial.constant(z5, 2), cleft_z5)
        assert list(expansion) == [()]
        assert (expansion[()] == (cleft_z5.one() * 2).coeffs).all()

    def test_skew_term_breaks_pa(self, params_z5, cleft_z5_b):
        """With b != 0 the commutator part of P_a survives."""
        assert formal_expansion(build_Pa(params_z5, 0), cleft_z5_b)

    def test_matches_evaluation(self, params_z5, cleft_z5, z5):
        """Substituting a triple into the expansion gives f(P)."""
        P = parse_polynomial('X1*G1 + 2*E1*X1^2', z5)
        expansion = formal_expansion(P, cleft_z5)
        lam, mu, xi = 2, 3, 4
        f = ComoduleMap.from_triples(cleft_z5, {1: (lam, mu, xi)})
        total = sum(value * (lam ** e[0] * mu ** e[1] * xi ** e[2]) for e, value in expansion.items()) % 5
        assert (total == evaluate(P, f).coeffs).all()


class TestIdentitiesOverLargerRings:
    """Separator identities where |R|^3 maps would be costly."""

    @pytest.fixture
    def params_z25(self):
        return TaftParams.of(parse_ring_spec('Z/25'), 2, -1)

    def test_pa(self, params_z25):
        """P_a is an identity of B_(u,a) over Z/25."""
        ring = params_z25.ring
        B = cleft_extension(params_z25, CleftData.of(ring, 7, 10))
        assert is_identity(build_Pa(params_z25, 10), B)
        assert not is_identity(build_Pa(params_z25, 11), B)

    def test_qu(self, params_z25):
        """alpha = 20, beta = 2: Q_u holds on B_(u,a) and fails for u = 1 on B_(2,0)."""
        ring = params_z25.ring
        B = cleft_extension(params_z25, CleftData.of(ring, 2, 0))
        assert is_identity(build_Qu(params_z25, 2, 20, 2), B)
        assert not is_identity(build_Qu(params_z25, 1, 20, 2), B)
