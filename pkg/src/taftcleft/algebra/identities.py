"""
Polynomial H-identities of cleft extensions.

Polynomials live in the free algebra T on symbols Z_i^h (copy i, basis
label h = g^m x^n of H). A comodule algebra map f: T -> B_d is fixed by the
images of the symbols; on the symbols E_i, G_i, X_i every such map is
f(E) = lambda, f(G) = mu v_g, f(X) = lambda v_x + xi v_g for a triple
(lambda, mu, xi) in R^3.

Evaluation is batched: a MapFamily holds the images of every symbol under
many maps at once, shape (maps, rank, d), and a polynomial is evaluated
under the whole family with one multiplication per distinct word prefix.
"""

import hashlib
import itertools
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from taftcleft.algebra.cleft import CleftElement, CleftExtension
from taftcleft.algebra.linalg import RLinearMap, howell_form, span_size
from taftcleft.algebra.ring import FiniteRing, RingElement
from taftcleft.algebra.structure import matrix_from_images
from taftcleft.algebra.taft import TaftElement, TaftParams, taft_algebra
from taftcleft.errors import BudgetExceededError, PolynomialSyntaxError
from taftcleft.settings import Settings
from taftcleft.utils.constants import SYMBOL_ALIASES

logger = logging.getLogger(__name__)

_ALIAS_OF_LABEL = {label: name for name, label in SYMBOL_ALIASES.items()}
_ALIAS_RANK = {'E': 0, 'G': 1, 'X': 2}


# ----------------------------------------------------------------------
# Symbols and words
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ZSymbol:
    """
    The generator Z_copy^(g^m x^n) of T.

    Attributes:
        copy: Copy index, >= 1
        m: Power of g in the label
        n: Power of x in the label
    """

    copy: int
    m: int
    n: int

    def __post_init__(self):
        if self.copy < 1 or self.m < 0 or self.n < 0:
            raise ValueError(f"Invalid symbol Z{self.copy}[{self.m},{self.n}]")

    @classmethod
    def alias(cls, name: str, copy: int = 1) -> 'ZSymbol':
        m, n = SYMBOL_ALIASES[name]
        return cls(copy, m, n)

    @classmethod
    def parse(cls, text: str) -> 'ZSymbol':
        match = re.fullmatch(r'([EGX])(\d*)', text.strip())
        if match:
            return cls.alias(match.group(1), int(match.group(2) or 1))
        match = re.fullmatch(r'Z(\d+)\[\s*(\d+)\s*,\s*(\d+)\s*\]', text.strip())
        if match:
            return cls(int(match.group(1)), int(match.group(2)), int(match.group(3)))
        raise PolynomialSyntaxError(f"Unknown symbol '{text}'")

    @property
    def label(self) -> Tuple[int, int]:
        return self.m, self.n

    @property
    def alias_name(self) -> Optional[str]:
        return _ALIAS_OF_LABEL.get(self.label)

    @property
    def name(self) -> str:
        alias = self.alias_name
        return f"{alias}{self.copy}" if alias else f"Z{self.copy}[{self.m},{self.n}]"

    @property
    def sort_key(self) -> Tuple[int, int, int, int]:
        alias = self.alias_name
        rank = _ALIAS_RANK[alias] if alias else 3
        return self.copy, rank, self.m, self.n

    def __lt__(self, other: 'ZSymbol') -> bool:
        return self.sort_key < other.sort_key

    def check_label(self, N: int) -> None:
        if self.m >= N or self.n >= N:
            raise ValueError(f"Symbol {self.name} has a label outside the basis for N={N}")

    def __str__(self) -> str:
        return self.name


Word = Tuple[ZSymbol, ...]


def word_key(word: Word):
    """Canonical order: by length, then symbol by symbol."""
    return len(word), tuple(s.sort_key for s in word)


def word_text(word: Word) -> str:
    if not word:
        return '1'
    parts = []
    for sym, run in itertools.groupby(word):
        count = len(list(run))
        parts.append(sym.name if count == 1 else f"{sym.name}^{count}")
    return '*'.join(parts)


def alias_symbols(width: int = 1) -> Tuple[ZSymbol, ...]:
    """E_i, G_i, X_i for i = 1..width, in canonical order."""
    return tuple(ZSymbol.alias(name, copy) for copy in range(1, width + 1) for name in 'EGX')


def canonical_words(symbols: Sequence[ZSymbol], degree: int) -> List[Word]:
    """Every word of length <= degree over the symbols, in canonical order."""
    ordered = sorted(symbols)
    return [w for length in range(degree + 1) for w in itertools.product(ordered, repeat=length)]


def word_count(symbol_count: int, degree: int) -> int:
    return sum(symbol_count ** length for length in range(degree + 1))


# ----------------------------------------------------------------------
# Polynomials
# ----------------------------------------------------------------------

class ZPolynomial:
    """
    A finite sum of R-multiples of words in T.

    Attributes:
        ring: Coefficient ring
        terms: Nonzero coefficient of every word
    """

    __slots__ = ('ring', 'terms')

    def __init__(self, ring: FiniteRing, terms: Optional[Mapping[Word, RingElement]] = None):
        self.ring = ring
        self.terms: Dict[Word, RingElement] = {}
        for w, c in (terms or {}).items():
            c = ring.element(c)
            if not c.is_zero():
                self.terms[tuple(w)] = c

    @classmethod
    def constant(cls, ring: FiniteRing, c) -> 'ZPolynomial':
        return cls(ring, {(): ring.element(c)})

    @classmethod
    def symbol(cls, ring: FiniteRing, sym: Union[ZSymbol, str]) -> 'ZPolynomial':
        if isinstance(sym, str):
            sym = ZSymbol.parse(sym)
        return cls(ring, {(sym,): ring.one()})

    def _coerce(self, other) -> 'ZPolynomial':
        if isinstance(other, ZPolynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("Polynomials over different rings")
            return other
        if isinstance(other, (RingElement, int, np.integer)):
            return ZPolynomial.constant(self.ring, other)
        raise TypeError(f"Cannot combine ZPolynomial with {type(other).__name__}")

    def __add__(self, other) -> 'ZPolynomial':
        other = self._coerce(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms[w] + c if w in terms else c
        return ZPolynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> 'ZPolynomial':
        return ZPolynomial(self.ring, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> 'ZPolynomial':
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> 'ZPolynomial':
        return self._coerce(other) - self

    def __mul__(self, other) -> 'ZPolynomial':
        other = self._coerce(other)
        terms: Dict[Word, RingElement] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                terms[w] = terms[w] + c if w in terms else c
        return ZPolynomial(self.ring, terms)

    def __rmul__(self, other) -> 'ZPolynomial':
        return self._coerce(other) * self

    def __pow__(self, exponent: int) -> 'ZPolynomial':
        if exponent < 0:
            raise ValueError("Negative powers are not defined in T")
        result = ZPolynomial.constant(self.ring, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZPolynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def symbols(self) -> Tuple[ZSymbol, ...]:
        return tuple(sorted({s for w in self.terms for s in w}))

    def sorted_terms(self) -> List[Tuple[Word, RingElement]]:
        return sorted(self.terms.items(), key=lambda item: word_key(item[0]))

    def to_text(self) -> str:
        """ASCII form accepted by parse_polynomial."""
        parts = []
        for word, c in self.sorted_terms():
            coeff = _coefficient_text(c)
            if not word:
                parts.append(coeff)
            elif c == 1:
                parts.append(word_text(word))
            else:
                parts.append(f"{coeff}*{word_text(word)}")
        return ' + '.join(parts) if parts else '0'

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"ZPolynomial({self.to_text()!r})"


def _coefficient_text(c: RingElement) -> str:
    coords = c.coords
    if c.ring.dim == 1:
        return str(int(coords[0]))
    return '[' + ','.join(str(int(v)) for v in coords) + ']'


_TOKEN = re.compile(
    r'\s*(?:(?P<zsym>Z\d+\[\s*\d+\s*,\s*\d+\s*\])'
    r'|(?P<sym>[EGX]\d*)'
    r'|(?P<coord>\[\s*\d+(?:\s*,\s*\d+)*\s*\])'
    r'|(?P<int>\d+)'
    r'|(?P<op>[-+*^()]))'
)


class _PolynomialParser:
    """Recursive descent over + - * ^ and parentheses."""

    def __init__(self, text: str, ring: FiniteRing, N: Optional[int]):
        self.text = text
        self.ring = ring
        self.N = N
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> List[Tuple[str, str]]:
        tokens, pos = [], 0
        stripped = text.rstrip()
        while pos < len(stripped):
            match = _TOKEN.match(stripped, pos)
            if not match or match.end() == pos:
                raise PolynomialSyntaxError(f"Unexpected character in '{text}' at position {pos}")
            kind = match.lastgroup
            tokens.append((kind, match.group(kind)))
            pos = match.end()
        return tokens

    def _peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self, value: Optional[str] = None) -> Tuple[str, str]:
        token = self._peek()
        if token is None or (value is not None and token[1] != value):
            raise PolynomialSyntaxError(f"Expected '{value or 'term'}' in '{self.text}'")
        self.pos += 1
        return token

    def parse(self) -> ZPolynomial:
        if not self.tokens:
            raise PolynomialSyntaxError("Empty polynomial")
        result = self._expr()
        if self._peek() is not None:
            raise PolynomialSyntaxError(f"Trailing input '{self._peek()[1]}' in '{self.text}'")
        return result

    def _expr(self) -> ZPolynomial:
        result = self._term()
        while self._peek() in (('op', '+'), ('op', '-')):
            op = self._take()[1]
            rhs = self._term()
            result = result + rhs if op == '+' else result - rhs
        return result

    def _term(self) -> ZPolynomial:
        result = self._unary()
        while self._peek() == ('op', '*'):
            self._take('*')
            result = result * self._unary()
        return result

    def _unary(self) -> ZPolynomial:
        if self._peek() == ('op', '-'):
            self._take('-')
            return -self._unary()
        return self._power()

    def _power(self) -> ZPolynomial:
        base = self._atom()
        if self._peek() == ('op', '^'):
            self._take('^')
            kind, value = self._take()
            if kind != 'int':
                raise PolynomialSyntaxError(f"Exponent must be an integer in '{self.text}'")
            return base ** int(value)
        return base

    def _atom(self) -> ZPolynomial:
        kind, value = self._take()
        if kind == 'int':
            return ZPolynomial.constant(self.ring, int(value))
        if kind == 'coord':
            coords = [int(v) for v in value.strip('[] ').split(',')]
            try:
                return ZPolynomial.constant(self.ring, self.ring.element(coords))
            except ValueError as exc:
                raise PolynomialSyntaxError(str(exc)) from exc
        if kind in ('sym', 'zsym'):
            sym = ZSymbol.parse(value)
            if self.N is not None:
                try:
                    sym.check_label(self.N)
                except ValueError as exc:
                    raise PolynomialSyntaxError(str(exc)) from exc
            return ZPolynomial.symbol(self.ring, sym)
        if value == '(':
            inner = self._expr()
            self._take(')')
            return inner
        raise PolynomialSyntaxError(f"Unexpected '{value}' in '{self.text}'")


def parse_polynomial(text: str, ring: FiniteRing, N: Optional[int] = None) -> ZPolynomial:
    """
    Parse text such as ``(X1*G1 - 4*G1*X1)^2 - 4*G1^2*X1^2``.

    Integers denote multiples of 1, ``[c0,c1]`` a coordinate tuple, and
    ``E1``, ``G1``, ``X1`` or ``Z1[m,n]`` the symbols.

    Raises:
        PolynomialSyntaxError: On malformed input
    """
    return _PolynomialParser(text, ring, N).parse()


# ----------------------------------------------------------------------
# The coaction of T
# ----------------------------------------------------------------------

class TensorPolynomial:
    """An element sum_w w (x) h_w of T (x) H."""

    __slots__ = ('taft', 'terms')

    def __init__(self, taft, terms: Mapping[Word, np.ndarray]):
        self.taft = taft
        reduced = {w: np.asarray(h) % taft.ring.mod for w, h in terms.items()}
        self.terms = {w: h for w, h in reduced.items() if h.any()}

    def __add__(self, other: 'TensorPolynomial') -> 'TensorPolynomial':
        terms = dict(self.terms)
        for w, h in other.terms.items():
            terms[w] = terms[w] + h if w in terms else h
        return TensorPolynomial(self.taft, terms)

    def __mul__(self, other: 'TensorPolynomial') -> 'TensorPolynomial':
        terms: Dict[Word, np.ndarray] = {}
        for w1, h1 in self.terms.items():
            for w2, h2 in other.terms.items():
                h = self.taft.multiply(h1, h2)
                w = w1 + w2
                terms[w] = terms[w] + h if w in terms else h
        return TensorPolynomial(self.taft, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorPolynomial):
            return NotImplemented
        return self.terms.keys() == other.terms.keys() and all(
            np.array_equal(h, other.terms[w]) for w, h in self.terms.items()
        )

    __hash__ = None

    def items(self) -> List[Tuple[Word, TaftElement]]:
        return [(w, self.taft.element(self.terms[w])) for w in sorted(self.terms, key=word_key)]

    def __str__(self) -> str:
        parts = [f"{word_text(w)} (x) ({h})" for w, h in self.items()]
        return ' + '.join(parts) if parts else '0'


def _delta_symbol(sym: ZSymbol, params: TaftParams) -> TensorPolynomial:
    """delta(Z^h) = sum Z^(h_1) (x) h_2."""
    H = taft_algebra(params)
    sym.check_label(params.N)
    r, d = H.rank, H.ring.dim
    p = H.label_index[sym.label]
    D3 = H.delta_matrix.reshape(r, r, r, d)
    terms = {(ZSymbol(sym.copy, *H.labels[s]),): D3[s, :, p] for s in range(r)}
    return TensorPolynomial(H, terms)


def delta_T(P: ZPolynomial, params: TaftParams) -> TensorPolynomial:
    """The algebra-map extension of delta to T."""
    H = taft_algebra(params)
    cache = {s: _delta_symbol(s, params) for s in P.symbols()}
    total = TensorPolynomial(H, {})
    for word, c in P.terms.items():
        acc = TensorPolynomial(H, {(): H.scale(c.coords, H.unit)})
        for sym in word:
            acc = acc * cache[sym]
        total = total + acc
    return total


def delta_T_coassociative(P: ZPolynomial, params: TaftParams) -> bool:
    """(delta (x) id) delta(P) = (id (x) Delta) delta(P)."""
    H = taft_algebra(params)
    HH = H.tensor_square
    left: Dict[Word, np.ndarray] = {}
    right: Dict[Word, np.ndarray] = {}
    for word, h in delta_T(P, params).terms.items():
        right[word] = (right.get(word, 0) + H.delta(H.element(h)).coeffs) % H.ring.mod
        inner = delta_T(ZPolynomial(P.ring, {word: P.ring.one()}), params)
        for w2, h2 in inner.terms.items():
            left[w2] = (left.get(w2, 0) + HH.pure(h2, h)) % H.ring.mod
    left = {w: v for w, v in left.items() if v.any()}
    right = {w: v for w, v in right.items() if v.any()}
    return left.keys() == right.keys() and all(np.array_equal(v, right[w]) for w, v in left.items())


# ----------------------------------------------------------------------
# Comodule algebra maps
# ----------------------------------------------------------------------

Triple = Tuple[RingElement, RingElement, RingElement]


class ComoduleMap:
    """
    A comodule algebra map T -> B_d, given on a finite set of symbols.

    Attributes:
        cleft: Target algebra
        images: Image of every declared symbol
        triples: (lambda, mu, xi) per copy when built from the parametric family
    """

    def __init__(self, cleft: CleftExtension, images: Mapping[ZSymbol, CleftElement],
                 triples: Optional[Mapping[int, Triple]] = None):
        self.cleft = cleft
        self.images = dict(images)
        self.triples = dict(triples) if triples is not None else None

    @classmethod
    def from_triples(cls, cleft: CleftExtension, triples: Mapping[int, Sequence]) -> 'ComoduleMap':
        """f(E_i) = lambda, f(G_i) = mu v_g, f(X_i) = lambda v_x + xi v_g."""
        ring = cleft.ring
        images: Dict[ZSymbol, CleftElement] = {}
        normalized: Dict[int, Triple] = {}
        for copy, (lam, mu, xi) in sorted(triples.items()):
            lam, mu, xi = ring.element(lam), ring.element(mu), ring.element(xi)
            normalized[copy] = (lam, mu, xi)
            images[ZSymbol.alias('E', copy)] = cleft.one() * lam
            images[ZSymbol.alias('G', copy)] = cleft.v_g() * mu
            images[ZSymbol.alias('X', copy)] = cleft.v_x() * lam + cleft.v_g() * xi
        return cls(cleft, images, normalized)

    def image(self, sym: ZSymbol) -> CleftElement:
        if sym not in self.images:
            raise ValueError(f"Symbol {sym} is not assigned by this map")
        return self.images[sym]

    def is_comodule_map(self) -> bool:
        """rho(f(Z)) = (f (x) id)(delta Z) for every declared symbol."""
        BH = self.cleft.tensor_h
        for sym, value in self.images.items():
            expected = np.zeros((BH.rank, BH.ring.dim), dtype=np.int64)
            for (inner,), h in _delta_symbol(sym, self.cleft.params).terms.items():
                expected = expected + BH.pure(self.image(inner).coeffs, h)
            if not np.array_equal(self.cleft.coaction(value).coeffs, expected % BH.ring.mod):
                return False
        return True

    def evaluate(self, P: ZPolynomial) -> CleftElement:
        return evaluate(P, self)

    def to_dict(self) -> Dict:
        if self.triples is not None:
            return {str(copy): [c.to_json() for c in t] for copy, t in self.triples.items()}
        return {sym.name: value.to_json() for sym, value in sorted(self.images.items())}

    def __str__(self) -> str:
        if self.triples is not None:
            return ' '.join(f"copy {copy}: ({t[0]},{t[1]},{t[2]})" for copy, t in self.triples.items())
        return ', '.join(f"{sym} -> {value}" for sym, value in sorted(self.images.items()))


@dataclass
class MapFamily:
    """
    Images of the declared symbols under many comodule maps at once.

    Attributes:
        cleft: Target algebra
        images: Per symbol, coordinates of shape (maps, rank, d)
        triples: Ring indices of (lambda, mu, xi) per copy, shape
            (maps, copies, 3), when the family is parametric
        copies: Copy indices in triple order
    """

    cleft: CleftExtension
    images: Dict[ZSymbol, np.ndarray]
    triples: Optional[np.ndarray] = None
    copies: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def size(self) -> int:
        return len(next(iter(self.images.values()))) if self.images else 1

    def member(self, i: int) -> ComoduleMap:
        """The i-th map of the family."""
        if self.triples is not None:
            ring = self.cleft.ring
            return ComoduleMap.from_triples(self.cleft, {
                copy: tuple(ring.from_index(int(v)) for v in self.triples[i, k])
                for k, copy in enumerate(self.copies)
            })
        return ComoduleMap(self.cleft, {s: self.cleft.element(v[i]) for s, v in self.images.items()})


def _copies_of(symbols: Sequence[ZSymbol]) -> Tuple[int, ...]:
    for sym in symbols:
        if sym.alias_name is None:
            raise ValueError(
                f"Symbol {sym} is outside E/G/X; use brute_force_comodule_solutions for general labels"
            )
    return tuple(sorted({s.copy for s in symbols}))


def family_from_triples(cleft: CleftExtension, copies: Sequence[int], triples: np.ndarray) -> MapFamily:
    """Parametric family for triples of ring indices, shape (maps, len(copies), 3)."""
    ring = cleft.ring
    triples = np.asarray(triples, dtype=np.int64).reshape(-1, len(copies), 3)
    images: Dict[ZSymbol, np.ndarray] = {}
    for k, copy in enumerate(copies):
        lam, mu, xi = (ring.coords(triples[:, k, j]) for j in range(3))
        images[ZSymbol.alias('E', copy)] = cleft.scale(lam, cleft.unit)
        images[ZSymbol.alias('G', copy)] = cleft.scale(mu, cleft.v_g().coeffs)
        images[ZSymbol.alias('X', copy)] = (
            cleft.scale(lam, cleft.v_x().coeffs) + cleft.scale(xi, cleft.v_g().coeffs)
        ) % ring.mod
    return MapFamily(cleft, images, triples, tuple(copies))


def family_size(cleft: CleftExtension, symbols: Sequence[ZSymbol]) -> int:
    return cleft.ring.order ** (3 * len(_copies_of(symbols)))


def iter_families(cleft: CleftExtension, symbols: Sequence[ZSymbol],
                  chunk_size: Optional[int] = None) -> Iterator[Tuple[int, MapFamily]]:
    """
    The whole parametric family in canonical order, in chunks.

    Yields:
        (offset, family) pairs; lambda_1 varies slowest and xi_w fastest
    """
    ring = cleft.ring
    ring.require_enumerable('comodule map enumeration')
    copies = _copies_of(symbols)
    chunk = chunk_size or ring.settings.chunk_size
    total = family_size(cleft, symbols)
    shape = (ring.order,) * (3 * len(copies))
    for start in range(0, total, chunk):
        flat = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = np.stack(np.unravel_index(flat, shape), axis=-1)
        yield start, family_from_triples(cleft, copies, digits)


def enumerate_comodule_maps(cleft: CleftExtension, symbols: Sequence[ZSymbol]) -> List[ComoduleMap]:
    """Every comodule algebra map on the declared E/G/X symbols, in canonical order."""
    maps: List[ComoduleMap] = []
    for _, family in iter_families(cleft, symbols):
        maps.extend(family.member(i) for i in range(family.size))
    return maps


def section_comodule_map(cleft: CleftExtension, copy: int = 1) -> ComoduleMap:
    """Gamma: E -> 1, G -> v_g, X -> v_x."""
    return ComoduleMap.from_triples(cleft, {copy: (1, 1, 0)})


# ----------------------------------------------------------------------
# Evaluation
# ----------------------------------------------------------------------

def _word_images(words: Sequence[Word], family: MapFamily) -> Dict[Word, np.ndarray]:
    """Images of the words and all their prefixes under every map of the family."""
    cleft = family.cleft
    cache: Dict[Word, np.ndarray] = {(): np.broadcast_to(cleft.unit, (family.size,) + cleft.unit.shape)}
    for word in words:
        for i in range(1, len(word) + 1):
            prefix = word[:i]
            if prefix in cache:
                continue
            sym = prefix[-1]
            if sym not in family.images:
                raise ValueError(f"Symbol {sym} is not assigned by the map family")
            cache[prefix] = cleft.multiply(cache[prefix[:-1]], family.images[sym])
    return cache


def evaluate_many(P: ZPolynomial, family: MapFamily) -> np.ndarray:
    """f(P) for every map f of the family, shape (maps, rank, d)."""
    cleft = family.cleft
    terms = P.sorted_terms()
    images = _word_images([w for w, _ in terms], family)
    out = np.zeros((family.size, cleft.rank, cleft.ring.dim), dtype=np.int64)
    for word, c in terms:
        out += cleft.scale(c.coords, images[word])
    return out % cleft.ring.mod


def evaluate(P: ZPolynomial, f: ComoduleMap) -> CleftElement:
    """Substitute f into P and multiply out in B_d."""
    for sym in P.symbols():
        f.image(sym)
    family = MapFamily(f.cleft, {s: v.coeffs[None] for s, v in f.images.items()})
    return f.cleft.element(evaluate_many(P, family)[0])


def find_witness(P: ZPolynomial, cleft: CleftExtension,
                 chunk_size: Optional[int] = None) -> Optional[ComoduleMap]:
    """The first map (canonical order) with f(P) != 0, or None."""
    symbols = P.symbols() or (ZSymbol.alias('E'),)
    for offset, family in iter_families(cleft, symbols, chunk_size):
        values = evaluate_many(P, family)
        nonzero = np.nonzero(values.reshape(family.size, -1).any(axis=1))[0]
        if nonzero.size:
            logger.debug("Witness for %s found at map %d", P, offset + int(nonzero[0]))
            return family.member(int(nonzero[0]))
    return None


Monomial = Tuple[int, ...]


def _parameter_monomial(count: int, k: int, j: int) -> Monomial:
    exponents = [0] * (3 * count)
    exponents[3 * k + j] = 1
    return tuple(exponents)


def _formal_product(cleft: CleftExtension, x: Dict[Monomial, np.ndarray],
                    y: Dict[Monomial, np.ndarray]) -> Dict[Monomial, np.ndarray]:
    out: Dict[Monomial, np.ndarray] = {}
    for kx, vx in x.items():
        for ky, vy in y.items():
            key = tuple(a + b for a, b in zip(kx, ky))
            out[key] = (out.get(key, 0) + cleft.multiply(vx, vy)) % cleft.ring.mod
    return out


def formal_expansion(P: ZPolynomial, cleft: CleftExtension) -> Dict[Monomial, np.ndarray]:
    """
    f(P) as a polynomial in the map parameters, with coefficients in B_d.

    Keys are exponent vectors over (lambda_i, mu_i, xi_i) for the copies of
    P in increasing order; only nonzero coefficients are kept. An empty
    result means f(P) = 0 for every map of the parametric family.
    """
    copies = _copies_of(P.symbols())
    position = {copy: k for k, copy in enumerate(copies)}
    count = len(copies)
    unit = cleft.unit[None]
    v_g, v_x = cleft.v_g().coeffs[None], cleft.v_x().coeffs[None]
    images: Dict[ZSymbol, Dict[Monomial, np.ndarray]] = {}
    for sym in P.symbols():
        k = position[sym.copy]
        if sym.alias_name == 'E':
            images[sym] = {_parameter_monomial(count, k, 0): unit}
        elif sym.alias_name == 'G':
            images[sym] = {_parameter_monomial(count, k, 1): v_g}
        else:
            images[sym] = {_parameter_monomial(count, k, 0): v_x, _parameter_monomial(count, k, 2): v_g}

    cache: Dict[Word, Dict[Monomial, np.ndarray]] = {(): {(0,) * (3 * count): unit}}
    total: Dict[Monomial, np.ndarray] = {}
    for word, c in P.sorted_terms():
        for i in range(1, len(word) + 1):
            if word[:i] not in cache:
                cache[word[:i]] = _formal_product(cleft, cache[word[:i - 1]], images[word[i - 1]])
        for key, value in cache[word].items():
            total[key] = (total.get(key, 0) + cleft.scale(c.coords, value)) % cleft.ring.mod
    return {key: value[0] for key, value in total.items() if value.any()}


def _occurring_families(P: ZPolynomial, cleft: CleftExtension,
                        chunk_size: Optional[int] = None) -> Iterator[MapFamily]:
    """Maps that vary only the parameters P depends on; the others stay at index 0."""
    ring = cleft.ring
    ring.require_enumerable('comodule map enumeration')
    symbols = P.symbols() or (ZSymbol.alias('E'),)
    copies = _copies_of(symbols)
    position = {copy: k for k, copy in enumerate(copies)}
    # (copy position, parameter) with lambda = 0, mu = 1, xi = 2
    used = set()
    for sym in symbols:
        k = position[sym.copy]
        if sym.alias_name in ('E', 'X'):
            used.add((k, 0))
        if sym.alias_name == 'G':
            used.add((k, 1))
        if sym.alias_name == 'X':
            used.add((k, 2))
    free = sorted(used)
    total = ring.order ** len(free)
    chunk = chunk_size or ring.settings.chunk_size
    for start in range(0, total, chunk):
        flat = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = np.unravel_index(flat, (ring.order,) * len(free))
        triples = np.zeros((len(flat), len(copies), 3), dtype=np.int64)
        for (k, j), column in zip(free, digits):
            triples[:, k, j] = column
        yield family_from_triples(cleft, copies, triples)


def is_identity(P: ZPolynomial, cleft: CleftExtension, chunk_size: Optional[int] = None) -> bool:
    """
    Whether f(P) = 0 for every comodule algebra map f.

    A vanishing formal expansion settles it at once; otherwise P is
    evaluated under every assignment of the parameters it depends on.
    """
    if not formal_expansion(P, cleft):
        return True
    for family in _occurring_families(P, cleft, chunk_size):
        if evaluate_many(P, family).any():
            return False
    return True


# ----------------------------------------------------------------------
# Separating identities
# ----------------------------------------------------------------------

def build_Pa(params: TaftParams, a, copy: int = 1) -> ZPolynomial:
    """(XG - qGX)^N - (1-q)^N G^N X^N + (1-q)^N a E^N G^N."""
    ring, N, q = params.ring, params.N, params.q
    a = ring.element(a)
    E, G, X = (ZPolynomial.symbol(ring, ZSymbol.alias(name, copy)) for name in 'EGX')
    c = (1 - q) ** N
    return (X * G - q * (G * X)) ** N - c * (G ** N * X ** N) + (c * a) * (E ** N * G ** N)


def build_Qu(params: TaftParams, u, alpha: int, beta: int, k: Optional[int] = None,
             copy: int = 1) -> ZPolynomial:
    """u^k G^beta - G^(alpha + beta), with alpha = k N."""
    if alpha % params.N:
        raise ValueError(f"alpha={alpha} is not divisible by N={params.N}")
    if k is None:
        k = alpha // params.N
    elif k * params.N != alpha:
        raise ValueError(f"alpha={alpha} != k*N = {k * params.N}")
    if beta < 1:
        raise ValueError(f"beta must be >= 1, got {beta}")
    ring = params.ring
    G = ZPolynomial.symbol(ring, ZSymbol.alias('G', copy))
    return ring.element(u) ** k * G ** beta - G ** (alpha + beta)


# ----------------------------------------------------------------------
# Direct solution of the comodule condition
# ----------------------------------------------------------------------

def _delta_columns(cleft: CleftExtension, label: Tuple[int, int]) -> List[Tuple[Tuple[int, int], np.ndarray]]:
    """The nonzero (h_1 label, h_2) pairs of Delta(g^m x^n)."""
    H = cleft.taft
    r, d = H.rank, H.ring.dim
    p = H.label_index[label]
    D3 = H.delta_matrix.reshape(r, r, r, d)
    return [(H.labels[s], D3[s, :, p]) for s in range(r) if D3[s, :, p].any()]


def _sorted_elements(cleft: CleftExtension, vectors: np.ndarray) -> List[CleftElement]:
    keyed = sorted((tuple(np.atleast_1d(cleft.ring.index(v)).tolist()), i) for i, v in enumerate(vectors))
    return [cleft.element(vectors[i]) for _, i in keyed]


def brute_force_comodule_solutions(
    cleft: CleftExtension,
    symbol: ZSymbol,
    fixed: Optional[Mapping[ZSymbol, CleftElement]] = None,
) -> List[CleftElement]:
    """
    Every v in B_d with rho(v) = (f (x) id)(delta Z) when f(Z) = v.

    Images of the other symbols occurring in delta(Z) come from ``fixed``.

    Raises:
        ValueError: If delta(Z) involves a symbol missing from ``fixed``
    """
    symbol.check_label(cleft.params.N)
    fixed = dict(fixed or {})
    BH = cleft.tensor_h
    ring = cleft.ring
    basis = cleft.basis_coords()
    system = cleft.coaction_matrix.copy()
    rhs = np.zeros((BH.rank, ring.dim), dtype=np.int64)
    for label, h in _delta_columns(cleft, symbol.label):
        if label == symbol.label:
            system = system - matrix_from_images(BH.pure(basis, h))
            continue
        other = ZSymbol(symbol.copy, *label)
        if other not in fixed:
            raise ValueError(f"delta({symbol}) involves {other}; pass its image in fixed")
        rhs = rhs + BH.pure(fixed[other].coeffs, h)
    solutions = RLinearMap(ring, system).solution_set(rhs % ring.mod)
    return _sorted_elements(cleft, solutions)


def solve_copy(cleft: CleftExtension, copy: int = 1,
               labels: Optional[Sequence[Tuple[int, int]]] = None) -> List[Dict[ZSymbol, CleftElement]]:
    """
    All comodule assignments of a delta-closed set of labels of one copy.

    Raises:
        ValueError: If the labels are not closed under delta
        BudgetExceededError: If the solution set exceeds identity_check_max_maps
    """
    N = cleft.params.N
    labels = list(labels) if labels is not None else [(m, n) for m in range(N) for n in range(N)]
    position = {label: i for i, label in enumerate(labels)}
    BH = cleft.tensor_h
    ring = cleft.ring
    r = cleft.rank
    basis = cleft.basis_coords()
    rows = BH.rank
    system = np.zeros((len(labels) * rows, len(labels) * r, ring.dim), dtype=np.int64)
    for i, label in enumerate(labels):
        block = slice(i * rows, (i + 1) * rows)
        system[block, i * r:(i + 1) * r] += cleft.coaction_matrix
        for inner, h in _delta_columns(cleft, label):
            if inner not in position:
                raise ValueError(f"Labels are not closed under delta: {label} needs {inner}")
            j = position[inner]
            system[block, j * r:(j + 1) * r] -= matrix_from_images(BH.pure(basis, h))
    linear = RLinearMap(ring, system % ring.mod)
    size = span_size(linear.kernel_canonical(), ring.exponent)
    if size > ring.settings.identity_check_max_maps:
        raise BudgetExceededError(f"solve_copy would enumerate {size} assignments")
    solutions = []
    for vector in linear.kernel_elements():
        solutions.append({
            ZSymbol(copy, *label): cleft.element(vector[i * r:(i + 1) * r])
            for i, label in enumerate(labels)
        })
    return solutions


# ----------------------------------------------------------------------
# Fingerprints
# ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Fingerprint:
    """
    The truncated identity module {P : deg P <= D, f(P) = 0 for all f}.

    Attributes:
        ring: Coefficient ring
        degree: Truncation degree D
        width: Number of symbol copies
        words: Coordinate words, in canonical order
        rows: Howell form of the module, embedded over Z/n
    """

    ring: FiniteRing
    degree: int
    width: int
    words: Tuple[Word, ...]
    rows: np.ndarray

    def __eq__(self, other) -> bool:
        if not isinstance(other, Fingerprint):
            return NotImplemented
        return (self.degree, self.width) == (other.degree, other.width) and \
            self.ring == other.ring and np.array_equal(self.rows, other.rows)

    __hash__ = None

    @property
    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.degree}:{self.width}:{self.ring.moduli}:{self.rows.shape}".encode())
        h.update(np.ascontiguousarray(self.rows, dtype=np.int64).tobytes())
        return h.hexdigest()

    @property
    def _scale(self) -> np.ndarray:
        return self.ring.exponent // self.ring.mod

    def _embed(self, P: ZPolynomial) -> np.ndarray:
        index = {w: i for i, w in enumerate(self.words)}
        vector = np.zeros((len(self.words), self.ring.dim), dtype=np.int64)
        for word, c in P.terms.items():
            if word not in index:
                raise ValueError(f"Word {word_text(word)} is outside the truncation of this fingerprint")
            vector[index[word]] = c.coords
        return (vector * self._scale).reshape(-1) % self.ring.exponent

    def contains(self, P: ZPolynomial) -> bool:
        """Whether P lies in the truncated identity module."""
        v = self._embed(P)
        if not v.any():
            return True
        stacked = howell_form(np.vstack([self.rows, v[None]]), self.ring.exponent) if len(self.rows) \
            else howell_form(v[None], self.ring.exponent)
        return np.array_equal(stacked, self.rows)

    def polynomials(self) -> List[ZPolynomial]:
        """Z-module generators, one per Howell row."""
        d = self.ring.dim
        out = []
        for row in self.rows:
            coords = (row.reshape(-1, d) // self._scale) % self.ring.mod
            out.append(ZPolynomial(self.ring, {
                w: self.ring.element(c) for w, c in zip(self.words, coords) if c.any()
            }))
        return out

    @property
    def size(self) -> int:
        """Number of polynomials in the module."""
        return span_size(self.rows, self.ring.exponent)

    def to_dict(self) -> Dict:
        return {
            'degree': self.degree,
            'width': self.width,
            'symbols': [s.name for s in alias_symbols(self.width)],
            'rows': self.rows.tolist(),
            'digest': self.digest,
        }


def fingerprint_fits(ring: FiniteRing, degree: int, width: int = 1,
                     settings: Optional[Settings] = None) -> bool:
    """Whether a full fingerprint stays within both the word and the map budget."""
    settings = settings or ring.settings
    return word_count(3 * width, degree) <= settings.max_fingerprint_words and \
        ring.order ** (3 * width) <= settings.max_fingerprint_maps


def fingerprint(cleft: CleftExtension, degree: int, width: int = 1,
                settings: Optional[Settings] = None) -> Fingerprint:
    """
    Kernel of the stacked evaluation maps on words of degree <= D.

    Raises:
        BudgetExceededError: If the word space exceeds max_fingerprint_words
            or the map family exceeds max_fingerprint_maps
    """
    settings = settings or cleft.ring.settings
    symbols = alias_symbols(width)
    count = word_count(len(symbols), degree)
    if count > settings.max_fingerprint_words:
        raise BudgetExceededError(
            f"Fingerprint of degree {degree} needs {count} words; "
            f"max_fingerprint_words is {settings.max_fingerprint_words}"
        )
    maps = family_size(cleft, symbols)
    if maps > settings.max_fingerprint_maps:
        raise BudgetExceededError(
            f"Fingerprint of width {width} needs {maps} maps; "
            f"max_fingerprint_maps is {settings.max_fingerprint_maps}"
        )
    words = canonical_words(symbols, degree)
    ring = cleft.ring
    blocks = []
    for _, family in iter_families(cleft, symbols):
        images = _word_images(words, family)
        # rows (map, coordinate), columns word
        blocks.append(np.stack([images[w] for w in words], axis=2).reshape(-1, len(words), ring.dim))
    rows = RLinearMap(ring, np.concatenate(blocks)).kernel_canonical()
    logger.info("Fingerprint of B_%s: degree %d, %d words, %d maps, %d rows",
                cleft.data, degree, len(words), family_size(cleft, symbols), len(rows))
    return Fingerprint(ring, degree, width, tuple(words), rows)
