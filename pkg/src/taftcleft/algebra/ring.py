"""
Finite commutative unital rings.

A ring is stored as its additive group Z/m_1 x ... x Z/m_d together with
structure constants C[i, j, k], so that b_i * b_j = sum_k C[i, j, k] b_k for
the coordinate basis b_1..b_d. Products, quotients R0[t]/(f) and Galois
fields all reduce to this one representation.

Elements are addressed by a mixed-radix index with the first coordinate
least significant, so the elements of Z/n are indexed by their residues.
"""

import itertools
import logging
import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from taftcleft.errors import (
    BudgetExceededError,
    HypothesisError,
    NotAUnitError,
    RingSpecError,
    VerificationError,
)
from taftcleft.settings import Settings
from taftcleft.utils.constants import EXHAUSTIVE_AXIOM_LIMIT, FIELD_SUGAR_PREFIX

logger = logging.getLogger(__name__)

_X = sympy.Symbol('x')
_T = sympy.Symbol('t')

ElementLike = Union['RingElement', int, Sequence[int], str]


class FiniteRing:
    """
    A finite commutative unital ring given by structure constants.

    Attributes:
        moduli: Additive modulus of every coordinate
        structure: Structure constants, shape (d, d, d)
        unit_coords: Coordinates of the identity
        spec: Textual description the ring was parsed from
        settings: Budgets for exhaustive operations
    """

    def __init__(
        self,
        moduli: Sequence[int],
        structure: np.ndarray,
        unit_coords: Sequence[int],
        spec: str = '',
        settings: Optional[Settings] = None,
    ):
        self.moduli = tuple(int(m) for m in moduli)
        if not self.moduli or min(self.moduli) < 2:
            raise RingSpecError(f"Additive moduli must be >= 2, got {self.moduli}")
        self.mod = np.array(self.moduli, dtype=np.int64)
        d = len(self.moduli)
        self.structure = np.asarray(structure, dtype=np.int64).reshape(d, d, d) % self.mod
        self.unit_coords = np.asarray(unit_coords, dtype=np.int64) % self.mod
        self.spec = spec
        self.settings = settings or Settings()
        self.radix = np.cumprod((1,) + self.moduli[:-1]).astype(np.int64)

    # ------------------------------------------------------------------
    # Sizes
    # ------------------------------------------------------------------

    @property
    def dim(self) -> int:
        """Size d of the coordinate basis."""
        return len(self.moduli)

    @cached_property
    def order(self) -> int:
        """Number of elements."""
        return math.prod(self.moduli)

    @cached_property
    def exponent(self) -> int:
        """Exponent n of the additive group (lcm of the moduli)."""
        return reduce(math.lcm, self.moduli)

    @cached_property
    def characteristic(self) -> int:
        """Additive order of 1."""
        return reduce(
            math.lcm,
            (m // math.gcd(int(c), m) for c, m in zip(self.unit_coords, self.moduli)),
            1,
        )

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteRing({self.spec or self.moduli!r}, order={self.order})"

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return (
            self.moduli == other.moduli
            and np.array_equal(self.structure, other.structure)
            and np.array_equal(self.unit_coords, other.unit_coords)
        )

    def __hash__(self) -> int:
        return hash((self.moduli, self.structure.tobytes(), self.unit_coords.tobytes()))

    def require_enumerable(self, what: str = 'enumeration') -> None:
        """Raise BudgetExceededError when the ring is too large to enumerate."""
        if self.order > self.settings.max_ring_elements:
            raise BudgetExceededError(
                f"{what} over {self.spec or 'ring'} needs {self.order} elements; "
                f"max_ring_elements is {self.settings.max_ring_elements}"
            )

    # ------------------------------------------------------------------
    # Vectorised coordinate arithmetic
    # ------------------------------------------------------------------

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Multiply coordinate arrays (broadcast over leading axes)."""
        return np.einsum('...i,...j,ijk->...k', x, y, self.structure) % self.mod

    def add(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return (x + y) % self.mod

    def sub(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return (x - y) % self.mod

    def int_coords(self, n: int) -> np.ndarray:
        """Coordinates of n * 1."""
        return (int(n) % self.exponent) * self.unit_coords % self.mod

    def coords(self, index) -> np.ndarray:
        """Coordinates of element index (scalar or array)."""
        index = np.asarray(index, dtype=np.int64)
        return (index[..., None] // self.radix) % self.mod

    def index(self, coords: np.ndarray):
        """Index of coordinate vectors (last axis)."""
        out = (np.asarray(coords, dtype=np.int64) % self.mod * self.radix).sum(axis=-1)
        return int(out) if np.ndim(out) == 0 else out

    @cached_property
    def all_coords(self) -> np.ndarray:
        """Coordinates of every element, in index order."""
        self.require_enumerable()
        return self.coords(np.arange(self.order))

    @cached_property
    def mul_table(self) -> np.ndarray:
        """Index multiplication table, shape (|R|, |R|)."""
        self.require_enumerable('multiplication table')
        elems = self.all_coords
        table = np.empty((self.order, self.order), dtype=np.int64)
        step = max(1, 2 ** 20 // max(1, self.order * self.dim))
        for start in range(0, self.order, step):
            block = self.mul(elems[start:start + step, None, :], elems[None, :, :])
            table[start:start + step] = self.index(block)
        logger.debug("Built %dx%d multiplication table for %s", self.order, self.order, self.spec)
        return table

    @cached_property
    def add_table(self) -> np.ndarray:
        """Index addition table, shape (|R|, |R|)."""
        elems = self.all_coords
        return self.index(self.add(elems[:, None, :], elems[None, :, :]))

    @cached_property
    def neg_table(self) -> np.ndarray:
        return self.index((-self.all_coords) % self.mod)

    @cached_property
    def zero_index(self) -> int:
        return 0

    @cached_property
    def one_index(self) -> int:
        return self.index(self.unit_coords)

    def _enumerable(self) -> bool:
        return self.order <= self.settings.max_ring_elements

    def _mul_idx(self, i: int, j: int) -> int:
        if self._enumerable():
            return int(self.mul_table[i, j])
        return self.index(self.mul(self.coords(i), self.coords(j)))

    def _add_idx(self, i: int, j: int) -> int:
        if self._enumerable():
            return int(self.add_table[i, j])
        return self.index(self.add(self.coords(i), self.coords(j)))

    def _neg_idx(self, i: int) -> int:
        if self._enumerable():
            return int(self.neg_table[i])
        return self.index((-self.coords(i)) % self.mod)

    def pow_indices(self, indices: np.ndarray, exponent: int) -> np.ndarray:
        """Raise many elements (by index) to one power through the table."""
        result = np.full(np.shape(indices), self.one_index, dtype=np.int64)
        base = np.asarray(indices, dtype=np.int64)
        e = int(exponent)
        while e > 0:
            if e & 1:
                result = self.mul_table[result, base]
            base = self.mul_table[base, base]
            e >>= 1
        return result

    # ------------------------------------------------------------------
    # Elements
    # ------------------------------------------------------------------

    def element(self, value: ElementLike) -> 'RingElement':
        """
        Coerce a value into this ring.

        Args:
            value: RingElement, integer n (meaning n*1), coordinate tuple, or
                text accepted by parse_element

        Returns:
            RingElement
        """
        if isinstance(value, RingElement):
            if value.ring is not self and value.ring != self:
                raise ValueError("Element belongs to a different ring")
            return value
        if isinstance(value, (int, np.integer)):
            return RingElement(self, self.index(self.int_coords(int(value))))
        if isinstance(value, str):
            return parse_element(self, value)
        coords = np.asarray(value, dtype=np.int64)
        if coords.shape != (self.dim,):
            raise ValueError(f"Expected {self.dim} coordinates, got {tuple(value)}")
        return RingElement(self, self.index(coords))

    def from_index(self, index: int) -> 'RingElement':
        return RingElement(self, int(index))

    def zero(self) -> 'RingElement':
        return RingElement(self, 0)

    def one(self) -> 'RingElement':
        return RingElement(self, self.one_index)

    def elements(self) -> List['RingElement']:
        """All elements in index order."""
        self.require_enumerable()
        return [RingElement(self, i) for i in range(self.order)]

    def format_index(self, index: int) -> str:
        coords = self.coords(index)
        if self.dim == 1:
            return str(int(coords[0]))
        return '(' + ','.join(str(int(c)) for c in coords) + ')'

    def to_json_value(self, index: int):
        coords = self.coords(index)
        if self.dim == 1:
            return int(coords[0])
        return [int(c) for c in coords]

    # ------------------------------------------------------------------
    # Units
    # ------------------------------------------------------------------

    @cached_property
    def inverse_table(self) -> np.ndarray:
        """Inverse index of each unit, -1 for non-units."""
        hits = self.mul_table == self.one_index
        inv = np.where(hits.any(axis=1), hits.argmax(axis=1), -1)
        return inv.astype(np.int64)

    @cached_property
    def unit_indices(self) -> np.ndarray:
        return np.nonzero(self.inverse_table >= 0)[0]

    def units(self) -> List['RingElement']:
        return [RingElement(self, int(i)) for i in self.unit_indices]

    @cached_property
    def unit_orders(self) -> Dict[int, int]:
        """Multiplicative order of every unit, keyed by index."""
        units = self.unit_indices
        orders = np.zeros(len(units), dtype=np.int64)
        power = units.copy()
        for m in range(1, len(units) + 1):
            hit = (power == self.one_index) & (orders == 0)
            orders[hit] = m
            if (orders > 0).all():
                break
            power = self.mul_table[power, units]
        return {int(u): int(o) for u, o in zip(units, orders)}

    # ------------------------------------------------------------------
    # Axioms
    # ------------------------------------------------------------------

    def check_axioms(self, samples: Optional[int] = None, seed: Optional[int] = None) -> bool:
        """
        Check commutativity, associativity, distributivity and unitality.

        Exhaustive on rings with at most a dozen elements; otherwise on
        ``samples`` random triples.
        """
        if self.order <= EXHAUSTIVE_AXIOM_LIMIT:
            idx = np.array(list(itertools.product(range(self.order), repeat=3)))
        else:
            rng = np.random.default_rng(self.settings.random_seed if seed is None else seed)
            n = samples or self.settings.axiom_samples
            idx = rng.integers(0, self.order, size=(n, 3))
        x, y, z = (self.coords(idx[:, k]) for k in range(3))
        one = np.broadcast_to(self.unit_coords, x.shape)
        checks = [
            np.array_equal(self.mul(x, y), self.mul(y, x)),
            np.array_equal(self.mul(self.mul(x, y), z), self.mul(x, self.mul(y, z))),
            np.array_equal(self.mul(x, self.add(y, z)), self.add(self.mul(x, y), self.mul(x, z))),
            np.array_equal(self.mul(one, x), x),
        ]
        return all(checks)


@dataclass(frozen=True, eq=False)
class RingElement:
    """An element of a FiniteRing, addressed by its canonical index."""

    ring: FiniteRing
    value: int

    @property
    def coords(self) -> np.ndarray:
        return self.ring.coords(self.value)

    def _coerce(self, other) -> 'RingElement':
        return self.ring.element(other)

    def __eq__(self, other) -> bool:
        if isinstance(other, RingElement):
            return self.value == other.value and (self.ring is other.ring or self.ring == other.ring)
        if isinstance(other, (int, np.integer)):
            return self.value == self.ring.index(self.ring.int_coords(int(other)))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __add__(self, other) -> 'RingElement':
        if not isinstance(other, (RingElement, int, np.integer)):
            return NotImplemented
        o = self._coerce(other)
        return RingElement(self.ring, self.ring._add_idx(self.value, o.value))

    __radd__ = __add__

    def __neg__(self) -> 'RingElement':
        return RingElement(self.ring, self.ring._neg_idx(self.value))

    def __sub__(self, other) -> 'RingElement':
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> 'RingElement':
        return self._coerce(other) - self

    def __mul__(self, other) -> 'RingElement':
        if not isinstance(other, (RingElement, int, np.integer)):
            return NotImplemented
        o = self._coerce(other)
        return RingElement(self.ring, self.ring._mul_idx(self.value, o.value))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'RingElement':
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self) -> bool:
        return self.value != 0

    def is_zero(self) -> bool:
        return self.value == 0

    def is_unit(self) -> bool:
        return bool(self.ring.inverse_table[self.value] >= 0)

    def inverse(self) -> 'RingElement':
        """Multiplicative inverse; raises NotAUnitError for non-units."""
        inv = int(self.ring.inverse_table[self.value])
        if inv < 0:
            raise NotAUnitError(f"{self} is not a unit in {self.ring.spec}")
        return RingElement(self.ring, inv)

    def to_json(self):
        return self.ring.to_json_value(self.value)

    def __str__(self) -> str:
        return self.ring.format_index(self.value)

    def __repr__(self) -> str:
        return f"RingElement({self})"


# ----------------------------------------------------------------------
# Ring spec parsing
# ----------------------------------------------------------------------

_TERM = re.compile(r'([+-]?)\s*(\d*)\s*\*?\s*(t(?:\s*\^\s*(\d+))?)?\s*')


def _parse_t_polynomial(text: str) -> Dict[int, int]:
    """Parse an integer polynomial in t into {degree: coefficient}."""
    body = text.replace(' ', '')
    if not body:
        raise RingSpecError("Empty polynomial")
    coeffs: Dict[int, int] = {}
    pos = 0
    while pos < len(body):
        match = _TERM.match(body, pos)
        if not match or match.end() == pos or not (match.group(2) or match.group(3)):
            raise RingSpecError(f"Cannot parse polynomial '{text}' near '{body[pos:]}'")
        if pos > 0 and not match.group(1):
            raise RingSpecError(f"Missing operator in polynomial '{text}'")
        sign = -1 if match.group(1) == '-' else 1
        coeff = int(match.group(2)) if match.group(2) else 1
        if match.group(3):
            degree = int(match.group(4)) if match.group(4) else 1
        else:
            degree = 0
        coeffs[degree] = coeffs.get(degree, 0) + sign * coeff
        pos = match.end()
    return {k: v for k, v in coeffs.items() if v != 0}


def _integers_mod(n: int, settings: Optional[Settings]) -> FiniteRing:
    if n < 2:
        raise RingSpecError(f"Z/{n} is not a supported ring (need n >= 2)")
    return FiniteRing((n,), np.ones((1, 1, 1), dtype=np.int64), (1,), spec=f"Z/{n}", settings=settings)


def quotient_ring(base: FiniteRing, coeffs: Dict[int, int], spec: str = '') -> FiniteRing:
    """
    Build base[t]/(f) for a monic integer polynomial f.

    Args:
        base: Coefficient ring R0
        coeffs: {degree: integer coefficient} of f
        spec: Text for the resulting ring

    Raises:
        RingSpecError: If f is constant or its leading coefficient is not 1 in R0
    """
    if not coeffs or max(coeffs) < 1:
        raise RingSpecError(f"Quotient polynomial must have degree >= 1 ({spec})")
    e = max(coeffs)
    if base.index(base.int_coords(coeffs[e])) != base.one_index:
        raise RingSpecError(f"Quotient polynomial is not monic over {base.spec} ({spec})")

    n = base.exponent
    # t^m reduced modulo f, as integer vectors over t^0..t^(e-1)
    powers = np.zeros((2 * e - 1, e), dtype=np.int64)
    for m in range(min(e, 2 * e - 1)):
        powers[m, m] = 1
    tail = np.array([coeffs.get(r, 0) for r in range(e)], dtype=np.int64) % n
    for m in range(e, 2 * e - 1):
        prev = powers[m - 1]
        shifted = np.concatenate(([0], prev[:-1]))
        powers[m] = (shifted - prev[-1] * tail) % n

    pair = np.array([[powers[j1 + j2] for j2 in range(e)] for j1 in range(e)])
    d0 = base.dim
    structure = np.einsum('ikl,jmr->jimkrl', base.structure, pair).reshape(e * d0, e * d0, e * d0)
    unit = np.concatenate([base.unit_coords, np.zeros((e - 1) * d0, dtype=np.int64)])
    return FiniteRing(base.moduli * e, structure, unit, spec=spec, settings=base.settings)


def product_ring(left: FiniteRing, right: FiniteRing, spec: str = '') -> FiniteRing:
    """Direct product R1 x R2 with block-diagonal structure constants."""
    d1, d2 = left.dim, right.dim
    structure = np.zeros((d1 + d2,) * 3, dtype=np.int64)
    structure[:d1, :d1, :d1] = left.structure
    structure[d1:, d1:, d1:] = right.structure
    unit = np.concatenate([left.unit_coords, right.unit_coords])
    return FiniteRing(left.moduli + right.moduli, structure, unit, spec=spec, settings=left.settings)


def _is_irreducible_mod_p(coeffs: Dict[int, int], p: int) -> bool:
    poly = sympy.Poly(sum(c * _T ** k for k, c in coeffs.items()), _T, modulus=p)
    return poly.is_irreducible


@lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """Coefficients c_0..c_k of the lexicographically least monic irreducible of degree k over F_p."""
    for tail in itertools.product(range(p), repeat=k):
        coeffs = {k: 1}
        coeffs.update({k - 1 - i: c for i, c in enumerate(tail) if c})
        if _is_irreducible_mod_p(coeffs, p):
            return tuple(coeffs.get(r, 0) for r in range(k + 1))
    raise RingSpecError(f"No irreducible polynomial of degree {k} over F_{p}")


def galois_field(p: int, k: int, modulus: Optional[Dict[int, int]] = None,
                 settings: Optional[Settings] = None, spec: str = '') -> FiniteRing:
    """GF(p^k) as F_p[t]/(f) with f irreducible of degree k."""
    if not sympy.isprime(p):
        raise RingSpecError(f"GF({p}^{k}): {p} is not prime")
    if k < 1:
        raise RingSpecError(f"GF({p}^{k}): exponent must be >= 1")
    base = _integers_mod(p, settings)
    if modulus is None:
        if k == 1:
            base.spec = spec or f"GF({p})"
            return base
        modulus = {r: c for r, c in enumerate(least_irreducible(p, k)) if c}
    else:
        if max(modulus) != k:
            raise RingSpecError(f"GF({p}^{k}) modulus must have degree {k}")
        if not _is_irreducible_mod_p(modulus, p):
            raise RingSpecError(f"GF({p}^{k}) modulus is reducible over F_{p}")
    return quotient_ring(base, modulus, spec=spec or f"GF({p}^{k})")


_BASE = re.compile(
    r'\s*(?:Z/(?P<n>\d+)'
    r'|GF\(\s*(?P<p>\d+)\s*(?:\^\s*(?P<k>\d+))?\s*(?:,\s*(?P<f>[^)]*))?\)'
    r'|' + re.escape(FIELD_SUGAR_PREFIX) + r'(?P<fp>\d+))\s*'
)
_QUOTIENT = re.compile(r'\s*\[t\]\s*/\s*\(([^()]*)\)\s*')


def _split_product(spec: str) -> List[str]:
    """Split on top-level ' x ' separators."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(spec):
        if ch in '([':
            depth += 1
        elif ch in ')]':
            depth -= 1
        elif ch == 'x' and depth == 0:
            parts.append(spec[start:i])
            start = i + 1
    parts.append(spec[start:])
    return parts


def _parse_atom(text: str, settings: Optional[Settings]) -> FiniteRing:
    match = _BASE.match(text)
    if not match:
        raise RingSpecError(f"Cannot parse ring '{text.strip()}'")
    if match.group('n'):
        ring = _integers_mod(int(match.group('n')), settings)
    elif match.group('fp'):
        ring = galois_field(int(match.group('fp')), 1, settings=settings)
    else:
        p = int(match.group('p'))
        k = int(match.group('k') or 1)
        modulus = _parse_t_polynomial(match.group('f')) if match.group('f') else None
        ring = galois_field(p, k, modulus, settings=settings)
    pos = match.end()
    while pos < len(text):
        quotient = _QUOTIENT.match(text, pos)
        if not quotient:
            raise RingSpecError(f"Unexpected text '{text[pos:].strip()}' in ring spec")
        ring = quotient_ring(ring, _parse_t_polynomial(quotient.group(1)),
                             spec=f"{ring.spec}[t]/({quotient.group(1).strip()})")
        pos = quotient.end()
    return ring


def parse_ring_spec(spec: str, settings: Optional[Settings] = None) -> FiniteRing:
    """
    Parse a ring description.

    Grammar: ``ring := atom ("x" atom)*`` with atoms ``Z/n``, ``GF(p^k)``,
    ``GF(p^k, f)``, ``F_p`` and quotients ``atom[t]/(f)``.

    Args:
        spec: Ring description, e.g. ``"F_5[t]/(t^2)"`` or ``"Z/2 x Z/3"``
        settings: Budgets attached to the ring

    Returns:
        FiniteRing

    Raises:
        RingSpecError: On malformed input, a non-prime GF characteristic,
            a reducible GF modulus or a non-monic quotient polynomial
    """
    if not spec or not spec.strip():
        raise RingSpecError("Empty ring spec")
    rings = [_parse_atom(part, settings) for part in _split_product(spec)]
    ring = rings[0]
    for other in rings[1:]:
        ring = product_ring(ring, other)
    ring.spec = spec.strip()
    logger.info("Parsed ring %s: %d elements, %d coordinates", ring.spec, ring.order, ring.dim)
    return ring


def parse_element(ring: FiniteRing, text: str) -> RingElement:
    """Parse ``"3"``, ``"-1"`` or a coordinate tuple ``"(1,2)"``."""
    body = text.strip()
    if re.fullmatch(r'[+-]?\d+', body):
        return ring.element(int(body))
    match = re.fullmatch(r'\(\s*([+-]?\d+(?:\s*,\s*[+-]?\d+)*)\s*\)', body)
    if not match:
        raise ValueError(f"Cannot parse ring element '{text}'")
    return ring.element([int(c) for c in match.group(1).split(',')])


# ----------------------------------------------------------------------
# Structure analysis
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class RingStructure:
    """Exponent, nilpotency index, idempotent decomposition and characteristic."""

    alpha: int
    beta: int
    idempotents: Tuple[RingElement, ...]
    characteristic: int

    def to_dict(self) -> Dict:
        return {
            'alpha': self.alpha,
            'beta': self.beta,
            'idempotents': [e.to_json() for e in self.idempotents],
            'char': self.characteristic,
        }


def nilpotent_indices(ring: FiniteRing) -> Dict[int, int]:
    """Nilpotent elements mapped to their nilpotency index."""
    everything = np.arange(ring.order)
    nilpotent = ring.pow_indices(everything, ring.order) == 0
    result: Dict[int, int] = {}
    power = everything.copy()
    for b in range(1, ring.order + 1):
        for i in np.nonzero((power == 0) & nilpotent)[0]:
            result.setdefault(int(i), b)
        if len(result) == int(nilpotent.sum()):
            break
        power = ring.mul_table[power, everything]
    return result


def idempotent_indices(ring: FiniteRing) -> List[int]:
    table = ring.mul_table
    return [int(i) for i in np.nonzero(np.diag(table) == np.arange(ring.order))[0]]


def primitive_idempotents(ring: FiniteRing) -> Tuple[RingElement, ...]:
    """Nonzero idempotents that are not a sum of two orthogonal nonzero idempotents."""
    idem = [e for e in idempotent_indices(ring) if e != 0]
    table = ring.mul_table
    primitive = []
    for e in idem:
        splits = any(
            f != e and int(table[f, e]) == f and ring._add_idx(e, ring._neg_idx(f)) != 0
            for f in idem
        )
        if not splits:
            primitive.append(ring.from_index(e))
    return tuple(primitive)


def ring_structure(ring: FiniteRing) -> RingStructure:
    """
    Compute alpha, beta, the primitive idempotents and the characteristic.

    alpha is the lcm of unit orders, beta the least b with x^b = 0 for every
    nilpotent x (1 when the nilradical is zero).
    """
    ring.require_enumerable('ring_structure')
    alpha = reduce(math.lcm, ring.unit_orders.values(), 1)
    beta = max(nilpotent_indices(ring).values(), default=1)
    return RingStructure(
        alpha=alpha,
        beta=beta,
        idempotents=primitive_idempotents(ring),
        characteristic=ring.characteristic,
    )


def local_blocks(ring: FiniteRing) -> List[Tuple[RingElement, List[RingElement]]]:
    """The blocks R e_i for the primitive idempotents e_i."""
    blocks = []
    for e in primitive_idempotents(ring):
        members = sorted({int(v) for v in ring.mul_table[e.value]})
        blocks.append((e, [ring.from_index(v) for v in members]))
    return blocks


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> sympy.Poly:
    """
    The N-th cyclotomic polynomial over Z.

    Computed by exact division of x^N - 1 by the cyclotomic polynomials of
    the proper divisors of N.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    result = sympy.Poly(_X ** N - 1, _X, domain='ZZ')
    for d in sympy.divisors(N)[:-1]:
        quotient, remainder = sympy.div(result, cyclotomic_polynomial(d))
        if not remainder.is_zero:
            raise ArithmeticError(f"x^{N}-1 not divisible by Phi_{d}")
        result = quotient
    return result


def evaluate_integer_polynomial(ring: FiniteRing, poly: sympy.Poly, x: np.ndarray) -> np.ndarray:
    """Horner evaluation of an integer polynomial on coordinate arrays."""
    acc = np.zeros_like(np.asarray(x, dtype=np.int64))
    for c in poly.all_coeffs():
        acc = ring.add(ring.mul(acc, x), ring.int_coords(int(c)))
    return acc


def cyclotomic_roots(ring: FiniteRing, N: int) -> Tuple[RingElement, ...]:
    """All q in R with Phi_N(q) = 0, in index order."""
    values = evaluate_integer_polynomial(ring, cyclotomic_polynomial(N), ring.all_coords)
    return tuple(ring.from_index(i) for i in np.nonzero(~values.any(axis=1))[0])


def multiplicative_order(ring: FiniteRing, q: ElementLike) -> int:
    """Smallest m >= 1 with q^m = 1."""
    q = ring.element(q)
    if not q.is_unit():
        raise NotAUnitError(f"{q} is not a unit in {ring.spec}")
    return ring.unit_orders[q.value]


def has_nth_root(ring: FiniteRing, c: ElementLike, N: int) -> Optional[RingElement]:
    """Least unit t (by index) with t^N = c, or None."""
    c = ring.element(c)
    if not c.is_unit():
        raise NotAUnitError(f"{c} is not a unit in {ring.spec}")
    units = ring.unit_indices
    hits = np.nonzero(ring.pow_indices(units, N) == c.value)[0]
    return ring.from_index(int(units[hits[0]])) if hits.size else None


def nth_power_subgroup(ring: FiniteRing, N: int) -> Tuple[RingElement, ...]:
    """The subgroup {s^N : s unit}."""
    values = sorted({int(v) for v in ring.pow_indices(ring.unit_indices, N)})
    return tuple(ring.from_index(v) for v in values)


def coset_representative(ring: FiniteRing, u: ElementLike, N: int) -> RingElement:
    """Least-index element of u times the N-th powers."""
    u = ring.element(u)
    powers = np.array([p.value for p in nth_power_subgroup(ring, N)])
    return ring.from_index(int(ring.mul_table[u.value, powers].min()))


def max_order_generation(ring: FiniteRing) -> bool:
    """Whether the units of order alpha generate the whole unit group."""
    orders = ring.unit_orders
    alpha = reduce(math.lcm, orders.values(), 1)
    generated = {ring.one_index}
    frontier = [u for u, o in orders.items() if o == alpha]
    gens = list(frontier)
    generated.update(frontier)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = int(ring.mul_table[x, g])
                if y not in generated:
                    generated.add(y)
                    new.append(y)
        frontier = new
    return generated == set(orders)


@dataclass(frozen=True)
class HypothesisReport:
    """Standing hypotheses on (R, N, q) and the conclusions they force."""

    N: int
    q: RingElement
    n_is_unit: bool
    gcd_ok: bool
    order_q: int
    one_minus_q_unit: bool
    alpha: int

    @property
    def order_ok(self) -> bool:
        return self.order_q == self.N

    @property
    def k(self) -> Optional[int]:
        return self.alpha // self.N if self.alpha % self.N == 0 else None

    @property
    def ok(self) -> bool:
        return self.n_is_unit and self.gcd_ok and self.order_ok and self.one_minus_q_unit

    def to_dict(self) -> Dict:
        return {
            'N': self.N,
            'q': self.q.to_json(),
            'n_is_unit': self.n_is_unit,
            'gcd_ok': self.gcd_ok,
            'order_q': self.order_q,
            'one_minus_q_unit': self.one_minus_q_unit,
            'alpha': self.alpha,
            'k': self.k,
            'hypotheses_ok': self.ok,
        }


def check_hypotheses(ring: FiniteRing, N: int, q: ElementLike) -> HypothesisReport:
    """
    Check that N is a unit and verify what that forces.

    When N is a unit the report asserts gcd(N, char R) = 1, o(q) = N (so N
    divides alpha) and that 1 - q is a unit.

    Raises:
        HypothesisError: If Phi_N(q) != 0
        VerificationError: If N is a unit but a forced conclusion fails
    """
    q = ring.element(q)
    value = evaluate_integer_polynomial(ring, cyclotomic_polynomial(N), q.coords)
    if value.any():
        raise HypothesisError(f"Phi_{N}({q}) != 0 in {ring.spec}")
    n_is_unit = ring.element(N).is_unit()
    report = HypothesisReport(
        N=N,
        q=q,
        n_is_unit=n_is_unit,
        gcd_ok=math.gcd(N, ring.characteristic) == 1,
        order_q=multiplicative_order(ring, q),
        one_minus_q_unit=(1 - q).is_unit(),
        alpha=reduce(math.lcm, ring.unit_orders.values(), 1),
    )
    if n_is_unit and not (report.gcd_ok and report.order_ok and report.one_minus_q_unit
                          and report.alpha % N == 0):
        raise VerificationError(f"Hypothesis conclusions fail for {ring.spec}, N={N}, q={q}")
    return report
