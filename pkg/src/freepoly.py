"""Words, exact scalars and polynomials of the free *-algebra F<x, x*>.

A letter is stored as an integer code: x_i has code i-1 and x_i* has code
g+i-1.  With that encoding the graded left-lexicographic order
x1 < ... < xg < x1* < ... < xg* is plain tuple comparison after length, and a
word is just a tuple of codes (the empty tuple is the identity 1).
"""

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianElement

from .errors import FieldMismatchError, PreconditionError

Word = Tuple[int, ...]
ONE_WORD: Word = ()
NEG_INF = float("-inf")


class FieldMode(Enum):
    """Scalar field: rationals with trivial involution, or Gaussian rationals."""
    RATIONAL = "Q"
    GAUSSIAN_RATIONAL = "Qi"

    @classmethod
    def from_label(cls, label: str) -> "FieldMode":
        for mode in cls:
            if mode.value == label:
                return mode
        raise PreconditionError(f"Unknown field: {label!r} (expected 'Q' or 'Qi')")

    @property
    def domain(self):
        return QQ if self is FieldMode.RATIONAL else QQ_I

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def convert(self, value):
        """Coerce ints, Fractions, rational strings and domain elements."""
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            value = QQ(value.numerator, value.denominator)
        if self is FieldMode.RATIONAL:
            if isinstance(value, GaussianElement):
                if value.y:
                    raise FieldMismatchError(f"Non-real scalar {value} in rational mode")
                value = value.x
            return QQ.convert(value)
        if isinstance(value, GaussianElement):
            return QQ_I(value.x, value.y)
        return QQ_I(QQ.convert(value), 0)

    def conjugate(self, z):
        if self is FieldMode.RATIONAL:
            return z
        return QQ_I(z.x, -z.y)

    def real_part(self, z):
        return z if self is FieldMode.RATIONAL else z.x

    def imag_part(self, z):
        return QQ.zero if self is FieldMode.RATIONAL else z.y

    def is_real(self, z) -> bool:
        return self is FieldMode.RATIONAL or not z.y

    @property
    def imaginary_unit(self):
        if self is FieldMode.RATIONAL:
            raise FieldMismatchError("The imaginary unit needs the Qi field")
        return QQ_I(0, 1)


@dataclass(frozen=True, order=True)
class Letter:
    """One of the 2g generators x_index or x_index*."""
    index: int
    starred: bool = False

    def code(self, g: int) -> int:
        if not 1 <= self.index <= g:
            raise PreconditionError(f"Letter index {self.index} outside 1..{g}")
        return self.index - 1 + (g if self.starred else 0)

    @classmethod
    def from_code(cls, code: int, g: int) -> "Letter":
        if not 0 <= code < 2 * g:
            raise PreconditionError(f"Letter code {code} outside 0..{2 * g - 1}")
        return cls(index=code % g + 1, starred=code >= g)

    def __str__(self):
        return f"x{self.index}" + ("'" if self.starred else "")


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class PolyClass(Enum):
    ANALYTIC = "analytic"
    ANTIANALYTIC = "antianalytic"
    CONSTANT = "constant"
    MIXED = "mixed"


def word_key(w: Word) -> Tuple[int, Word]:
    """Sort key realising the graded left-lex order."""
    return (len(w), w)


def star_code(code: int, g: int) -> int:
    return code + g if code < g else code - g


def star_word(w: Word, g: int) -> Word:
    return tuple(star_code(c, g) for c in reversed(w))


def word_letters(w: Word, g: int) -> List[Letter]:
    return [Letter.from_code(c, g) for c in w]


def letters_word(letters: Iterable[Letter], g: int) -> Word:
    return tuple(letter.code(g) for letter in letters)


def check_word(w: Word, g: int):
    for c in w:
        if not 0 <= c < 2 * g:
            raise FieldMismatchError(f"Word {w} uses a letter outside g = {g}")


def compare_words(u: Word, v: Word, g: int) -> Ordering:
    check_word(u, g)
    check_word(v, g)
    ku, kv = word_key(u), word_key(v)
    if ku < kv:
        return Ordering.LESS
    if ku > kv:
        return Ordering.GREATER
    return Ordering.EQUAL


def is_analytic_word(w: Word, g: int) -> bool:
    return all(c < g for c in w)


def is_antianalytic_word(w: Word, g: int) -> bool:
    return all(c >= g for c in w)


def is_square_word(w: Word, g: int) -> bool:
    """True iff w = star(v)*v for some word v."""
    if len(w) % 2:
        return False
    k = len(w) // 2
    return w[:k] == star_word(w[k:], g)


def contains_factor(w: Word, f: Word) -> bool:
    n, m = len(w), len(f)
    if m > n:
        return False
    return any(w[i:i + m] == f for i in range(n - m + 1))


def words_of_degree(g: int, d: int) -> Iterator[Word]:
    """All words of length d in increasing order."""
    return itertools.product(range(2 * g), repeat=d)


def words_up_to(g: int, d: int) -> List[Word]:
    return [w for k in range(d + 1) for w in words_of_degree(g, k)]


def analytic_words_up_to(g: int, d: int) -> List[Word]:
    return [w for k in range(d + 1) for w in itertools.product(range(g), repeat=k)]


def least_rotation(w: Word) -> Word:
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


class Polynomial:
    """Finitely supported map Word -> scalar with no zero coefficients."""

    __slots__ = ("terms", "g", "field")

    def __init__(self, terms: Mapping[Word, object], g: int, field: FieldMode = FieldMode.RATIONAL):
        if g < 1:
            raise PreconditionError(f"Variable count must be positive, got {g}")
        clean: Dict[Word, object] = {}
        for w, c in terms.items():
            w = tuple(w)
            check_word(w, g)
            c = field.convert(c)
            if c:
                clean[w] = clean[w] + c if w in clean else c
                if not clean[w]:
                    del clean[w]
        self.terms = clean
        self.g = g
        self.field = field

    @classmethod
    def _raw(cls, terms: Dict[Word, object], g: int, field: FieldMode) -> "Polynomial":
        """Wrap an already clean term dict without copying or converting."""
        p = cls.__new__(cls)
        p.terms = terms
        p.g = g
        p.field = field
        return p

    @classmethod
    def zero(cls, g: int, field: FieldMode = FieldMode.RATIONAL) -> "Polynomial":
        return cls._raw({}, g, field)

    @classmethod
    def constant(cls, c, g: int, field: FieldMode = FieldMode.RATIONAL) -> "Polynomial":
        return cls({ONE_WORD: c}, g, field)

    @classmethod
    def monomial(cls, w: Word, g: int, field: FieldMode = FieldMode.RATIONAL, coeff=1) -> "Polynomial":
        return cls({tuple(w): coeff}, g, field)

    @classmethod
    def variable(cls, index: int, g: int, field: FieldMode = FieldMode.RATIONAL,
                 starred: bool = False) -> "Polynomial":
        return cls.monomial((Letter(index, starred).code(g),), g, field)

    def _check(self, other: "Polynomial"):
        if self.g != other.g or self.field is not other.field:
            raise FieldMismatchError(
                f"Mismatched operands: g={self.g}/{self.field.value} vs g={other.g}/{other.field.value}"
            )

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(other, self.g, self.field)

    def sorted_terms(self, descending: bool = False) -> List[Tuple[Word, object]]:
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]), reverse=descending)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def coefficient(self, w: Word):
        return self.terms.get(tuple(w), self.field.zero)

    def degree(self) -> Union[int, float]:
        if not self.terms:
            return NEG_INF
        return max(len(w) for w in self.terms)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms[w] + c if w in terms else c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return Polynomial._raw(terms, self.g, self.field)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({w: -c for w, c in self.terms.items()}, self.g, self.field)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def scale(self, c) -> "Polynomial":
        c = self.field.convert(c)
        if not c:
            return Polynomial.zero(self.g, self.field)
        return Polynomial._raw({w: c * v for w, v in self.terms.items()}, self.g, self.field)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        terms: Dict[Word, object] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                s = terms[w] + a * b if w in terms else a * b
                if s:
                    terms[w] = s
                else:
                    del terms[w]
        return Polynomial._raw(terms, self.g, self.field)

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise PreconditionError("Negative powers are not defined")
        result = Polynomial.constant(1, self.g, self.field)
        for _ in range(n):
            result = result * self
        return result

    def star(self) -> "Polynomial":
        conj = self.field.conjugate
        return Polynomial._raw(
            {star_word(w, self.g): conj(c) for w, c in self.terms.items()}, self.g, self.field
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.g == other.g and self.field is other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.g, self.field)
        return NotImplemented

    def __hash__(self):
        return hash((self.g, self.field, frozenset(self.terms.items())))

    def __repr__(self):
        body = ", ".join(f"{w}: {c}" for w, c in self.sorted_terms(descending=True))
        return f"Polynomial(g={self.g}, field={self.field.value}, {{{body}}})"


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    if not isinstance(q, Polynomial) or not isinstance(p, Polynomial):
        raise FieldMismatchError("multiply expects two polynomials")
    return p * q


def involution(p: Polynomial) -> Polynomial:
    return p.star()


def degree(p: Polynomial) -> Union[int, float]:
    return p.degree()


def leading_term(p: Polynomial) -> Tuple[Word, object]:
    if not p.terms:
        raise PreconditionError("The zero polynomial has no leading term")
    w = max(p.terms, key=word_key)
    return w, p.terms[w]


def leading_word(p: Polynomial) -> Word:
    return leading_term(p)[0]


def homogeneous_components(p: Polynomial) -> Dict[int, Polynomial]:
    parts: Dict[int, Dict[Word, object]] = {}
    for w, c in p.terms.items():
        parts.setdefault(len(w), {})[w] = c
    return {k: Polynomial._raw(parts[k], p.g, p.field) for k in sorted(parts)}


def classify(p: Polynomial) -> PolyClass:
    if all(not w for w in p.terms):
        return PolyClass.CONSTANT
    letters = {c for w in p.terms for c in w}
    if all(c < p.g for c in letters):
        return PolyClass.ANALYTIC
    if all(c >= p.g for c in letters):
        return PolyClass.ANTIANALYTIC
    return PolyClass.MIXED


def trace_normal_form(p: Polynomial) -> Polynomial:
    """Representative of p modulo commutators of words (least cyclic rotations)."""
    terms: Dict[Word, object] = {}
    for w, c in p.terms.items():
        r = least_rotation(w)
        s = terms[r] + c if r in terms else c
        if s:
            terms[r] = s
        else:
            del terms[r]
    return Polynomial._raw(terms, p.g, p.field)
