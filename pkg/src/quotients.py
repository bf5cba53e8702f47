"""Finite-dimensional quotients and the named rewriting quotients.

A FiniteQuotient carries the action of every letter on the classes of its
basis words; that is the regular representation when the source is a
two-sided ideal, and the cyclic module A/L when it is a left ideal.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from .errors import ConstructionError, DegreeBoundError, ImproperIdealError, PreconditionError
from .freepoly import FieldMode, Polynomial, Word, leading_word, trace_normal_form, word_key, words_up_to
from .groebner import (
    CodimVerdict,
    GroebnerBasis,
    IdealPresentation,
    complete,
    finite_codimension,
    reduce,
    standard_monomials,
)
from .linalg import SparseEchelon, nullspace, to_matrix
from .repvar import evaluate_letters

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class FiniteQuotient:
    basis: Tuple[Word, ...]
    left_mult: Dict[int, DomainMatrix]
    g: int
    field: FieldMode
    source: str

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix_of(self, p: Polynomial) -> DomainMatrix:
        """Matrix of [w] -> [p w] on the quotient."""
        if p.g != self.g or p.field is not self.field:
            raise PreconditionError("Polynomial and quotient disagree on g or field")
        return evaluate_letters(p, self.left_mult, self.dim, self.field)


def _left_mult(basis: Sequence[Word], g: int, field: FieldMode, normal_form) -> Dict[int, DomainMatrix]:
    index = {w: k for k, w in enumerate(basis)}
    n = len(basis)
    mats = {}
    for code in range(2 * g):
        cols = []
        for w in basis:
            nf = normal_form((code,) + w)
            col = [field.zero] * n
            for word, c in nf.items():
                if word not in index:
                    raise ConstructionError(f"Normal form leaves the quotient basis at word {word}")
                col[index[word]] = c
            cols.append(col)
        mats[code] = to_matrix([[cols[j][i] for j in range(n)] for i in range(n)], field, n)
    return mats


def regular_representation(gb: GroebnerBasis) -> FiniteQuotient:
    """Left multiplication by each letter on the standard monomials of gb."""
    if gb.improper:
        raise ImproperIdealError("The ideal contains 1")
    verdict, codim = finite_codimension(gb)
    if verdict is not CodimVerdict.FINITE or codim is None:
        raise PreconditionError(f"Regular representation needs a certified finite codimension (got {verdict.value})")
    depth = 0
    while len(standard_monomials(gb, depth)) < codim:
        depth += 1
    basis = tuple(standard_monomials(gb, depth))

    def normal_form(w: Word) -> Dict[Word, object]:
        return reduce(Polynomial.monomial(w, gb.g, gb.field), gb).terms

    mats = _left_mult(basis, gb.g, gb.field, normal_form)
    return FiniteQuotient(basis, mats, gb.g, gb.field, "groebner")


def _left_echelon(left_basis: Sequence[Polynomial]) -> Tuple[SparseEchelon, int, FieldMode]:
    if not left_basis:
        raise PreconditionError("An explicit left-ideal basis needs at least one polynomial")
    g, fm = left_basis[0].g, left_basis[0].field
    echelon = SparseEchelon(fm, key=word_key)
    for p in left_basis:
        if p.g != g or p.field is not fm:
            raise PreconditionError("Left-ideal basis disagrees on g or field")
        echelon.add(dict(p.terms))
    return echelon, g, fm


def quotient_from_left_basis(left_basis: Sequence[Polynomial], D: int) -> FiniteQuotient:
    """A/L where L is spanned by left_basis in degrees <= D."""
    echelon, g, fm = _left_echelon(left_basis)
    pivots = set(echelon.rows)
    basis = tuple(w for w in words_up_to(g, D) if w not in pivots)
    if any(len(w) >= D for w in basis):
        raise DegreeBoundError(f"Degree {D} is too small: a standard word of degree {D} survives")
    mats = _left_mult(basis, g, fm, lambda w: echelon.reduce({w: fm.one}))
    return FiniteQuotient(basis, mats, g, fm, "left_basis")


def z_ideal(left_basis: Sequence[Polynomial], D: int) -> List[Polynomial]:
    """Echelon basis of {t in L : deg t <= D-1, t * letter in L for every letter}."""
    echelon, g, fm = _left_echelon(left_basis)
    candidates = [Polynomial._raw(row, g, fm) for _, row in echelon.reduced_rows()
                  if max(len(w) for w in row) <= D - 1]
    if not candidates:
        return []
    # remainders of v_k * letter modulo L, one block of equations per letter
    rows: List[List[object]] = []
    for code in range(2 * g):
        letter = Polynomial.monomial((code,), g, fm)
        rems = [echelon.reduce(dict((v * letter).terms)) for v in candidates]
        keys = sorted({w for r in rems for w in r}, key=word_key)
        for w in keys:
            rows.append([r.get(w, fm.zero) for r in rems])
    out = SparseEchelon(fm, key=word_key)
    for vec in nullspace(rows, fm, len(candidates)):
        total = Polynomial.zero(g, fm)
        for a, v in zip(vec, candidates):
            if a:
                total = total + v.scale(a)
        out.add(dict(total.terms))
    return [Polynomial._raw(row, g, fm) for _, row in out.reduced_rows()]


def hat_member(p: Polynomial, Q: FiniteQuotient) -> bool:
    """p lies in the hat ideal iff left multiplication by p is singular on Q."""
    return not Q.matrix_of(p).det()


@lru_cache(maxsize=None)
def toeplitz_basis(field: FieldMode = FieldMode.RATIONAL) -> GroebnerBasis:
    """The single confluent rule x*x -> 1."""
    x = Polynomial.variable(1, 1, field)
    gen = x.star() * x - 1
    gb = complete(IdealPresentation.from_generators([gen], 1, field), 2)
    if not gb.complete:
        raise ConstructionError("Toeplitz rule failed to complete")
    return gb


def toeplitz_canon(p: Polynomial) -> Polynomial:
    if p.g != 1:
        raise PreconditionError("Toeplitz canonical forms are defined for g = 1")
    return reduce(p, toeplitz_basis(p.field))


@dataclass(frozen=True)
class QWeylSystem:
    q: Fraction
    gb: GroebnerBasis
    degree: int

    @property
    def derived_rules(self) -> List[Polynomial]:
        """Rules whose leading word does not come from the two input relations."""
        base = set(_input_basis(self.q, self.gb.field).leading_words)
        return [r for r in self.gb.rules if leading_word(r) not in base]


def qweyl_letters(field: FieldMode = FieldMode.RATIONAL) -> Tuple[Polynomial, Polynomial]:
    """(x, a) as polynomials in g = 2: x is x1 and a is x2."""
    return Polynomial.variable(1, 2, field), Polynomial.variable(2, 2, field)


def qweyl_relations(q: Fraction, field: FieldMode = FieldMode.RATIONAL) -> List[Polynomial]:
    """a*a - q aa* and xx* + aa* - 1."""
    x, a = qweyl_letters(field)
    return [a.star() * a - (a * a.star()).scale(field.convert(q)),
            x * x.star() + a * a.star() - 1]


@lru_cache(maxsize=None)
def _input_basis(q: Fraction, field: FieldMode) -> GroebnerBasis:
    """The two relations interreduced, without completion."""
    rels = qweyl_relations(q, field)
    return complete(IdealPresentation.from_generators(rels, 2, field), 2)


def build_qweyl_system(q, degree: int = 5, field: FieldMode = FieldMode.RATIONAL) -> QWeylSystem:
    q = Fraction(q)
    if not 0 < q < 1:
        raise PreconditionError(f"q must satisfy 0 < q < 1 (got {q})")
    rels = qweyl_relations(q, field)
    gb = complete(IdealPresentation.from_generators(rels, 2, field), degree)
    logger.debug("q-system for q=%s: %d rules, complete=%s", q, len(gb.rules), gb.complete)
    return QWeylSystem(q, gb, degree)


def qweyl_canon(p: Polynomial, S: QWeylSystem) -> Polynomial:
    """Normal form of p modulo the q-system.

    On a complete system this is the canonical form.  When completion stopped
    at S.degree the result is only certified up to S.degree: it is reduced by
    every rule found so far, and inputs of higher degree are refused, but a
    rule of higher degree could still rewrite it.
    """
    if p.g != 2:
        raise PreconditionError("q-system polynomials use g = 2 (x = x1, a = x2)")
    if not S.gb.complete and p.degree() > S.degree:
        raise DegreeBoundError(f"Degree {p.degree()} exceeds the system's certified bound {S.degree}")
    return reduce(p, S.gb)


def k_identity_defect(k, field: FieldMode = FieldMode.RATIONAL) -> Polynomial:
    """k(k - aa*) - (k - aa*)^2 - a(k - a*a)a*, expanded in the free algebra."""
    _, a = qweyl_letters(field)
    kk = field.convert(Fraction(k))
    one = Polynomial.constant(1, 2, field)
    left = one.scale(kk) - a * a.star()
    right = one.scale(kk) - a.star() * a
    return left.scale(kk) - left * left - a * right * a.star()


def a_star_power_defect(m: int, q: Fraction, field: FieldMode = FieldMode.RATIONAL) -> Polynomial:
    """(a*)^m a^m - (q^m - sum_l q^(m-l) (a*)^l xx* a^l)."""
    x, a = qweyl_letters(field)
    xx = x * x.star()
    total = (a.star() ** m) * (a ** m) - Polynomial.constant(q ** m, 2, field)
    for l in range(m):
        total = total + ((a.star() ** l) * xx * (a ** l)).scale(field.convert(q ** (m - l)))
    return total


def a_power_defect(m: int, field: FieldMode = FieldMode.RATIONAL) -> Polynomial:
    """a^m (a*)^m - (1 - sum_l a^l xx* (a*)^l)."""
    x, a = qweyl_letters(field)
    xx = x * x.star()
    total = (a ** m) * (a.star() ** m) - 1
    for l in range(m):
        total = total + (a ** l) * xx * (a.star() ** l)
    return total


@dataclass
class QWeylReport:
    q: Fraction
    k_identities: Dict[str, bool]
    power_identities: List[Dict[str, object]]

    @property
    def passed(self) -> bool:
        return all(self.k_identities.values()) and all(
            e["a_star_power"] and e["a_power"] for e in self.power_identities)


def verify_qweyl_identities(S: QWeylSystem, m_max: int, k_values: Sequence[object]) -> QWeylReport:
    fm = S.gb.field
    ks = {str(Fraction(k)): k_identity_defect(k, fm).is_zero() for k in k_values}
    powers = []
    for m in range(1, m_max + 1):
        powers.append({
            "m": m,
            "a_star_power": qweyl_canon(a_star_power_defect(m, S.q, fm), S).is_zero(),
            "a_power": qweyl_canon(a_power_defect(m, fm), S).is_zero(),
        })
    return QWeylReport(S.q, ks, powers)


@dataclass(frozen=True)
class WeylObstruction:
    trace_form: Polynomial
    obstructs: bool


def weyl_obstruction(p: Polynomial) -> WeylObstruction:
    """A nonzero constant trace normal form rules out hard matrix zeros of p."""
    t = trace_normal_form(p)
    constant = not t.is_zero() and all(not w for w in t.terms)
    return WeylObstruction(t, constant)
