"""Positive hermitian functionals vanishing on a *-ideal.

L~ is zero on the ideal and on every standard word that is not diagonal.
For a standard word v of degree k the diagonal word is the leading word of
the normal form of star(v)*v, and L~ gives it the value c_k (scaled by the
inverse leading coefficient).  When star(v)*v is itself standard this is
the square word star(v)*v.  L is the hermitian part
L(a) = (L~(a) + conj(L~(a*))) / 2.  The constants c_0, c_1, ... are fixed one
degree at a time: with the block of degree < d already positive definite,
only the Schur complement of the new degree-d block depends on c_d, and it
is c_d * A + S0 with A the pattern of diagonal words in the new block.
"""

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ConstructionError, DegreeBoundError, ImproperIdealError, PreconditionError
from .freepoly import (
    FieldMode,
    Polynomial,
    Word,
    contains_factor,
    leading_term,
    star_word,
    words_up_to,
)
from .groebner import GroebnerBasis, ideal_basis_words, reduce, standard_monomials
from .linalg import GramFactorization, Rows, positive_definite
from .metrics import PerformanceMetrics

logger = logging.getLogger(__name__)

Profile = Dict[int, object]


@dataclass(frozen=True)
class ConstantPolicy:
    """Where the doubling search for each c_d starts."""
    initial: Fraction = Fraction(1)
    ratio: Fraction = Fraction(1, 2)
    max_doublings: int = 64


DEFAULT_POLICY = ConstantPolicy()
ALTERNATE_POLICY = ConstantPolicy(initial=Fraction(4), ratio=Fraction(1))


@dataclass
class MomentFunctional:
    gb: GroebnerBasis
    c: Tuple[object, ...]
    diagonal: Dict[Word, Tuple[int, object]] = field(default_factory=dict, repr=False, compare=False)
    cache: Dict[Word, Profile] = field(default_factory=dict, repr=False, compare=False)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def max_eval_degree(self) -> int:
        return 2 * self.degree

    @property
    def field(self) -> FieldMode:
        return self.gb.field

    def constants(self) -> List[Fraction]:
        return [_as_fraction(x, self.field) for x in self.c]

    def with_constants(self, c: Sequence[object]) -> "MomentFunctional":
        """Same ideal data, different constants; profiles are shared."""
        return MomentFunctional(self.gb, tuple(self.field.convert(x) for x in c), self.diagonal, self.cache)


@dataclass(frozen=True)
class MomentMatrix:
    labels: Tuple[object, ...]
    entries: Tuple[Tuple[object, ...], ...]
    field: FieldMode

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]], field: FieldMode = FieldMode.RATIONAL) -> "MomentMatrix":
        entries = tuple(tuple(field.convert(x) for x in row) for row in rows)
        return cls(tuple(range(len(entries))), entries, field)

    def rows(self) -> Rows:
        return [list(r) for r in self.entries]


@dataclass
class FunctionalReport:
    degree: int
    hermitian: bool
    vanishes_on_ideal: bool
    positive_definite: bool
    minors: List[object]
    words_checked: int
    ideal_elements_checked: int
    failures: List[str]

    @property
    def passed(self) -> bool:
        return self.hermitian and self.vanishes_on_ideal and self.positive_definite


def _as_fraction(x, fm: FieldMode) -> Fraction:
    r = fm.real_part(x)
    return Fraction(int(r.numerator), int(r.denominator))


Diagonal = Dict[Word, Tuple[int, object]]


def _normal_form(word: Word, gb: GroebnerBasis) -> Polynomial:
    return reduce(Polynomial._raw({word: gb.field.one}, gb.g, gb.field), gb)


def diagonal_words(gb: GroebnerBasis, words: Sequence[Word]) -> Diagonal:
    """Map each diagonal word to (k, weight) with L~(word) = weight * c_k.

    Square standard words come first, so they keep their own constant even
    when a longer star(v)*v reduces onto them.  A reduced star(v)*v only
    claims its leading word when reduction keeps its degree 2k.
    """
    fm = gb.field
    diagonal: Diagonal = {}
    reduced = []
    for v in words:
        square = star_word(v, gb.g) + v
        nf = _normal_form(square, gb)
        if nf.terms == {square: fm.one}:
            diagonal[square] = (len(v), fm.one)
        else:
            reduced.append((v, nf))
    for v, nf in reduced:
        if nf.is_zero():
            continue
        lead, lc = leading_term(nf)
        if len(lead) == 2 * len(v) and lead not in diagonal:
            diagonal[lead] = (len(v), fm.one / lc)
            logger.debug("star(v)*v for v=%s reduces; diagonal word %s carries c_%d", v, lead, len(v))
    return diagonal


def _profile(word: Word, gb: GroebnerBasis, diagonal: Diagonal, cache: Dict[Word, Profile]) -> Profile:
    """Coefficients of L~(word) in the unknowns c_k."""
    hit = cache.get(word)
    if hit is not None:
        return hit
    prof: Profile = {}
    for w, coeff in _normal_form(word, gb).terms.items():
        tag = diagonal.get(w)
        if tag is not None:
            k, weight = tag
            prof[k] = prof[k] + coeff * weight if k in prof else coeff * weight
    cache[word] = prof
    return prof


def _linear_form(word: Word, gb: GroebnerBasis, diagonal: Diagonal, cache: Dict[Word, Profile]) -> Profile:
    """Coefficients of L(word) = (L~(w) + conj L~(w*)) / 2 in the c_k."""
    fm = gb.field
    half = fm.convert(Fraction(1, 2))
    out: Profile = {}
    for k, v in _profile(word, gb, diagonal, cache).items():
        out[k] = out.get(k, fm.zero) + half * v
    for k, v in _profile(star_word(word, gb.g), gb, diagonal, cache).items():
        out[k] = out.get(k, fm.zero) + half * fm.conjugate(v)
    return out


def _apply(form: Profile, c: Sequence[object], fm: FieldMode):
    total = fm.zero
    for k, v in form.items():
        total = total + v * c[k]
    return total


def _check_standard(words: Sequence[Word], gb: GroebnerBasis):
    leads = gb.leading_words
    for w in words:
        if any(contains_factor(w, lead) for lead in leads):
            raise PreconditionError(f"Word {w} is not a standard monomial")


def build_functional(gb: GroebnerBasis, D: int, policy: ConstantPolicy = DEFAULT_POLICY,
                     metrics: Optional[PerformanceMetrics] = None) -> MomentFunctional:
    """Choose c_0..c_D so that every moment block of degree <= d is positive definite."""
    if gb.improper:
        raise ImproperIdealError("The ideal contains 1")
    if not gb.exact_through(2 * D):
        raise PreconditionError(
            f"Reduction is not certified through degree {2 * D} "
            f"(completion degree {gb.completion_degree}, complete={gb.complete})"
        )
    if not gb.analytic_generated:
        logger.debug("Building a functional for a non-analytic *-ideal; relying on the PD search")
    start = time.perf_counter()
    fm = gb.field
    cache: Dict[Word, Profile] = {}
    words = standard_monomials(gb, D)
    diagonal = diagonal_words(gb, words)
    by_degree: Dict[int, List[Word]] = {}
    for w in words:
        by_degree.setdefault(len(w), []).append(w)

    fact = GramFactorization(fm)
    basis: List[Word] = []
    c: List[object] = []
    for d in range(D + 1):
        candidate = fm.convert(policy.initial) if d == 0 else c[d - 1] * fm.convert(policy.ratio)
        new = by_degree.get(d, [])
        if not new:
            c.append(candidate)
            continue
        forms = {(u, v): _linear_form(star_word(u, gb.g) + v, gb, diagonal, cache)
                 for u in basis + new for v in new}
        B = [[_apply(forms[(u, v)], c + [fm.zero], fm) for v in new] for u in basis]
        A = [[forms[(u, v)].get(d, fm.zero) for v in new] for u in new]
        F = [[_apply({k: x for k, x in forms[(u, v)].items() if k != d}, c + [fm.zero], fm)
              for v in new] for u in new]
        Y = [fact.solve([B[i][j] for i in range(len(basis))]) for j in range(len(new))]
        S0 = [[F[i][j] - sum((fm.conjugate(B[k][i]) * Y[j][k] for k in range(len(basis))), fm.zero)
               for j in range(len(new))] for i in range(len(new))]
        chosen = None
        for _ in range(policy.max_doublings):
            trial = [[candidate * A[i][j] + S0[i][j] for j in range(len(new))] for i in range(len(new))]
            if metrics is not None:
                metrics.record_counter("pd_tests")
            if positive_definite(trial, fm)[0]:
                chosen = candidate
                break
            candidate = candidate * 2
        if chosen is None:
            raise ConstructionError(f"No constant c_{d} found within {policy.max_doublings} doublings")
        c.append(chosen)
        logger.debug("c_%d = %s over %d new standard words", d, _as_fraction(chosen, fm), len(new))
        for v in new:
            r = [_apply(_linear_form(star_word(u, gb.g) + v, gb, diagonal, cache), c, fm) for u in basis]
            t = _apply(_linear_form(star_word(v, gb.g) + v, gb, diagonal, cache), c, fm)
            pivot = fact.append(r, t)
            if not fm.real_part(pivot) > 0:
                raise ConstructionError("Moment block lost positivity while extending the factorisation")
            basis.append(v)
    if metrics is not None:
        metrics.record_latency("build_functional", (time.perf_counter() - start) * 1000)
    return MomentFunctional(gb, tuple(c), diagonal, cache)


def evaluate_functional(L: MomentFunctional, p: Polynomial):
    if p.degree() > L.max_eval_degree:
        raise DegreeBoundError(f"Degree {p.degree()} exceeds the evaluation bound {L.max_eval_degree}")
    fm = L.field
    total = fm.zero
    for w, coeff in p.terms.items():
        total = total + coeff * _apply(_linear_form(w, L.gb, L.diagonal, L.cache), L.c, fm)
    return total


def evaluate_word(L: MomentFunctional, w: Word):
    if len(w) > L.max_eval_degree:
        raise DegreeBoundError(f"Degree {len(w)} exceeds the evaluation bound {L.max_eval_degree}")
    return _apply(_linear_form(w, L.gb, L.diagonal, L.cache), L.c, L.field)


def moment_matrix(L: MomentFunctional, words: Sequence[Word]) -> MomentMatrix:
    """Entries L(star(u) * v) over standard monomials."""
    _check_standard(words, L.gb)
    if words and 2 * max(len(w) for w in words) > L.max_eval_degree:
        raise DegreeBoundError("Moment matrix entries exceed the evaluation bound")
    g = L.gb.g
    entries = tuple(tuple(evaluate_word(L, star_word(u, g) + v) for v in words) for u in words)
    return MomentMatrix(tuple(words), entries, L.field)


def moment_matrix_of_polys(L: MomentFunctional, polys: Sequence[Polynomial]) -> MomentMatrix:
    entries = tuple(tuple(evaluate_functional(L, u.star() * v) for v in polys) for u in polys)
    return MomentMatrix(tuple(polys), entries, L.field)


def is_positive_definite(M: MomentMatrix) -> bool:
    return positive_definite(M.rows(), M.field)[0]


def verify_functional(L: MomentFunctional, d: int) -> FunctionalReport:
    """Certify hermitian symmetry, vanishing on I and positivity through degree d."""
    if 2 * d > L.max_eval_degree:
        raise DegreeBoundError(f"2*{d} exceeds the evaluation bound {L.max_eval_degree}")
    gb, fm = L.gb, L.field
    failures: List[str] = []

    words = words_up_to(gb.g, 2 * d)
    hermitian = True
    for w in words:
        if evaluate_word(L, star_word(w, gb.g)) != fm.conjugate(evaluate_word(L, w)):
            hermitian = False
            failures.append(f"hermitian symmetry fails on word {w}")
            break

    vanishes = True
    triples = ideal_basis_words(gb, 2 * d)
    for u, idx, v in triples:
        element = Polynomial.monomial(u, gb.g, fm) * gb.rules[idx] * Polynomial.monomial(v, gb.g, fm)
        if evaluate_functional(L, element):
            vanishes = False
            failures.append(f"L does not vanish on u*rule[{idx}]*v with u={u}, v={v}")
            break

    M = moment_matrix(L, standard_monomials(gb, d))
    pd, minors = positive_definite(M.rows(), fm)
    if not pd:
        failures.append(f"moment matrix of size {len(M.labels)} is not positive definite")
    return FunctionalReport(d, hermitian, vanishes, pd, minors, len(words), len(triples), failures)
