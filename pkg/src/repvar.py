"""Evaluation at matrix tuples, hard/soft zeros, vanishing ideals and commutants."""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from .errors import ConstructionError, PreconditionError
from .freepoly import FieldMode, Polynomial, Word, word_key, words_up_to
from .linalg import (
    SparseEchelon,
    conjugate_transpose,
    identity,
    is_zero,
    nullspace,
    positive_definite,
    to_matrix,
    trace,
    zeros,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MatrixTuple:
    """g square n x n matrices; the adjoint of X_i is its conjugate transpose."""
    n: int
    g: int
    X: Tuple[DomainMatrix, ...]
    field: FieldMode = FieldMode.RATIONAL

    @classmethod
    def from_rows(cls, matrices: Sequence[Sequence[Sequence[object]]],
                  field: FieldMode = FieldMode.RATIONAL) -> "MatrixTuple":
        if not matrices:
            raise PreconditionError("A matrix tuple needs at least one matrix")
        n = len(matrices[0])
        mats = []
        for rows in matrices:
            if len(rows) != n or any(len(r) != n for r in rows):
                raise PreconditionError(f"Every matrix must be {n}x{n}")
            mats.append(to_matrix(rows, field, n))
        return cls(n, len(mats), tuple(mats), field)

    @classmethod
    def scalars(cls, values: Sequence[object], field: FieldMode = FieldMode.RATIONAL) -> "MatrixTuple":
        return cls.from_rows([[[v]] for v in values], field)

    def adjoint(self, i: int) -> DomainMatrix:
        return conjugate_transpose(self.X[i], self.field)

    def letter_matrices(self) -> Dict[int, DomainMatrix]:
        mats = {i: m for i, m in enumerate(self.X)}
        mats.update({self.g + i: self.adjoint(i) for i in range(self.g)})
        return mats

    def rows(self) -> List[List[List[object]]]:
        return [m.to_list() for m in self.X]


class ZeroClass(Enum):
    HARD = "hard"
    SOFT_ONLY = "soft_only"
    NONZERO = "nonzero"


class CommutantLabel(Enum):
    REDUCIBLE = "reducible"
    FULL_REAL = "full_real"
    COMPLEX_TYPE = "complex_type"
    QUATERNION_TYPE = "quaternion_type"
    FULL_COMPLEX = "full_complex"


@dataclass(frozen=True)
class CommutantType:
    commutant_dim: int
    label: CommutantLabel
    algebra_dim: int
    n: int

    @property
    def irreducible(self) -> bool:
        return self.label is not CommutantLabel.REDUCIBLE


class _WordProducts:
    """Memoised products word(X), built one letter at a time from shorter prefixes."""

    def __init__(self, mats: Mapping[int, DomainMatrix], n: int, field: FieldMode):
        self.mats = mats
        self.cache: Dict[Word, DomainMatrix] = {(): identity(n, field)}

    def __call__(self, w: Word) -> DomainMatrix:
        hit = self.cache.get(w)
        if hit is None:
            if w[-1] not in self.mats:
                raise PreconditionError(f"Letter code {w[-1]} has no matrix")
            hit = self(w[:-1]) * self.mats[w[-1]]
            self.cache[w] = hit
        return hit


def evaluate_letters(p: Polynomial, mats: Mapping[int, DomainMatrix], n: int,
                     field: FieldMode, products: Optional[_WordProducts] = None) -> DomainMatrix:
    """Substitute a matrix for every letter code and sum the word products."""
    products = products or _WordProducts(mats, n, field)
    total = zeros(n, n, field)
    for w, coeff in p.sorted_terms():
        total = total + products(w) * coeff
    return total


def _check_tuple(p: Polynomial, X: MatrixTuple):
    if p.g != X.g:
        raise PreconditionError(f"Polynomial has g={p.g} but the tuple has g={X.g}")
    if p.field is not X.field:
        raise PreconditionError("Polynomial and tuple disagree on the field")


def evaluate_at(p: Polynomial, X: MatrixTuple) -> DomainMatrix:
    _check_tuple(p, X)
    return evaluate_letters(p, X.letter_matrices(), X.n, X.field)


def determinant(p: Polynomial, X: MatrixTuple):
    return evaluate_at(p, X).det()


def zero_class(p: Polynomial, X: MatrixTuple) -> ZeroClass:
    value = evaluate_at(p, X)
    if is_zero(value):
        return ZeroClass.HARD
    if not value.det():
        return ZeroClass.SOFT_ONLY
    return ZeroClass.NONZERO


def hard_variety(P: Sequence[Polynomial], candidates: Sequence[MatrixTuple]) -> List[MatrixTuple]:
    """The candidates at which every polynomial of P vanishes."""
    return [X for X in candidates if all(is_zero(evaluate_at(p, X)) for p in P)]


def _flatten(M: DomainMatrix) -> List[object]:
    return [x for row in M.to_list() for x in row]


def _kernel_basis(words: List[Word], columns: List[List[object]], g: int,
                  field: FieldMode) -> Tuple[List[Polynomial], SparseEchelon]:
    """Canonical echelon basis of {sum c_w w : sum c_w columns[w] = 0}."""
    nrows = len(columns[0]) if columns else 0
    rows = [[columns[j][i] for j in range(len(words))] for i in range(nrows)]
    echelon = SparseEchelon(field, key=word_key)
    for vec in nullspace(rows, field, len(words)):
        echelon.add({words[j]: c for j, c in enumerate(vec) if c})
    basis = [Polynomial._raw(row, g, field) for _, row in echelon.reduced_rows()]
    return basis, echelon


def _assert_closed(basis: Sequence[Polynomial], echelon: SparseEchelon, D: int, two_sided: bool):
    if not basis:
        return
    g = basis[0].g
    for b in basis:
        if two_sided and not echelon.contains(dict(b.star().terms)):
            raise ConstructionError("Vanishing ideal is not closed under the involution")
        if b.degree() + 1 > D:
            continue
        for code in range(2 * g):
            letter = Polynomial.monomial((code,), g, b.field)
            products = [letter * b, b * letter] if two_sided else [letter * b]
            for q in products:
                if not echelon.contains(dict(q.terms)):
                    raise ConstructionError("Vanishing ideal is not closed under multiplication")


def vanishing_ideal(S: Sequence[MatrixTuple], D: int) -> List[Polynomial]:
    """Echelon basis of the polynomials of degree <= D vanishing at every tuple of S."""
    if not S:
        raise PreconditionError("vanishing_ideal needs at least one tuple")
    g, fm = S[0].g, S[0].field
    if any(X.g != g or X.field is not fm for X in S):
        raise PreconditionError("Tuples disagree on g or field")
    words = words_up_to(g, D)
    products = [_WordProducts(X.letter_matrices(), X.n, fm) for X in S]
    columns = [[x for prod in products for x in _flatten(prod(w))] for w in words]
    basis, echelon = _kernel_basis(words, columns, g, fm)
    _assert_closed(basis, echelon, D, two_sided=True)
    logger.debug("Vanishing ideal to degree %d has dimension %d", D, len(basis))
    return basis


def left_vanishing_ideal(X: MatrixTuple, v: Sequence[object], D: int) -> List[Polynomial]:
    """Echelon basis of {p : deg p <= D, p(X) v = 0}."""
    fm = X.field
    vec = [fm.convert(x) for x in v]
    if len(vec) != X.n:
        raise PreconditionError(f"Vector has length {len(vec)}, expected {X.n}")
    if not any(vec):
        raise PreconditionError("left_vanishing_ideal needs a nonzero vector")
    words = words_up_to(X.g, D)
    prod = _WordProducts(X.letter_matrices(), X.n, fm)
    column = to_matrix([[x] for x in vec], fm, 1)
    columns = [_flatten(prod(w) * column) for w in words]
    basis, echelon = _kernel_basis(words, columns, X.g, fm)
    _assert_closed(basis, echelon, D, two_sided=False)
    return basis


def _commutant_basis(X: MatrixTuple) -> List[DomainMatrix]:
    """Basis of {T : T A = A T for every X_i and X_i^H}."""
    n, fm = X.n, X.field
    rows = []
    for A in list(X.X) + [X.adjoint(i) for i in range(X.g)]:
        a = A.to_list()
        for r in range(n):
            for c in range(n):
                row = [fm.zero] * (n * n)
                for k in range(n):
                    row[r * n + k] = row[r * n + k] + a[k][c]
                    row[k * n + c] = row[k * n + c] - a[r][k]
                rows.append(row)
    return [to_matrix([vec[r * n:(r + 1) * n] for r in range(n)], fm, n)
            for vec in nullspace(rows, fm, n * n)]


def generated_algebra_dim(X: MatrixTuple) -> int:
    """Dimension of the span of all words in X_i and X_i^H, by closure."""
    n, fm = X.n, X.field
    gens = list(X.letter_matrices().values())
    echelon = SparseEchelon(fm)
    start = identity(n, fm)
    echelon.add(dict(enumerate(_flatten(start))))
    frontier = [start]
    while frontier:
        fresh = []
        for M in frontier:
            for A in gens:
                P = A * M
                if echelon.add(dict(enumerate(_flatten(P)))):
                    fresh.append(P)
        frontier = fresh
    return len(echelon)


def _scalar_part(M: DomainMatrix, n: int, fm: FieldMode):
    return trace(M, fm) / fm.convert(n)


def _traceless(M: DomainMatrix, n: int, fm: FieldMode) -> DomainMatrix:
    return M - identity(n, fm) * _scalar_part(M, n, fm)


def _is_complex_type(basis: List[DomainMatrix], n: int, fm: FieldMode) -> bool:
    """A two-dimensional commutant span{1, B0} is a field iff B0^2 = a + b B0 has b^2 + 4a < 0."""
    B0 = next((b for b in (_traceless(m, n, fm) for m in basis) if not is_zero(b)), None)
    if B0 is None:
        return False
    sq = B0 * B0
    alpha = _scalar_part(sq, n, fm)
    rest = _flatten(sq - identity(n, fm) * alpha)
    flat = _flatten(B0)
    pos = next(k for k, x in enumerate(flat) if x)
    beta = rest[pos] / flat[pos]
    return beta * beta + alpha * fm.convert(4) < 0


def _is_quaternion_type(basis: List[DomainMatrix], n: int, fm: FieldMode) -> bool:
    """A four-dimensional noncommutative commutant whose traceless part squares negatively."""
    if all(a * b == b * a for a in basis for b in basis):
        return False
    echelon = SparseEchelon(fm)
    pure = []
    for m in basis:
        t = _traceless(m, n, fm)
        if echelon.add(dict(enumerate(_flatten(t)))):
            pure.append(t)
    form = [[-trace(a * b, fm) for b in pure] for a in pure]
    return positive_definite(form, fm)[0]


def commutant_type(X: MatrixTuple) -> CommutantType:
    basis = _commutant_basis(X)
    dim = len(basis)
    algebra = generated_algebra_dim(X)
    n, fm = X.n, X.field
    if fm is FieldMode.GAUSSIAN_RATIONAL:
        label = CommutantLabel.FULL_COMPLEX if dim == 1 else CommutantLabel.REDUCIBLE
    elif dim == 1:
        label = CommutantLabel.FULL_REAL
    elif dim == 2 and _is_complex_type(basis, n, fm):
        label = CommutantLabel.COMPLEX_TYPE
    elif dim == 4 and _is_quaternion_type(basis, n, fm):
        label = CommutantLabel.QUATERNION_TYPE
    else:
        label = CommutantLabel.REDUCIBLE
    if label in (CommutantLabel.FULL_REAL, CommutantLabel.FULL_COMPLEX) and algebra != n * n:
        raise ConstructionError(f"Scalar commutant but the generated algebra has dimension {algebra} != {n * n}")
    logger.debug("Commutant dimension %d, algebra dimension %d, label %s", dim, algebra, label.value)
    return CommutantType(dim, label, algebra, n)


def soft_equals_hard(X: MatrixTuple) -> bool:
    """For irreducible X: the image algebra has no zero divisors."""
    ctype = commutant_type(X)
    if not ctype.irreducible:
        raise PreconditionError("soft_equals_hard needs an irreducible tuple")
    # M_k(D) is a division algebra iff k = 1, i.e. n equals dim D
    return X.n == ctype.commutant_dim


@dataclass
class SoftConditionReport:
    entries: List[Dict[str, object]]
    division_condition: bool
    hard_condition: bool

    @property
    def soft_zero_count(self) -> int:
        return sum(1 for e in self.entries if e["soft_zero"])

    @property
    def passed(self) -> bool:
        return self.division_condition and self.hard_condition


def soft_condition_check(p: Polynomial, reps: Sequence[MatrixTuple]) -> SoftConditionReport:
    """At every soft zero among reps: is soft = hard for the rep, and is p(X) = 0?"""
    entries = []
    division, hard = True, True
    for k, X in enumerate(reps):
        ctype = commutant_type(X)
        if not ctype.irreducible:
            raise PreconditionError(f"Representation {k} is reducible")
        value = evaluate_at(p, X)
        soft = not value.det()
        entry: Dict[str, object] = {"index": k, "n": X.n, "label": ctype.label.value, "soft_zero": soft}
        if soft:
            entry["soft_equals_hard"] = X.n == ctype.commutant_dim
            entry["hard_zero"] = is_zero(value)
            division = division and entry["soft_equals_hard"]
            hard = hard and entry["hard_zero"]
        entries.append(entry)
    return SoftConditionReport(entries, division, hard)


def trace_value(p: Polynomial, X: MatrixTuple) -> Fraction:
    """Tr p(X) as a Fraction (real part in Qi mode)."""
    fm = X.field
    t = fm.real_part(trace(evaluate_at(p, X), fm))
    return Fraction(int(t.numerator), int(t.denominator))


def star_compatible(p: Polynomial, X: MatrixTuple) -> bool:
    """eval(star p) equals the conjugate transpose of eval(p)."""
    return evaluate_at(p.star(), X) == conjugate_transpose(evaluate_at(p, X), X.field)
