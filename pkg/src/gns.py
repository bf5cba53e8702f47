"""Finite matrix witnesses for homogeneous analytic *-ideals.

The witness space W is spanned by the classes [a*b] with a analytic of
degree <= d and b of degree <= d, taken modulo I^(d) (I plus every analytic
monomial of degree d+1).  Vectors are stored as coordinates over a basis of
class representatives; the inner product is the Gram form of the moment
functional, so no square roots are ever taken.
"""

import logging
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.matrices import DomainMatrix

from .errors import ConstructionError, DegreeBoundError, ImproperIdealError, PreconditionError
from .freepoly import (
    FieldMode,
    Polynomial,
    Word,
    analytic_words_up_to,
    homogeneous_components,
    word_key,
    words_of_degree,
    words_up_to,
)
from .functional import ConstantPolicy, DEFAULT_POLICY, MomentFunctional, build_functional, evaluate_functional
from .groebner import GroebnerBasis, IdealPresentation, MembershipVerdict, complete, member, reduce
from .linalg import GramFactorization, conjugate_transpose, is_zero, max_row_sum, to_matrix
from .metrics import PerformanceMetrics
from .repvar import evaluate_letters

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GNSWitness:
    d: int
    basis: Tuple[Polynomial, ...]
    gram: DomainMatrix
    xop: Tuple[DomainMatrix, ...]
    xadj: Tuple[DomainMatrix, ...]
    gb: GroebnerBasis
    functional: MomentFunctional
    g: int
    field: FieldMode
    scale: Fraction = Fraction(1)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def letter_matrices(self) -> Dict[int, DomainMatrix]:
        mats = {i: m for i, m in enumerate(self.xop)}
        mats.update({self.g + i: m for i, m in enumerate(self.xadj)})
        return mats


@dataclass
class WitnessReport:
    generators_vanish: bool
    adjoint_identity: bool
    probes: List[Dict[str, object]]
    failures: List[str]

    @property
    def passed(self) -> bool:
        return self.generators_vanish and self.adjoint_identity and not self.failures


def _check_witness_input(I: IdealPresentation):
    if not I.homogeneous:
        raise PreconditionError("Witnesses are built for homogeneous ideals only")
    if not I.analytic_generated:
        raise PreconditionError("Witnesses are built for analytic-generated *-ideals only")
    if any(p.degree() == 0 for p in I.generators):
        raise ImproperIdealError("A nonzero constant generator makes the ideal improper")


def truncate_ideal(I: IdealPresentation, d: int) -> IdealPresentation:
    """I together with every analytic monomial of degree d+1, star-closed."""
    _check_witness_input(I)
    if d < 0:
        raise PreconditionError("Truncation degree must be nonnegative")
    gens = list(I.closed_generators())
    for w in words_of_degree(I.g, d + 1):
        if all(c < I.g for c in w):
            m = Polynomial.monomial(w, I.g, I.field)
            for p in (m, m.star()):
                if p not in gens:
                    gens.append(p)
    return IdealPresentation.from_generators(gens, I.g, I.field)


def _spanning_words(g: int, d: int) -> List[Word]:
    words = {a + b for a in analytic_words_up_to(g, d) for b in words_up_to(g, d)}
    return sorted(words, key=word_key)


def _column(L: MomentFunctional, basis: Sequence[Polynomial], t: Polynomial) -> List[object]:
    return [evaluate_functional(L, b.star() * t) for b in basis]


def build_witness(I: IdealPresentation, d: int, policy: ConstantPolicy = DEFAULT_POLICY,
                  metrics: Optional[PerformanceMetrics] = None) -> GNSWitness:
    """Compress left multiplication on the GNS space of I^(d) to W."""
    _check_witness_input(I)
    if d < 1:
        raise PreconditionError("Witness degree must be at least 1")
    start = time.perf_counter()
    Id = truncate_ideal(I, d)
    gb = complete(Id, max(4 * d, Id.max_degree()), metrics=metrics)
    if gb.improper:
        raise ImproperIdealError("The truncated ideal contains 1")
    L = build_functional(gb, 2 * d, policy=policy, metrics=metrics)
    fm, g = I.field, I.g

    fact = GramFactorization(fm)
    basis: List[Polynomial] = []
    seen = set()
    for w in _spanning_words(g, d):
        t = reduce(Polynomial.monomial(w, g, fm), gb)
        if t.is_zero() or t in seen:
            continue
        seen.add(t)
        r = _column(L, basis, t)
        corner = evaluate_functional(L, t.star() * t)
        s = fact.schur_complement(r, corner)
        if not s:
            continue
        if not fm.real_part(s) > 0:
            raise ConstructionError("Gram form is not positive on the witness span")
        fact.append(r, corner)
        basis.append(t)
    logger.debug("Witness space of dimension %d at d=%d", len(basis), d)

    n = len(basis)
    gram_rows = [[evaluate_functional(L, u.star() * v) for v in basis] for u in basis]
    gram = to_matrix(gram_rows, fm, n)

    xop = []
    for i in range(g):
        x = Polynomial.monomial((i,), g, fm)
        cols = []
        for b in basis:
            t = reduce(x * b, gb)
            cols.append([fm.zero] * n if t.is_zero() else fact.solve(_column(L, basis, t)))
        xop.append(to_matrix([[cols[j][k] for j in range(n)] for k in range(n)], fm, n))
    gram_inv = gram.inv() if n else gram
    xadj = [gram_inv * conjugate_transpose(X, fm) * gram for X in xop]
    if metrics is not None:
        metrics.record_latency("build_witness", (time.perf_counter() - start) * 1000)
    return GNSWitness(d, tuple(basis), gram, tuple(xop), tuple(xadj), gb, L, g, fm)


def evaluate_witness(p: Polynomial, w: GNSWitness) -> DomainMatrix:
    """p(X) with x_i -> Xop_i and x_i* -> Xadj_i."""
    if p.g != w.g or p.field is not w.field:
        raise PreconditionError("Polynomial and witness disagree on g or field")
    return evaluate_letters(p, w.letter_matrices(), w.dim, w.field)


def class_coordinates(q: Polynomial, w: GNSWitness) -> List[object]:
    """Coordinates of [q] in the witness basis (scaled by lambda^k per degree)."""
    if q.degree() > w.d:
        raise DegreeBoundError(f"Probe degree {q.degree()} exceeds witness degree {w.d}")
    fm = w.field
    fact = GramFactorization(fm)
    rows = w.gram.to_list()
    for k in range(w.dim):
        fact.append([rows[i][k] for i in range(k)], rows[k][k])
    total = [fm.zero] * w.dim
    for deg, part in homogeneous_components(q).items():
        factor = fm.convert(w.scale ** deg)
        t = reduce(part, w.gb)
        if t.is_zero():
            continue
        coords = fact.solve(_column(w.functional, w.basis, t))
        total = [a + factor * b for a, b in zip(total, coords)]
    return total


def unit_vector(w: GNSWitness) -> List[object]:
    """Coordinates of [1]."""
    one = Polynomial.constant(1, w.g, w.field)
    return class_coordinates(one, w)


def _apply(M: DomainMatrix, v: Sequence[object], fm: FieldMode) -> List[object]:
    col = to_matrix([[x] for x in v], fm, 1)
    return [row[0] for row in (M * col).to_list()]


def gram_adjoint_holds(w: GNSWitness) -> bool:
    """<X u, v> = <u, Xadj v> on basis vectors, i.e. X^H G = G Xadj."""
    fm = w.field
    return all(conjugate_transpose(X, fm) * w.gram == w.gram * Y for X, Y in zip(w.xop, w.xadj))


def verify_witness(w: GNSWitness, I: IdealPresentation, probes: Sequence[Polynomial]) -> WitnessReport:
    fm = w.field
    for q in probes:
        if q.degree() > w.d:
            raise DegreeBoundError(f"Probe degree {q.degree()} exceeds witness degree {w.d}")
    failures: List[str] = []
    vanish = True
    for p in I.closed_generators():
        if not is_zero(evaluate_witness(p, w)):
            vanish = False
            failures.append("a generator does not vanish on the witness")
    adjoint = gram_adjoint_holds(w)
    if not adjoint:
        failures.append("Gram-adjoint identity fails")
    ideal_gb = complete(I, max(w.d, I.max_degree()))
    e1 = unit_vector(w)
    results = []
    for q in probes:
        verdict = member(q, ideal_gb)
        value = evaluate_witness(q, w)
        entry = {"probe": q, "verdict": verdict.value}
        if verdict is MembershipVerdict.MEMBER:
            ok = is_zero(value)
            entry["vanishes"] = ok
        else:
            image = _apply(value, e1, fm)
            expected = class_coordinates(q, w)
            ok = image == expected and any(expected)
            entry["separates"] = ok
        if not ok:
            failures.append(f"probe {len(results)} fails ({verdict.value})")
        results.append(entry)
    return WitnessReport(vanish, adjoint, results, failures)


def _ceil_sqrt(x: Fraction) -> int:
    n = math.ceil(x)
    r = math.isqrt(n)
    return r if r * r >= n else r + 1


def norm_bound_squared(w: GNSWitness, i: int) -> Fraction:
    """||Xadj_i Xop_i||_inf bounds the squared Gram operator norm of X_i."""
    fm = w.field
    bound = max_row_sum(w.xadj[i] * w.xop[i], fm)
    return Fraction(int(bound.numerator), int(bound.denominator))


def scaled(w: GNSWitness, lam: Fraction) -> GNSWitness:
    c = w.field.convert(lam)
    return GNSWitness(w.d, w.basis, w.gram, tuple(X * c for X in w.xop), tuple(Y * c for Y in w.xadj),
                      w.gb, w.functional, w.g, w.field, w.scale * lam)


def bounded_family(I: IdealPresentation, d_max: int, policy: ConstantPolicy = DEFAULT_POLICY,
                   metrics: Optional[PerformanceMetrics] = None) -> List[Tuple[GNSWitness, Fraction]]:
    """Witnesses for d = 1..d_max scaled into the unit ball of the Gram norm."""
    family = []
    for d in range(1, d_max + 1):
        w = build_witness(I, d, policy=policy, metrics=metrics)
        s = max((_ceil_sqrt(norm_bound_squared(w, i)) for i in range(w.g)), default=1)
        lam = Fraction(1, max(s, 1))
        family.append((scaled(w, lam), lam))
    return family


def certified_norm_bound(w: GNSWitness) -> Fraction:
    """Rational B with ||X_i||^2 <= B for every i."""
    return max((norm_bound_squared(w, i) for i in range(w.g)), default=Fraction(0))


def orthonormal_export(w: GNSWitness) -> List[np.ndarray]:
    """Floating-point matrices in a Gram-orthonormal basis, for display only."""
    fm = w.field

    def to_np(M: DomainMatrix) -> np.ndarray:
        rows = M.to_list()
        return np.array([[complex(float(fm.real_part(x)), float(fm.imag_part(x))) for x in r] for r in rows],
                        dtype=complex)

    G = to_np(w.gram)
    chol = np.linalg.cholesky(G)
    inv = np.linalg.inv(chol.conj().T)
    return [chol.conj().T @ to_np(X) @ inv for X in w.xop]
