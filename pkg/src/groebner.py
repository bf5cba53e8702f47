"""Degree-truncated noncommutative Groebner bases of *-ideals.

Completion is the overlap (Bergman) procedure: the leading words of the
current rules are matched suffix-against-prefix, every overlap word up to
the truncation degree gives an S-polynomial, and nonzero normal forms are
adjoined until no obstruction of degree <= D survives.  Obstructions above
D are still reduced at the end; if all of them vanish the finite rule set is
confluent and the basis is flagged complete.
"""

import heapq
import logging
import time
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import DegreeBoundError, ImproperIdealError, PreconditionError
from .freepoly import (
    FieldMode,
    ONE_WORD,
    PolyClass,
    Polynomial,
    Word,
    classify,
    contains_factor,
    leading_term,
    word_key,
    words_of_degree,
)
from .linalg import SparseEchelon
from .metrics import PerformanceMetrics

logger = logging.getLogger(__name__)

Cofactor = Tuple[object, Word, int, Word]


class MembershipVerdict(Enum):
    MEMBER = "member"
    NON_MEMBER = "non_member"
    UNKNOWN_BEYOND_BOUND = "unknown_beyond_bound"


class CodimVerdict(Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    UNKNOWN = "unknown"


def star_ideal_generators(P: Sequence[Polynomial]) -> List[Polynomial]:
    """P together with its stars, without duplicates."""
    if not P:
        raise PreconditionError("star_ideal_generators needs at least one generator")
    out: List[Polynomial] = []
    for p in P:
        if p.is_zero():
            raise PreconditionError("Zero generator")
        if p not in out:
            out.append(p)
    for p in list(out):
        s = p.star()
        if s not in out:
            out.append(s)
    return out


@dataclass(frozen=True)
class IdealPresentation:
    """Generators of a *-ideal; the flags are derived, never supplied."""
    generators: Tuple[Polynomial, ...]
    g: int
    field: FieldMode
    star_closed: bool
    homogeneous: bool
    analytic_generated: bool

    @classmethod
    def from_generators(cls, generators: Sequence[Polynomial], g: Optional[int] = None,
                        field: Optional[FieldMode] = None) -> "IdealPresentation":
        gens = tuple(generators)
        if gens:
            g = gens[0].g if g is None else g
            field = gens[0].field if field is None else field
        if g is None:
            raise PreconditionError("An empty presentation needs an explicit g")
        field = field or FieldMode.RATIONAL
        for p in gens:
            if p.g != g or p.field is not field:
                raise PreconditionError("Generators disagree on g or field")
            if p.is_zero():
                raise PreconditionError("Zero generator")
        star_closed = all(p.star() in gens for p in gens)
        homogeneous = all(p.is_homogeneous() for p in gens)
        analytic = all(classify(p) in (PolyClass.ANALYTIC, PolyClass.ANTIANALYTIC) for p in gens)
        return cls(gens, g, field, star_closed, homogeneous, analytic)

    def max_degree(self) -> int:
        return max((p.degree() for p in self.generators), default=0)

    def closed_generators(self) -> List[Polynomial]:
        return star_ideal_generators(self.generators) if self.generators else []


def _monic(p: Polynomial) -> Polynomial:
    _, lc = leading_term(p)
    return p.scale(p.field.one / lc)


class _RewriteSystem:
    """Lead -> tail lookup used by the reduction loop."""

    def __init__(self, rules: Sequence[Polynomial]):
        self.rules = list(rules)
        self.tails: Dict[Word, Dict[Word, object]] = {}
        self.index: Dict[Word, int] = {}
        for i, r in enumerate(self.rules):
            lead, _ = leading_term(r)
            self.tails[lead] = {w: -c for w, c in r.terms.items() if w != lead}
            self.index[lead] = i
        self.lengths = sorted({len(w) for w in self.tails})

    def find(self, w: Word) -> Optional[Tuple[int, Word]]:
        """Leftmost, then shortest, occurrence of a leading word in w."""
        n = len(w)
        for i in range(n + 1):
            for L in self.lengths:
                if i + L > n:
                    break
                f = w[i:i + L]
                if f in self.tails:
                    return i, f
        return None

    def normal_form(self, terms: Dict[Word, object], field: FieldMode,
                    cofactors: Optional[List[Cofactor]] = None,
                    metrics: Optional[PerformanceMetrics] = None) -> Dict[Word, object]:
        work = {w: c for w, c in terms.items() if c}
        heap = [(-len(w), tuple(-x for x in w), w) for w in work]
        heapq.heapify(heap)
        result: Dict[Word, object] = {}
        steps = 0
        while heap:
            _, _, w = heapq.heappop(heap)
            c = work.pop(w, None)
            if c is None:
                continue
            hit = self.find(w)
            if hit is None:
                result[w] = c
                continue
            steps += 1
            i, lead = hit
            u, v = w[:i], w[i + len(lead):]
            if cofactors is not None:
                cofactors.append((c, u, self.index[lead], v))
            for t, tc in self.tails[lead].items():
                nw = u + t + v
                s = work.get(nw, field.zero) + c * tc
                if s:
                    if nw not in work:
                        heapq.heappush(heap, (-len(nw), tuple(-x for x in nw), nw))
                    work[nw] = s
                else:
                    work.pop(nw, None)
        if metrics is not None:
            metrics.record_counter("rewrite_steps", steps)
        return result


def interreduce(polys: Sequence[Polynomial]) -> List[Polynomial]:
    """Monic interreduced set generating the same two-sided ideal."""
    if not polys:
        return []
    g, fm = polys[0].g, polys[0].field
    pending = [_monic(p) for p in polys if not p.is_zero()]
    result: Dict[Word, Polynomial] = {}
    while pending:
        pending.sort(key=lambda p: word_key(leading_term(p)[0]))
        p = pending.pop(0)
        r = Polynomial._raw(_RewriteSystem(list(result.values())).normal_form(p.terms, fm), g, fm)
        if r.is_zero():
            continue
        r = _monic(r)
        lead, _ = leading_term(r)
        if lead == ONE_WORD:
            return [Polynomial.constant(1, g, fm)]
        for other in list(result):
            if contains_factor(other, lead):
                pending.append(result.pop(other))
        result[lead] = r
    ordered = [result[k] for k in sorted(result, key=word_key)]
    system = _RewriteSystem(ordered)
    reduced = []
    for r in ordered:
        lead, _ = leading_term(r)
        tail = {w: c for w, c in r.terms.items() if w != lead}
        nf = system.normal_form(tail, fm)
        nf[lead] = fm.one
        reduced.append(Polynomial._raw(nf, g, fm))
    return reduced


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced monic rules sorted by leading word, plus the truncation certificate."""
    rules: Tuple[Polynomial, ...]
    completion_degree: int
    complete: bool
    g: int
    field: FieldMode
    homogeneous: bool
    analytic_generated: bool
    _system: _RewriteSystem = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_system", _RewriteSystem(self.rules))

    @property
    def leading_words(self) -> List[Word]:
        return [leading_term(r)[0] for r in self.rules]

    @property
    def improper(self) -> bool:
        return any(leading_term(r)[0] == ONE_WORD for r in self.rules)

    def exact_through(self, d) -> bool:
        """True when reductions of degree <= d are certified."""
        return self.complete or (self.homogeneous and d <= self.completion_degree)


def _obstructions(rules: Sequence[Polynomial], max_degree: Optional[int], min_degree: int = 0):
    """All suffix/prefix overlaps of leading words, in processing order."""
    leads = [leading_term(r)[0] for r in rules]
    found = []
    for i, a in enumerate(leads):
        for j, b in enumerate(leads):
            for s in range(1, min(len(a), len(b))):
                if a[len(a) - s:] != b[:s]:
                    continue
                w = a + b[s:]
                if max_degree is not None and len(w) > max_degree:
                    continue
                if len(w) < min_degree:
                    continue
                found.append((word_key(w), i, j, s))
    found.sort()
    return found


def _s_polynomial(rules: Sequence[Polynomial], i: int, j: int, s: int) -> Polynomial:
    ri, rj = rules[i], rules[j]
    a, _ = leading_term(ri)
    b, _ = leading_term(rj)
    g, fm = ri.g, ri.field
    right = Polynomial.monomial(b[s:], g, fm)
    left = Polynomial.monomial(a[:len(a) - s], g, fm)
    return ri * right - left * rj


def _collapsed(I: IdealPresentation, D: int) -> GroebnerBasis:
    logger.debug("Ideal collapsed to the whole algebra")
    return GroebnerBasis((Polynomial.constant(1, I.g, I.field),), D, True, I.g, I.field,
                         I.homogeneous, I.analytic_generated)


def complete(I: IdealPresentation, D: int, metrics: Optional[PerformanceMetrics] = None) -> GroebnerBasis:
    """Complete the *-ideal of I's generators up to overlap degree D."""
    if D < I.max_degree():
        raise DegreeBoundError(f"Truncation degree {D} is below generator degree {I.max_degree()}")
    start = time.perf_counter()
    gens = I.closed_generators()
    for p in gens:
        if classify(p) is PolyClass.CONSTANT:
            raise ImproperIdealError("A nonzero constant generator makes the ideal improper")
    rules = interreduce(gens)
    if rules and leading_term(rules[0])[0] == ONE_WORD:
        return _collapsed(I, D)

    processed: Set[Tuple[Polynomial, Polynomial, int]] = set()
    fm = I.field

    def next_obstruction(use_cache: bool) -> Optional[Polynomial]:
        system = _RewriteSystem(rules)
        for _, i, j, s in _obstructions(rules, D):
            key = (rules[i], rules[j], s)
            if use_cache:
                if key in processed:
                    continue
                processed.add(key)
            if metrics is not None:
                metrics.record_counter("obstructions")
            h = system.normal_form(_s_polynomial(rules, i, j, s).terms, fm, metrics=metrics)
            if h:
                return Polynomial._raw(h, I.g, fm)
        return None

    while True:
        new = next_obstruction(use_cache=True)
        if new is None:
            new = next_obstruction(use_cache=False)
            if new is None:
                break
        if classify(new) is PolyClass.CONSTANT:
            return _collapsed(I, D)
        if metrics is not None:
            metrics.record_counter("rules_added")
        logger.debug("Adjoining rule of degree %s (%d rules)", new.degree(), len(rules) + 1)
        rules = interreduce(rules + [new])
        if leading_term(rules[0])[0] == ONE_WORD:
            return _collapsed(I, D)

    system = _RewriteSystem(rules)
    unresolved = 0
    for _, i, j, s in _obstructions(rules, None, min_degree=D + 1):
        if system.normal_form(_s_polynomial(rules, i, j, s).terms, fm):
            unresolved += 1
    if unresolved:
        logger.debug("%d obstructions above degree %d remain unresolved", unresolved, D)
    gb = GroebnerBasis(tuple(rules), D, unresolved == 0, I.g, fm, I.homogeneous, I.analytic_generated)
    if metrics is not None:
        metrics.record_latency("groebner_complete", (time.perf_counter() - start) * 1000)
    return gb


def reduce(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    if p.g != gb.g or p.field is not gb.field:
        raise PreconditionError("Polynomial and basis disagree on g or field")
    return Polynomial._raw(gb._system.normal_form(p.terms, gb.field), gb.g, gb.field)


def reduce_with_cofactors(p: Polynomial, gb: GroebnerBasis) -> Tuple[Polynomial, List[Cofactor]]:
    """Normal form plus (coefficient, u, rule index, v) with p = nf + sum c*u*rule*v."""
    if p.g != gb.g or p.field is not gb.field:
        raise PreconditionError("Polynomial and basis disagree on g or field")
    cofactors: List[Cofactor] = []
    nf = gb._system.normal_form(p.terms, gb.field, cofactors=cofactors)
    return Polynomial._raw(nf, gb.g, gb.field), cofactors


def expand_cofactors(cofactors: Sequence[Cofactor], gb: GroebnerBasis) -> Polynomial:
    total = Polynomial.zero(gb.g, gb.field)
    for c, u, idx, v in cofactors:
        left = Polynomial.monomial(u, gb.g, gb.field, c)
        right = Polynomial.monomial(v, gb.g, gb.field)
        total = total + left * gb.rules[idx] * right
    return total


def member(p: Polynomial, gb: GroebnerBasis) -> MembershipVerdict:
    nf = reduce(p, gb)
    if nf.is_zero():
        return MembershipVerdict.MEMBER
    if gb.exact_through(p.degree()):
        return MembershipVerdict.NON_MEMBER
    return MembershipVerdict.UNKNOWN_BEYOND_BOUND


def _extends_standard(w: Word, leads: Set[Word], lengths: Sequence[int]) -> bool:
    """w is standard given that w[:-1] is: only its suffixes need checking."""
    n = len(w)
    for L in lengths:
        if L > n:
            break
        if w[n - L:] in leads:
            return False
    return True


def standard_monomials(gb: GroebnerBasis, d: int) -> List[Word]:
    """Words of degree <= d avoiding every leading word, in increasing order."""
    if d > gb.completion_degree and not gb.complete:
        raise DegreeBoundError(f"Degree {d} exceeds the certified bound {gb.completion_degree}")
    if gb.improper:
        return []
    leads = set(gb.leading_words)
    lengths = sorted({len(w) for w in leads})
    level: List[Word] = [ONE_WORD]
    out = list(level)
    for _ in range(d):
        level = [w + (c,) for w in level for c in range(2 * gb.g)
                 if _extends_standard(w + (c,), leads, lengths)]
        if not level:
            break
        out.extend(level)
    return out


def _has_cycle(nodes: List[Word], edges: Dict[Word, List[Word]]) -> bool:
    WHITE, GREY, BLACK = 0, 1, 2
    color = {n: WHITE for n in nodes}
    for root in nodes:
        if color[root] != WHITE:
            continue
        stack = [(root, iter(edges.get(root, [])))]
        color[root] = GREY
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = BLACK
                stack.pop()
                continue
            if color[nxt] == GREY:
                return True
            if color[nxt] == WHITE:
                color[nxt] = GREY
                stack.append((nxt, iter(edges.get(nxt, []))))
    return False


def _normal_word_graph_is_acyclic(gb: GroebnerBasis) -> bool:
    """Ufnarovski graph: standard words of length m-1, edges labelled by standard words of length m."""
    leads = set(gb.leading_words)
    lengths = sorted({len(w) for w in leads})
    m = max(lengths)
    level: List[Word] = [ONE_WORD]
    for _ in range(m - 1):
        level = [w + (c,) for w in level for c in range(2 * gb.g)
                 if _extends_standard(w + (c,), leads, lengths)]
    edges: Dict[Word, List[Word]] = {}
    for s in level:
        for c in range(2 * gb.g):
            w = s + (c,)
            if _extends_standard(w, leads, lengths):
                edges.setdefault(s, []).append(w[1:])
    return not _has_cycle(level, edges)


def _count_standard(gb: GroebnerBasis) -> int:
    leads = set(gb.leading_words)
    lengths = sorted({len(w) for w in leads})
    level: List[Word] = [ONE_WORD]
    total = 0
    while level:
        total += len(level)
        level = [w + (c,) for w in level for c in range(2 * gb.g)
                 if _extends_standard(w + (c,), leads, lengths)]
    return total


def finite_codimension(gb: GroebnerBasis) -> Tuple[CodimVerdict, Optional[int]]:
    """Decide dim F<x,x*>/I < infinity from the normal-word automaton."""
    if gb.improper:
        return CodimVerdict.FINITE, 0
    if not gb.rules:
        return CodimVerdict.INFINITE, None
    acyclic = _normal_word_graph_is_acyclic(gb)
    if gb.complete:
        if acyclic:
            return CodimVerdict.FINITE, _count_standard(gb)
        return CodimVerdict.INFINITE, None
    if gb.homogeneous:
        for k in range(gb.completion_degree + 1):
            if not standard_monomials_of_degree(gb, k):
                return CodimVerdict.FINITE, len(standard_monomials(gb, k))
    if acyclic:
        # the true standard set is contained in the truncated one
        return CodimVerdict.FINITE, None
    return CodimVerdict.UNKNOWN, None


def standard_monomials_of_degree(gb: GroebnerBasis, k: int) -> List[Word]:
    return [w for w in standard_monomials(gb, k) if len(w) == k]


@dataclass(frozen=True)
class SplitResult:
    holds: bool
    analytic: Tuple[Polynomial, ...]
    antianalytic: Tuple[Polynomial, ...]


def star_split_check(gb: GroebnerBasis) -> SplitResult:
    """Partition the rules into analytic G and antianalytic H*."""
    if not gb.analytic_generated:
        raise PreconditionError("star_split_check needs an analytic-generated *-ideal")
    G, H = [], []
    holds = True
    for r in gb.rules:
        kind = classify(r)
        if kind is PolyClass.ANALYTIC:
            G.append(r)
        elif kind is PolyClass.ANTIANALYTIC:
            H.append(r)
        else:
            holds = False
    return SplitResult(holds, tuple(G), tuple(H))


def is_reduced_basis(gb: GroebnerBasis) -> bool:
    leads = gb.leading_words
    for r in gb.rules:
        lead, lc = leading_term(r)
        if lc != gb.field.one:
            return False
        for other in leads:
            if other == lead:
                continue
            if any(contains_factor(w, other) for w in r.terms):
                return False
    return True


def span_oracle(generators: Sequence[Polynomial], D: int) -> SparseEchelon:
    """Echelon basis of span{u*f*v : f a generator or its star, deg(ufv) <= D}."""
    gens = star_ideal_generators(generators)
    g, fm = gens[0].g, gens[0].field
    echelon = SparseEchelon(fm, key=word_key)
    for f in gens:
        room = D - f.degree()
        for total in range(room + 1):
            for split in range(total + 1):
                for u in words_of_degree(g, split):
                    for v in words_of_degree(g, total - split):
                        echelon.add({u + w + v: c for w, c in f.terms.items()})
    return echelon


def span_oracle_member(p: Polynomial, generators: Sequence[Polynomial], D: int,
                       echelon: Optional[SparseEchelon] = None) -> bool:
    echelon = echelon or span_oracle(generators, D)
    return echelon.contains(dict(p.terms))


def ideal_basis_words(gb: GroebnerBasis, d: int) -> List[Tuple[Word, int, Word]]:
    """Triples (u, rule index, v) with deg(u * lead * v) <= d."""
    out = []
    for idx, r in enumerate(gb.rules):
        lead, _ = leading_term(r)
        room = d - len(lead)
        for total in range(room + 1):
            for split in range(total + 1):
                for u in words_of_degree(gb.g, split):
                    for v in words_of_degree(gb.g, total - split):
                        out.append((u, idx, v))
    return out


def star_rules_vanish(gb: GroebnerBasis) -> bool:
    return all(reduce(r.star(), gb).is_zero() for r in gb.rules)
