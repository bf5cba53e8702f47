"""Problem files, command dispatch and JSON rendering for the command line."""

import json
import logging
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from .errors import ParseError, PreconditionError
from .freepoly import FieldMode, Polynomial, Word
from .functional import ConstantPolicy, build_functional, verify_functional
from .gns import bounded_family, build_witness, certified_norm_bound, evaluate_witness, verify_witness
from .groebner import (
    IdealPresentation,
    GroebnerBasis,
    MembershipVerdict,
    complete,
    finite_codimension,
    member,
    reduce,
    standard_monomials,
    star_split_check,
)
from .linalg import is_zero
from .parser import format_poly, format_scalar, format_word, parse_poly
from .quotients import (
    build_qweyl_system,
    hat_member,
    qweyl_canon,
    regular_representation,
    toeplitz_canon,
    verify_qweyl_identities,
    weyl_obstruction,
    z_ideal,
)
from .repvar import (
    MatrixTuple,
    commutant_type,
    evaluate_at,
    left_vanishing_ideal,
    soft_condition_check,
    vanishing_ideal,
    zero_class,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3

DEFAULT_K_VALUES = ("1", "2", "7")


@dataclass
class ProblemFile:
    field: FieldMode
    g: int
    generators: List[Polynomial]
    degree: int
    q: Optional[Fraction] = None
    matrices: Dict[str, MatrixTuple] = dc_field(default_factory=dict)
    vectors: Dict[str, List[object]] = dc_field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], default_field: str = "Q", default_degree: int = 6) -> "ProblemFile":
        if not isinstance(data, dict):
            raise ParseError("A problem file must be a JSON object")
        fm = FieldMode.from_label(data.get("field", default_field))
        try:
            g = int(data["g"])
        except (KeyError, TypeError, ValueError):
            raise ParseError("A problem file needs an integer 'g'")
        generators = [parse_poly(text, g, fm) for text in data.get("generators", [])]
        q = _rational(data["q"], "q") if data.get("q") is not None else None
        matrices = {}
        for name, mats in data.get("matrices", {}).items():
            X = MatrixTuple.from_rows([[[_entry(x, fm) for x in row] for row in m] for m in mats], fm)
            if X.g != g:
                raise PreconditionError(f"Matrix tuple {name!r} has {X.g} matrices but g = {g}")
            matrices[name] = X
        vectors = {name: [_entry(x, fm) for x in vec]
                   for name, vec in data.get("vectors", {}).items()}
        return cls(fm, g, generators, int(data.get("degree", default_degree)), q, matrices, vectors)

    def ideal(self) -> IdealPresentation:
        return IdealPresentation.from_generators(self.generators, self.g, self.field)


def _rational(x, what: str) -> Fraction:
    try:
        return Fraction(str(x))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{what} must be a rational like \"p/q\", got {x!r}")


def _entry(x, fm: FieldMode):
    """Rational entries as "p/q"; Gaussian ones as constant expressions such as "1/2 + 3*i"."""
    if fm is FieldMode.RATIONAL:
        return _rational(x, "Matrix entry")
    p = parse_poly(str(x), 1, fm)
    if p.degree() > 0:
        raise ParseError(f"Matrix entry {x!r} is not a scalar")
    return p.coefficient(())


def load_problem(path: Path, default_field: str = "Q", default_degree: int = 6) -> ProblemFile:
    try:
        with open(path) as f:
            data = json.load(f)
    except json.JSONDecodeError as exc:
        raise ParseError(f"Invalid JSON in {path}: {exc.msg}", exc.pos)
    return ProblemFile.from_dict(data, default_field, default_degree)


@dataclass
class CommandOptions:
    degree: Optional[int] = None
    polys: List[str] = dc_field(default_factory=list)
    q: Optional[str] = None
    matrices: List[str] = dc_field(default_factory=list)
    vector: Optional[str] = None
    algebra: Optional[str] = None
    k_values: List[str] = dc_field(default_factory=list)
    g: Optional[int] = None
    field: str = "Q"
    default_degree: int = 6
    max_doublings: int = 64


Result = Tuple[Dict[str, Any], int]


def _word(w: Word, g: int) -> str:
    return format_word(w, g) if w else "1"


def _matrix(M: DomainMatrix, fm: FieldMode) -> List[List[str]]:
    return [[format_scalar(x, fm) for x in row] for row in M.to_list()]


def _scalar_list(values: Sequence[object], fm: FieldMode) -> List[str]:
    return [format_scalar(x, fm) for x in values]


def _infer_g(texts: Sequence[str]) -> int:
    found = [int(m) for t in texts for m in re.findall(r"x(\d+)", t)]
    return max(found, default=1)


class _Context:
    """Problem data plus parsed flags for one command."""

    def __init__(self, problem: Optional[ProblemFile], options: CommandOptions):
        self.problem = problem
        self.options = options
        if problem is not None:
            self.g, self.field = problem.g, problem.field
        else:
            self.g = options.g or _infer_g(options.polys)
            self.field = FieldMode.from_label(options.field)

    @property
    def degree(self) -> int:
        if self.options.degree is not None:
            return self.options.degree
        return self.problem.degree if self.problem is not None else self.options.default_degree

    def policy(self) -> ConstantPolicy:
        return ConstantPolicy(max_doublings=self.options.max_doublings)

    def need_problem(self) -> ProblemFile:
        if self.problem is None:
            raise PreconditionError("This command needs --problem")
        return self.problem

    def ideal(self) -> IdealPresentation:
        return self.need_problem().ideal()

    def polys(self, g: Optional[int] = None) -> List[Polynomial]:
        if not self.options.polys:
            raise PreconditionError("This command needs at least one --poly")
        return [parse_poly(t, g or self.g, self.field) for t in self.options.polys]

    def gb(self, degree: Optional[int] = None) -> GroebnerBasis:
        I = self.ideal()
        return complete(I, max(degree if degree is not None else self.degree, I.max_degree()))

    def tuples(self) -> List[Tuple[str, MatrixTuple]]:
        problem = self.need_problem()
        names = self.options.matrices or sorted(problem.matrices)
        if not names:
            raise PreconditionError("This command needs a matrix tuple (--matrix or 'matrices' in the problem)")
        out = []
        for name in names:
            if name not in problem.matrices:
                raise PreconditionError(f"Unknown matrix tuple {name!r}")
            out.append((name, problem.matrices[name]))
        return out

    def first_tuple(self) -> Tuple[str, MatrixTuple]:
        return self.tuples()[0]

    def vector(self) -> List[object]:
        problem = self.need_problem()
        name = self.options.vector or next(iter(sorted(problem.vectors)), None)
        if name is None or name not in problem.vectors:
            raise PreconditionError("This command needs a vector (--vector or 'vectors' in the problem)")
        return problem.vectors[name]

    def q(self) -> Fraction:
        if self.options.q is not None:
            return _rational(self.options.q, "--q")
        if self.problem is not None and self.problem.q is not None:
            return self.problem.q
        raise PreconditionError("This command needs --q")


def _gb_payload(gb: GroebnerBasis) -> Dict[str, Any]:
    return {
        "rules": [format_poly(r) for r in gb.rules],
        "leading_words": [_word(w, gb.g) for w in gb.leading_words],
        "completion_degree": gb.completion_degree,
        "complete": gb.complete,
    }


def cmd_gb(ctx: _Context) -> Result:
    return _gb_payload(ctx.gb()), EXIT_OK


def cmd_reduce(ctx: _Context) -> Result:
    gb = ctx.gb()
    results = []
    for p in ctx.polys():
        results.append({
            "input": format_poly(p),
            "normal_form": format_poly(reduce(p, gb)),
            "exact": gb.exact_through(p.degree()),
        })
    return {"results": results}, EXIT_OK


def cmd_member(ctx: _Context) -> Result:
    gb = ctx.gb()
    results = []
    code = EXIT_OK
    for p in ctx.polys():
        verdict = member(p, gb)
        if verdict is not MembershipVerdict.MEMBER:
            code = EXIT_NEGATIVE
        results.append({"input": format_poly(p), "verdict": verdict.value})
    return {"results": results}, code


def cmd_standard_monomials(ctx: _Context) -> Result:
    gb = ctx.gb()
    words = standard_monomials(gb, ctx.degree)
    return {"degree": ctx.degree, "count": len(words), "words": [_word(w, gb.g) for w in words]}, EXIT_OK


def cmd_codim(ctx: _Context) -> Result:
    verdict, codim = finite_codimension(ctx.gb())
    return {"verdict": verdict.value, "codimension": codim}, EXIT_OK


def cmd_split_check(ctx: _Context) -> Result:
    gb = ctx.gb()
    split = star_split_check(gb)
    payload = {
        "holds": split.holds,
        "analytic": [format_poly(r) for r in split.analytic],
        "antianalytic": [format_poly(r) for r in split.antianalytic],
    }
    return payload, EXIT_OK if split.holds else EXIT_NEGATIVE


def _functional(ctx: _Context):
    d = ctx.degree
    gb = ctx.gb(2 * d)
    return build_functional(gb, d, policy=ctx.policy())


def cmd_functional(ctx: _Context) -> Result:
    L = _functional(ctx)
    return {"degree": L.degree, "constants": [str(c) for c in L.constants()]}, EXIT_OK


def cmd_verify_functional(ctx: _Context) -> Result:
    L = _functional(ctx)
    report = verify_functional(L, ctx.degree)
    payload = {
        "degree": report.degree,
        "constants": [str(c) for c in L.constants()],
        "hermitian": report.hermitian,
        "vanishes_on_ideal": report.vanishes_on_ideal,
        "positive_definite": report.positive_definite,
        "leading_minors": _scalar_list(report.minors, L.field),
        "words_checked": report.words_checked,
        "ideal_elements_checked": report.ideal_elements_checked,
        "failures": report.failures,
        "passed": report.passed,
    }
    return payload, EXIT_OK if report.passed else EXIT_NEGATIVE


def _witness_payload(w, I: IdealPresentation) -> Dict[str, Any]:
    fm = w.field
    return {
        "degree": w.d,
        "dim": w.dim,
        "basis": [format_poly(b) for b in w.basis],
        "gram": _matrix(w.gram, fm),
        "xop": [_matrix(X, fm) for X in w.xop],
        "xadj": [_matrix(X, fm) for X in w.xadj],
        "generators_vanish": all(is_zero(evaluate_witness(p, w)) for p in I.closed_generators()),
    }


def cmd_witness(ctx: _Context) -> Result:
    I = ctx.ideal()
    w = build_witness(I, ctx.degree, policy=ctx.policy())
    return _witness_payload(w, I), EXIT_OK


def cmd_verify_witness(ctx: _Context) -> Result:
    I = ctx.ideal()
    w = build_witness(I, ctx.degree, policy=ctx.policy())
    if ctx.options.polys:
        probes = ctx.polys()
    else:
        gb = complete(I, max(w.d, I.max_degree()))
        probes = [Polynomial.monomial(u, I.g, I.field) for u in standard_monomials(gb, w.d)]
    report = verify_witness(w, I, probes)
    payload = {
        "degree": w.d,
        "dim": w.dim,
        "generators_vanish": report.generators_vanish,
        "adjoint_identity": report.adjoint_identity,
        "probes": [{**e, "probe": format_poly(e["probe"])} for e in report.probes],
        "failures": report.failures,
        "passed": report.passed,
    }
    return payload, EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_bounded_family(ctx: _Context) -> Result:
    I = ctx.ideal()
    family = []
    certified = True
    for w, lam in bounded_family(I, ctx.degree, policy=ctx.policy()):
        bound = certified_norm_bound(w)
        certified = certified and bound <= 1
        family.append({
            "degree": w.d,
            "dim": w.dim,
            "scale": str(lam),
            "norm_bound_squared": str(bound),
            "xop": [_matrix(X, w.field) for X in w.xop],
        })
    return {"family": family, "certified": certified}, EXIT_OK if certified else EXIT_NEGATIVE


def cmd_eval(ctx: _Context) -> Result:
    name, X = ctx.first_tuple()
    results = [{"input": format_poly(p), "value": _matrix(evaluate_at(p, X), X.field)} for p in ctx.polys()]
    return {"matrix": name, "results": results}, EXIT_OK


def cmd_zero_class(ctx: _Context) -> Result:
    name, X = ctx.first_tuple()
    results = [{"input": format_poly(p), "class": zero_class(p, X).value} for p in ctx.polys()]
    return {"matrix": name, "results": results}, EXIT_OK


def cmd_vanishing_ideal(ctx: _Context) -> Result:
    named = ctx.tuples()
    basis = vanishing_ideal([X for _, X in named], ctx.degree)
    return {"matrices": [n for n, _ in named], "degree": ctx.degree,
            "basis": [format_poly(b) for b in basis]}, EXIT_OK


def cmd_left_vanishing_ideal(ctx: _Context) -> Result:
    name, X = ctx.first_tuple()
    basis = left_vanishing_ideal(X, ctx.vector(), ctx.degree)
    return {"matrix": name, "degree": ctx.degree, "basis": [format_poly(b) for b in basis]}, EXIT_OK


def cmd_commutant(ctx: _Context) -> Result:
    name, X = ctx.first_tuple()
    ctype = commutant_type(X)
    return {"matrix": name, "n": X.n, "commutant_dim": ctype.commutant_dim,
            "algebra_dim": ctype.algebra_dim, "label": ctype.label.value}, EXIT_OK


def cmd_soft_check(ctx: _Context) -> Result:
    named = ctx.tuples()
    results = []
    code = EXIT_OK
    for p in ctx.polys():
        report = soft_condition_check(p, [X for _, X in named])
        if not report.passed:
            code = EXIT_NEGATIVE
        entries = [{**e, "matrix": named[e["index"]][0]} for e in report.entries]
        results.append({
            "input": format_poly(p),
            "soft_zeros": report.soft_zero_count,
            "soft_equals_hard_at_soft_zeros": report.division_condition,
            "soft_zeros_are_hard": report.hard_condition,
            "entries": entries,
            "passed": report.passed,
        })
    return {"results": results}, code


def _quotient(ctx: _Context):
    if ctx.options.matrices:
        _, X = ctx.first_tuple()
        basis = vanishing_ideal([X], ctx.degree)
        I = IdealPresentation.from_generators(basis, X.g, X.field)
        return regular_representation(complete(I, max(ctx.degree, I.max_degree())))
    return regular_representation(ctx.gb())


def cmd_regrep(ctx: _Context) -> Result:
    Q = _quotient(ctx)
    letters = {_word((code,), Q.g): _matrix(M, Q.field) for code, M in sorted(Q.left_mult.items())}
    return {"dim": Q.dim, "basis": [_word(w, Q.g) for w in Q.basis], "left_mult": letters}, EXIT_OK


def cmd_z_ideal(ctx: _Context) -> Result:
    name, X = ctx.first_tuple()
    D = ctx.degree
    left = left_vanishing_ideal(X, ctx.vector(), D)
    Z = z_ideal(left, D)
    two_sided = vanishing_ideal([X], D - 1) if D >= 1 else []
    return {
        "matrix": name,
        "degree": D,
        "basis": [format_poly(b) for b in Z],
        "equals_vanishing_ideal": Z == two_sided,
    }, EXIT_OK


def cmd_hat_member(ctx: _Context) -> Result:
    Q = _quotient(ctx)
    results = []
    code = EXIT_OK
    for p in ctx.polys(Q.g):
        verdict = hat_member(p, Q)
        if not verdict:
            code = EXIT_NEGATIVE
        results.append({"input": format_poly(p), "hat_member": verdict})
    return {"dim": Q.dim, "results": results}, code


def cmd_canon(ctx: _Context) -> Result:
    algebra = ctx.options.algebra
    if algebra == "toeplitz":
        results = [{"input": format_poly(p), "canonical": format_poly(toeplitz_canon(p))} for p in ctx.polys(1)]
        return {"algebra": algebra, "results": results}, EXIT_OK
    if algebra == "qweyl":
        S = build_qweyl_system(ctx.q(), ctx.options.degree or 5, ctx.field)
        results = [{"input": format_poly(p), "canonical": format_poly(qweyl_canon(p, S))} for p in ctx.polys(2)]
        return {
            "algebra": algebra,
            "q": str(S.q),
            "system": _gb_payload(S.gb),
            "derived_rules": [format_poly(r) for r in S.derived_rules],
            "results": results,
        }, EXIT_OK
    raise PreconditionError("canon needs --algebra toeplitz or --algebra qweyl")


def cmd_qweyl_identities(ctx: _Context) -> Result:
    m_max = ctx.options.degree or 4
    S = build_qweyl_system(ctx.q(), max(5, 2 * m_max), ctx.field)
    report = verify_qweyl_identities(S, m_max, ctx.options.k_values or list(DEFAULT_K_VALUES))
    payload = {
        "q": str(report.q),
        "complete": S.gb.complete,
        "derived_rules": [format_poly(r) for r in S.derived_rules],
        "k_identities": report.k_identities,
        "power_identities": report.power_identities,
        "passed": report.passed,
    }
    return payload, EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_trace_form(ctx: _Context) -> Result:
    results = []
    for p in ctx.polys():
        ob = weyl_obstruction(p)
        results.append({"input": format_poly(p), "trace_normal_form": format_poly(ob.trace_form),
                        "no_hard_matrix_zero": ob.obstructs})
    return {"results": results}, EXIT_OK


COMMANDS: Dict[str, Callable[[_Context], Result]] = {
    "gb": cmd_gb,
    "reduce": cmd_reduce,
    "member": cmd_member,
    "standard-monomials": cmd_standard_monomials,
    "codim": cmd_codim,
    "split-check": cmd_split_check,
    "functional": cmd_functional,
    "verify-functional": cmd_verify_functional,
    "witness": cmd_witness,
    "verify-witness": cmd_verify_witness,
    "bounded-family": cmd_bounded_family,
    "eval": cmd_eval,
    "zero-class": cmd_zero_class,
    "vanishing-ideal": cmd_vanishing_ideal,
    "left-vanishing-ideal": cmd_left_vanishing_ideal,
    "commutant": cmd_commutant,
    "soft-check": cmd_soft_check,
    "regrep": cmd_regrep,
    "z-ideal": cmd_z_ideal,
    "hat-member": cmd_hat_member,
    "canon": cmd_canon,
    "qweyl-identities": cmd_qweyl_identities,
    "trace-form": cmd_trace_form,
}


def run(command: str, problem: Optional[ProblemFile], options: CommandOptions) -> Result:
    """Dispatch one command; returns (JSON-ready payload, exit code)."""
    handler = COMMANDS.get(command)
    if handler is None:
        raise PreconditionError(f"Unknown command {command!r}")
    logger.debug("Dispatching %s", command)
    payload, code = handler(_Context(problem, options))
    return {"command": command, **payload}, code


def render(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2)
