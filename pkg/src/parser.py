"""Expression language for free *-algebra polynomials.

    expr   := ["-"] term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := atom ["'"] ["^" nat] ["'"]      (at most one involution mark)
    atom   := rational | "i" | var | "(" expr ")"
    var    := "x" nat
    rational := ["-"] nat ["/" nat]

Multiplication is always explicit; ' is the involution.
"""

from fractions import Fraction
from functools import lru_cache

from pyparsing import (
    Forward,
    Keyword,
    Literal,
    Optional,
    ParseBaseException,
    ParseFatalException,
    ParserElement,
    Regex,
    Suppress,
    Word,
    ZeroOrMore,
    nums,
)

from .errors import ParseError
from .freepoly import FieldMode, Letter, Polynomial

MARK = "'"


def _fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


@lru_cache(maxsize=None)
def _grammar(g: int, field: FieldMode) -> ParserElement:
    def rational(s, loc, toks):
        try:
            value = Fraction(toks[0])
        except ZeroDivisionError:
            raise ParseFatalException(s, loc, "Zero denominator")
        return Polynomial.constant(value, g, field)

    def imaginary(s, loc, toks):
        if field is not FieldMode.GAUSSIAN_RATIONAL:
            raise ParseFatalException(s, loc, "The imaginary unit i needs field Qi")
        return Polynomial.constant(field.imaginary_unit, g, field)

    def variable(s, loc, toks):
        index = int(toks[0][1:])
        if not 1 <= index <= g:
            raise ParseFatalException(s, loc, f"Variable x{index} outside x1..x{g}")
        return Polynomial.variable(index, g, field)

    def factor(s, loc, toks):
        base, marks, power = toks[0], 0, 1
        for t in toks[1:]:
            if isinstance(t, str):
                marks += 1
            else:
                power = t
        if marks > 1:
            raise ParseFatalException(s, loc, "At most one involution mark per factor")
        if power < 1:
            raise ParseFatalException(s, loc, "Exponents must be positive integers")
        value = base ** power
        return value.star() if marks else value

    def product(s, loc, toks):
        value = toks[0]
        for t in toks[1:]:
            value = value * t
        return value

    def total(s, loc, toks):
        items = list(toks)
        value = None
        sign = 1
        for t in items:
            if isinstance(t, str):
                sign = -1 if t == "-" else 1
                continue
            t = -t if sign < 0 else t
            value = t if value is None else value + t
            sign = 1
        return value

    expr = Forward()
    nat = Word(nums).set_parse_action(lambda toks: int(toks[0]))
    atom = (
        Regex(r"-?\d+(/\d+)?").set_parse_action(rational)
        | Keyword("i").set_parse_action(imaginary)
        | Regex(r"x\d+").set_parse_action(variable)
        | Suppress("(") + expr + Suppress(")")
    )
    mark = Literal(MARK)
    fac = (atom + Optional(mark) + Optional(Suppress("^") + nat) + Optional(mark)).set_parse_action(factor)
    term = (fac + ZeroOrMore(Suppress("*") + fac)).set_parse_action(product)
    addop = Literal("+") | Literal("-")
    expr <<= (Optional(Literal("-")) + term + ZeroOrMore(addop + term)).set_parse_action(total)
    return expr


def parse_poly(s: str, g: int, field: FieldMode = FieldMode.RATIONAL) -> Polynomial:
    if g < 1:
        raise ParseError(f"Variable count must be positive, got {g}")
    try:
        return _grammar(g, field).parse_string(s, parse_all=True)[0]
    except ParseBaseException as exc:
        raise ParseError(exc.msg, exc.loc) from None


def format_rational(x: Fraction) -> str:
    return str(x)


def format_scalar(c, field: FieldMode) -> str:
    """Rationals as "p/q"; nonreal Gaussian rationals as "(re + im*i)"."""
    re = _fraction(field.real_part(c))
    im = _fraction(field.imag_part(c))
    if not im:
        return format_rational(re)
    if not re:
        return f"({format_rational(im)}*i)"
    sign = "-" if im < 0 else "+"
    return f"({format_rational(re)} {sign} {format_rational(abs(im))}*i)"


def format_word(w, g: int) -> str:
    return "*".join(str(Letter.from_code(c, g)) for c in w)


def format_poly(p: Polynomial) -> str:
    """Terms in descending order; a coefficient of 1 is omitted."""
    if p.is_zero():
        return "0"
    fm = p.field
    parts = []
    for k, (w, c) in enumerate(p.sorted_terms(descending=True)):
        negative = fm.is_real(c) and _fraction(fm.real_part(c)) < 0
        if negative and k > 0:
            c = -c
        text = format_scalar(c, fm)
        if w:
            word = format_word(w, p.g)
            text = word if c == fm.one else f"{text}*{word}"
        if k == 0:
            parts.append(text)
        else:
            parts.append(("- " if negative else "+ ") + text)
    return " ".join(parts)
