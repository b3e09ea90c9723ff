"""Expression language for elements of the plane algebra.

Grammar::

    expr     := term (('+' | '-') term)*
    term     := factor (('*')? factor)*
    factor   := atom ('^' nat)?
    atom     := 'x' | 'y' | 'q' | 'h' | rational | '(' expr ')' | '-' atom
    rational := int ('/' posint)?

Multiplication keeps the written order. ``q`` and ``h`` are the deformation
parameters, ``x`` and ``y`` the plane generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Union

from .algebra import NCPolynomial, PlaneSpec, nc_mul, nc_pow

MAX_DEPTH = 200


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected: Optional[str] = None):
        self.message = message
        self.position = position  # 1-based character column
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class ExponentError(ParseError):
    """Exponent that is not a nonnegative integer literal."""


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class RationalLit:
    value: Fraction

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("literals are nonnegative; use Neg")


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Var, Param, RationalLit, Neg, Add, Sub, Mul, Pow]


class Token(NamedTuple):
    kind: str  # 'name', 'int', one of '+-*/^()', or 'end'
    text: str
    pos: int  # 1-based


def tokenize(text: str) -> List[Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "xyqh":
            tokens.append(Token("name", ch, i + 1))
            i += 1
        elif ch.isdigit() and ch.isascii():
            j = i
            while j < n and text[j].isdigit() and text[j].isascii():
                j += 1
            tokens.append(Token("int", text[i:j], i + 1))
            i = j
        elif ch in "+-*/^()":
            tokens.append(Token(ch, ch, i + 1))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i + 1, "x, y, q, h, a number, '(' or an operator")
    tokens.append(Token("end", "", n + 1))
    return tokens


_FACTOR_START = {"name", "int", "(", "-"}


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            raise ParseError(f"unexpected {_describe(self.tok)}", self.tok.pos, what)
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {_describe(self.tok)}", self.tok.pos, "an operator or end of input")
        return e

    def expr(self) -> Expr:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError("expression nested too deeply", self.tok.pos)
        left = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            right = self.term()
            left = Add(left, right) if op == "+" else Sub(left, right)
        self.depth -= 1
        return left

    def term(self) -> Expr:
        left = self.factor()
        while True:
            if self.tok.kind == "*":
                self.advance()
            elif self.tok.kind not in _FACTOR_START or self.tok.kind == "-":
                # a bare '-' here is subtraction, not a juxtaposed negation
                return left
            left = Mul(left, self.factor())

    def factor(self) -> Expr:
        base = self.atom()
        if self.tok.kind == "^":
            self.advance()
            return Pow(base, self.exponent())
        return base

    def exponent(self) -> int:
        bad = "a nonnegative integer exponent"
        t = self.tok
        if t.kind == "-":
            raise ExponentError("negative exponent unsupported", t.pos, bad)
        if t.kind == "(":
            self.advance()
            if self.tok.kind == "-":
                raise ExponentError("negative exponent unsupported", self.tok.pos, bad)
            value = self.exponent()
            self.expect(")", "')'")
            return value
        if t.kind != "int":
            raise ExponentError(f"exponent must be an integer literal, got {_describe(t)}", t.pos, bad)
        self.advance()
        if self.tok.kind == "/":
            raise ExponentError("non-integer exponent unsupported", t.pos, bad)
        return int(t.text)

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "name":
            self.advance()
            return Var(t.text) if t.text in "xy" else Param(t.text)
        if t.kind == "int":
            self.advance()
            num = int(t.text)
            if self.tok.kind == "/":
                self.advance()
                d = self.expect("int", "a positive integer denominator")
                if int(d.text) == 0:
                    raise ParseError("zero denominator", d.pos, "a positive integer denominator")
                return RationalLit(Fraction(num, int(d.text)))
            return RationalLit(Fraction(num))
        if t.kind == "(":
            self.advance()
            inner = self.expr()
            self.expect(")", "')'")
            return inner
        if t.kind == "-":
            self.advance()
            self.depth += 1
            if self.depth > MAX_DEPTH:
                raise ParseError("expression nested too deeply", self.tok.pos)
            operand = self.atom()
            self.depth -= 1
            return Neg(operand)
        raise ParseError(f"unexpected {_describe(t)}", t.pos, "x, y, q, h, a number, '(' or '-'")


def _describe(t: Token) -> str:
    return "end of input" if t.kind == "end" else repr(t.text)


def parse(text: str) -> Expr:
    """Parse text into an expression tree; raises ParseError with a 1-based position."""
    return _Parser(text).parse()


# -- printing ----------------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Mul: 2, Pow: 3}


def _prec(e: Expr) -> int:
    return _PREC.get(type(e), 4)


def to_text(e: Expr) -> str:
    """Render a tree as text that parses back to the same tree."""
    if isinstance(e, (Var, Param)):
        return e.name
    if isinstance(e, RationalLit):
        v = e.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(e, Neg):
        inner = to_text(e.operand)
        return "-" + (inner if _prec(e.operand) == 4 else f"({inner})")
    if isinstance(e, Pow):
        base = to_text(e.base)
        simple = isinstance(e.base, (Var, Param)) or (
            isinstance(e.base, RationalLit) and e.base.value.denominator == 1
        )
        return f"{base if simple else f'({base})'}^{e.exponent}"
    if isinstance(e, Mul):
        left = to_text(e.left)
        right = to_text(e.right)
        if _prec(e.right) <= 2:
            right = f"({right})"
        if _prec(e.left) < 2:
            left = f"({left})"
        return f"{left}*{right}"
    if isinstance(e, (Add, Sub)):
        op = "+" if isinstance(e, Add) else "-"
        right = to_text(e.right)
        if _prec(e.right) <= 1:
            right = f"({right})"
        return f"{to_text(e.left)} {op} {right}"
    raise TypeError(f"not an expression node: {e!r}")


# -- evaluation --------------------------------------------------------------


def evaluate(e: Expr, plane: PlaneSpec, strategy: str = "batched") -> NCPolynomial:
    """Normal form of the expression in the given plane."""
    if isinstance(e, Var):
        return NCPolynomial.x() if e.name == "x" else NCPolynomial.y()
    if isinstance(e, Param):
        return NCPolynomial.constant(plane.q_coeff if e.name == "q" else plane.h_coeff)
    if isinstance(e, RationalLit):
        return NCPolynomial.constant(e.value)
    if isinstance(e, Neg):
        return -evaluate(e.operand, plane, strategy)
    if isinstance(e, Add):
        return evaluate(e.left, plane, strategy) + evaluate(e.right, plane, strategy)
    if isinstance(e, Sub):
        return evaluate(e.left, plane, strategy) - evaluate(e.right, plane, strategy)
    if isinstance(e, Mul):
        return nc_mul(evaluate(e.left, plane, strategy), evaluate(e.right, plane, strategy), plane, strategy)
    if isinstance(e, Pow):
        return nc_pow(evaluate(e.base, plane, strategy), e.exponent, plane, strategy)
    raise TypeError(f"not an expression node: {e!r}")


def normalize_text(text: str, plane: PlaneSpec, strategy: str = "batched") -> NCPolynomial:
    return evaluate(parse(text), plane, strategy)
