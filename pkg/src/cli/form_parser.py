"""
Parser for the form expression language

    form   := term (('+' | '-') term)*
    term   := unary (('*' | '^' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('**' INT)?
    atom   := NUMBER | 'x' INT | 't' '[' INT ']' | '(' form ')'

'*' and '^' are both the wedge product (the ordinary product on
functions); '/' divides by a nonzero constant.
"""
import re
from dataclasses import dataclass
from typing import List, Union

import sympy as sp

from src.algebra.lie_algebra import StratifiedLieAlgebra
from src.calculus.polyform import CoordinateRing, PolyForm
from src.errors import DegreeMismatch, FormParseError
from src.forms.exterior import InvariantForm
from src.utils.logger import CalcLogger

GRAMMAR = "form := term (('+'|'-') term)*; term := factor (('*'|'^'|'/') factor)*; " \
          "factor := NUMBER | xN | t[N] | (form), with '**' INT on functions"

_TOKEN = re.compile(r'\s*(?:(?P<number>\d+(?:\.\d+)?)|(?P<x>x\d+)|(?P<t>t)|(?P<op>\*\*|[-+*^/()\[\]]))')


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == '':
            break
        match = _TOKEN.match(text, position)
        if not match or match.end() == position:
            offset = position + len(text[position:]) - len(text[position:].lstrip())
            raise FormParseError(f"unexpected character {text[offset]!r}", text, offset)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token('end', '', len(text)))
    return tokens


class FormParser:
    """Recursive-descent parser producing a PolyForm"""

    def __init__(self, text: str, ring: CoordinateRing):
        self.text = text
        self.ring = ring
        self.n = ring.algebra.n
        self.tokens = tokenize(text)
        self.index = 0
        self.logger = CalcLogger()

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def error(self, message: str, token: Token = None) -> FormParseError:
        token = token or self.current
        found = token.text or 'end of input'
        return FormParseError(f"{message}, found {found!r}", self.text, token.position)

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def expect(self, text: str) -> Token:
        if self.current.text != text:
            raise self.error(f"expected {text!r}")
        return self.advance()

    def parse(self) -> PolyForm:
        if self.current.kind == 'end':
            raise self.error("empty expression")
        value = self.form()
        if self.current.kind != 'end':
            raise self.error("unexpected token")
        return value

    def form(self) -> PolyForm:
        value = self.term()
        while self.current.text in ('+', '-'):
            operator = self.advance()
            right = self.term()
            try:
                value = value + right if operator.text == '+' else value - right
            except DegreeMismatch:
                raise self.error(f"cannot add a {value.degree}-form and a {right.degree}-form", operator)
        return value

    def term(self) -> PolyForm:
        value = self.unary()
        while self.current.text in ('*', '^', '/'):
            operator = self.advance()
            right = self.unary()
            if operator.text == '/':
                value = self.divide(value, right, operator)
            else:
                value = self.wedge(value, right, operator)
        return value

    def wedge(self, left: PolyForm, right: PolyForm, operator: Token) -> PolyForm:
        if left.degree + right.degree > self.n:
            raise self.error(f"wedge of degrees {left.degree} and {right.degree} exceeds dimension {self.n}", operator)
        product = left.wedge(right)
        if product.is_zero() and not left.is_zero() and not right.is_zero():
            self.logger.warning(f"Wedge product vanishes at position {operator.position} in {self.text!r}")
        return product

    def divide(self, left: PolyForm, right: PolyForm, operator: Token) -> PolyForm:
        if right.degree != 0 or not right.is_constant() or right.is_zero():
            raise self.error("division needs a nonzero constant divisor", operator)
        return left.scale(1 / sp.Rational(right.coefficient(()).as_expr()))

    def unary(self) -> PolyForm:
        if self.current.text in ('+', '-'):
            sign = self.advance()
            value = self.unary()
            return -value if sign.text == '-' else value
        return self.power()

    def power(self) -> PolyForm:
        value = self.atom()
        if self.current.text == '**':
            operator = self.advance()
            exponent = self.current
            if exponent.kind != 'number' or not exponent.text.isdigit():
                raise self.error("expected a non-negative integer exponent")
            self.advance()
            if value.degree != 0:
                raise self.error("powers apply to functions only", operator)
            coefficient = value.coefficient(())
            value = PolyForm.function(self.ring, coefficient ** int(exponent.text))
        return value

    def atom(self) -> PolyForm:
        token = self.current
        if token.kind == 'number':
            self.advance()
            return PolyForm.function(self.ring, sp.Rational(token.text))
        if token.kind == 'x':
            self.advance()
            index = int(token.text[1:])
            if not 1 <= index <= self.n:
                raise self.error(f"coordinate index out of range 1..{self.n}", token)
            return PolyForm.function(self.ring, self.ring.variable(index - 1))
        if token.kind == 't':
            self.advance()
            self.expect('[')
            index_token = self.current
            if index_token.kind != 'number' or not index_token.text.isdigit():
                raise self.error("expected a covector index")
            self.advance()
            self.expect(']')
            index = int(index_token.text)
            if not 1 <= index <= self.n:
                raise self.error(f"covector index out of range 1..{self.n}", index_token)
            return PolyForm.from_invariant(self.ring, InvariantForm.monomial(self.n, (index - 1,)))
        if token.text == '(':
            self.advance()
            value = self.form()
            self.expect(')')
            return value
        raise self.error("expected a number, xN, t[N] or '('")


def parse_form(text: str, target: Union[CoordinateRing, StratifiedLieAlgebra]) -> PolyForm:
    ring = target if isinstance(target, CoordinateRing) else CoordinateRing(target)
    return FormParser(text, ring).parse()


def parse_invariant_form(text: str, g: StratifiedLieAlgebra) -> InvariantForm:
    """Parse a form that must have constant coefficients"""
    form = parse_form(text, g)
    if not form.is_constant():
        raise FormParseError("expected constant coefficients", text, 0)
    return form.to_invariant()
