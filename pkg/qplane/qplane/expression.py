"""
A recursive descent parser for quantum plane expressions.

Grammar:

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | factor
    factor := base ('^' uint)?  |  'q' ('^' '-'? uint)?
    base   := 'x' | 'y' | 'u' | scalar | '(' expr ')'
    scalar := uint | decimal | uint '/' uint | 'i'

Whitespace is ignored. Decimals are read as exact rationals, so 0.3 is 3/10.
Only q may carry a negative exponent.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ExpressionSyntaxError, ModeError
from .plane import PlaneElement
from .scalars import GaussianRational, QScalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Token:
    """
    A lexical token.

    Attributes:
    - kind: one of 'name', 'number', 'op', 'lparen', 'rparen', 'eof'
    - text: the source text
    - column: the 1-based column of the first character
    """
    kind: str
    text: str
    column: int


_NAMES = {'x', 'y', 'u', 'q', 'i'}
_OPS = {'+', '-', '*', '^'}


def tokenize(source: str) -> list[Token]:
    """Return the tokens of <source>, ending with an 'eof' token.

    The 'eof' token carries the column of the last real token so that errors
    at the end of input point at what was left open.
    """
    tokens = []
    pos = 0
    while pos < len(source):
        char = source[pos]
        column = pos + 1
        if char.isspace():
            pos += 1
        elif char in _NAMES:
            tokens.append(Token('name', char, column))
            pos += 1
        elif char in _OPS:
            tokens.append(Token('op', char, column))
            pos += 1
        elif char == '(':
            tokens.append(Token('lparen', char, column))
            pos += 1
        elif char == ')':
            tokens.append(Token('rparen', char, column))
            pos += 1
        elif char.isdigit():
            end = pos
            while end < len(source) and source[end].isdigit():
                end += 1
            if end < len(source) and source[end] in './' and end + 1 < len(source) \
                    and source[end + 1].isdigit():
                end += 1
                while end < len(source) and source[end].isdigit():
                    end += 1
            tokens.append(Token('number', source[pos:end], column))
            pos = end
        else:
            raise ExpressionSyntaxError(f"Unexpected character {char!r}", column)
    last = tokens[-1].column if tokens else 1
    tokens.append(Token('eof', '', last))
    return tokens


class Node:
    """Base class of expression tree nodes."""


@dataclass(frozen=True)
class Generator(Node):
    name: str


@dataclass(frozen=True)
class Scalar(Node):
    value: GaussianRational


@dataclass(frozen=True)
class QPower(Node):
    exponent: int


@dataclass(frozen=True)
class Add(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Sub(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Mul(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class Paren(Node):
    inner: Node


Expression = Union[Generator, Scalar, QPower, Add, Sub, Mul, Pow, Neg, Paren]


class _Parser:
    """One pass over a token list."""

    def __init__(self, source: str) -> None:
        self.tokens = tokenize(source)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.current
        self.pos += 1
        return token

    def _error(self, message: str) -> ExpressionSyntaxError:
        token = self.current
        if token.kind == 'eof':
            return ExpressionSyntaxError(f"{message}: unexpected end of input", token.column)
        return ExpressionSyntaxError(f"{message}: unexpected {token.text!r}", token.column)

    def _at_op(self, text: str) -> bool:
        return self.current.kind == 'op' and self.current.text == text

    def parse(self) -> Node:
        node = self.expr()
        if self.current.kind != 'eof':
            raise self._error("Expected an operator")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self._at_op('+') or self._at_op('-'):
            op = self._advance().text
            right = self.term()
            node = Add(node, right) if op == '+' else Sub(node, right)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self._at_op('*'):
            self._advance()
            node = Mul(node, self.unary())
        return node

    def unary(self) -> Node:
        if self._at_op('-'):
            self._advance()
            return Neg(self.unary())
        return self.factor()

    def _uint(self) -> int:
        token = self.current
        if token.kind != 'number' or not token.text.isdigit():
            raise self._error("Expected a nonnegative integer exponent")
        self._advance()
        return int(token.text)

    def factor(self) -> Node:
        if self.current.kind == 'name' and self.current.text == 'q':
            self._advance()
            if not self._at_op('^'):
                return QPower(1)
            self._advance()
            sign = 1
            if self._at_op('-'):
                self._advance()
                sign = -1
            return QPower(sign * self._uint())
        base = self.base()
        if self._at_op('^'):
            self._advance()
            return Pow(base, self._uint())
        return base

    def base(self) -> Node:
        token = self.current
        if token.kind == 'name' and token.text in ('x', 'y', 'u'):
            self._advance()
            return Generator(token.text)
        if token.kind == 'name' and token.text == 'i':
            self._advance()
            return Scalar(GaussianRational(0, 1))
        if token.kind == 'number':
            self._advance()
            return Scalar(GaussianRational(Fraction(token.text)))
        if token.kind == 'lparen':
            self._advance()
            inner = self.expr()
            if self.current.kind != 'rparen':
                raise self._error("Expected ')'")
            self._advance()
            return Paren(inner)
        raise self._error("Expected a generator, scalar or '('")


def parse(source: str) -> Node:
    """Return the expression tree of <source>.

    Raises ExpressionSyntaxError with the 1-based column of the failure.
    """
    return _Parser(source).parse()


def to_source(node: Node) -> str:
    """Return text that parses back to <node>."""
    if isinstance(node, Generator):
        return node.name
    if isinstance(node, Scalar):
        return str(node.value)
    if isinstance(node, QPower):
        return "q" if node.exponent == 1 else f"q^{node.exponent}"
    if isinstance(node, Add):
        return f"{to_source(node.left)}+{to_source(node.right)}"
    if isinstance(node, Sub):
        return f"{to_source(node.left)}-{to_source(node.right)}"
    if isinstance(node, Mul):
        return f"{to_source(node.left)}*{to_source(node.right)}"
    if isinstance(node, Pow):
        return f"{to_source(node.base)}^{node.exponent}"
    if isinstance(node, Neg):
        return f"-{to_source(node.operand)}"
    if isinstance(node, Paren):
        return f"({to_source(node.inner)})"
    raise TypeError(f"Not an expression node: {node!r}")


def evaluate(node: Node) -> PlaneElement:
    """Return the normal form of the expression."""
    if isinstance(node, Generator):
        return {'x': PlaneElement.x, 'y': PlaneElement.y, 'u': PlaneElement.u}[node.name]()
    if isinstance(node, Scalar):
        return PlaneElement.scalar(node.value)
    if isinstance(node, QPower):
        return PlaneElement.scalar(QScalar.q_power(node.exponent))
    if isinstance(node, Add):
        return evaluate(node.left) + evaluate(node.right)
    if isinstance(node, Sub):
        return evaluate(node.left) - evaluate(node.right)
    if isinstance(node, Mul):
        return evaluate(node.left) * evaluate(node.right)
    if isinstance(node, Pow):
        return evaluate(node.base) ** node.exponent
    if isinstance(node, Neg):
        return -evaluate(node.operand)
    if isinstance(node, Paren):
        return evaluate(node.inner)
    raise TypeError(f"Not an expression node: {node!r}")


def evaluate_coefficient(node: Node) -> QScalar:
    """Return the value of an expression free of x, y and u.

    Raises ModeError if a generator survives.
    """
    element = evaluate(node)
    if element.is_zero():
        return QScalar.zero()
    if [monomial for monomial, _ in element.terms] != [(0, 0)]:
        raise ModeError(f"{to_source(node)} is not a scalar.")
    return element.coefficient(0, 0)


def evaluate_scalar(node: Node) -> GaussianRational:
    """Return the value of an expression free of generators and q.

    Raises ModeError otherwise.
    """
    return evaluate_coefficient(node).constant_value()


def normalize(source: str) -> PlaneElement:
    """Return the normal form of the expression in <source>."""
    element = evaluate(parse(source))
    logger.debug("normalize %r -> %s", source, element)
    return element
