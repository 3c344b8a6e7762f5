"""Recursive-descent parser for operator expressions.

Grammar (whitespace insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('-' | '+') unary | factor
    factor := base ('^' nat)?
    base   := rational | 'x' | 'y' | 'Dx' | 'Dy' | '(' expr ')'

``*`` is the noncommutative product, evaluated left to right, so ``Dx*x``
means ``x*Dx + 1``.  A rational literal is ``p`` or ``p/q``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Tuple, Union

from .exactarith import X, Y, BiPoly, Rational, parse_rational
from .weyl import DX, DY, ONE_OP, WeylOperator, op_mul


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


@dataclass(frozen=True)
class Num:
    value: Rational


@dataclass(frozen=True)
class Atom:
    name: str  # x, y, Dx, Dy


@dataclass(frozen=True)
class Neg:
    operand: "OperatorExpr"


@dataclass(frozen=True)
class BinOp:
    op: str  # + - *
    left: "OperatorExpr"
    right: "OperatorExpr"


@dataclass(frozen=True)
class Pow:
    base: "OperatorExpr"
    exponent: int


OperatorExpr = Union[Num, Atom, Neg, BinOp, Pow]

_TOKEN = re.compile(r"\s*(?:(\d+(?:\s*/\s*\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(.))")
_ATOMS = ("x", "y", "Dx", "Dy")

Token = Tuple[str, str, int]  # kind, text, position


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, ident, sym = m.groups()
        start = m.start(m.lastindex) if m.lastindex else pos
        if num is not None:
            tokens.append(("num", num.replace(" ", ""), start))
        elif ident is not None:
            if ident not in _ATOMS:
                raise ParseError(f"unknown symbol {ident!r}", start, text)
            tokens.append(("atom", ident, start))
        elif sym is not None:
            if sym.isspace():
                pos = m.end()
                continue
            if sym not in "+-*^()":
                raise ParseError(f"unexpected character {sym!r}", start, text)
            tokens.append(("sym", sym, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: Token = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expr(self) -> OperatorExpr:
        node = self.term()
        while self.peek()[:2] in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> OperatorExpr:
        node = self.unary()
        while self.peek()[:2] == ("sym", "*"):
            self.take()
            node = BinOp("*", node, self.unary())
        return node

    def unary(self) -> OperatorExpr:
        tok = self.peek()
        if tok[:2] == ("sym", "-"):
            self.take()
            return Neg(self.unary())
        if tok[:2] == ("sym", "+"):
            self.take()
            return self.unary()
        return self.factor()

    def factor(self) -> OperatorExpr:
        node = self.base()
        if self.peek()[:2] == ("sym", "^"):
            self.take()
            tok = self.peek()
            if tok[:2] == ("sym", "-"):
                self.error("negative exponent")
            if tok[0] != "num":
                self.error("exponent must be a nonnegative integer literal")
            if "/" in tok[1]:
                self.error("exponent must be an integer")
            self.take()
            node = Pow(node, int(tok[1]))
        return node

    def base(self) -> OperatorExpr:
        tok = self.peek()
        kind, text, _ = tok
        if kind == "num":
            self.take()
            try:
                return Num(parse_rational(text))
            except ValueError:
                self.error(f"invalid rational literal {text!r}", tok)
        if kind == "atom":
            self.take()
            return Atom(text)
        if (kind, text) == ("sym", "("):
            self.take()
            node = self.expr()
            if self.peek()[:2] != ("sym", ")"):
                self.error("expected ')'")
            self.take()
            return node
        if kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {text!r}")


def parse_operator(text: str) -> OperatorExpr:
    """Parse ``text`` into an expression tree; raises :class:`ParseError`."""
    p = _Parser(text)
    node = p.expr()
    if p.peek()[0] != "end":
        p.error(f"unexpected {p.peek()[1]!r}")
    return node


_ATOM_VALUES = {
    "x": WeylOperator.from_poly(X),
    "y": WeylOperator.from_poly(Y),
    "Dx": DX,
    "Dy": DY,
}


def evaluate(node: OperatorExpr) -> WeylOperator:
    if isinstance(node, Num):
        return WeylOperator.from_poly(BiPoly.const(node.value))
    if isinstance(node, Atom):
        return _ATOM_VALUES[node.name]
    if isinstance(node, Neg):
        return -evaluate(node.operand)
    if isinstance(node, Pow):
        base = evaluate(node.base)
        out = ONE_OP
        for _ in range(node.exponent):
            out = op_mul(out, base)
        return out
    left, right = evaluate(node.left), evaluate(node.right)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return op_mul(left, right)


def parse(text: str) -> WeylOperator:
    """Parse and evaluate to a normal-form operator."""
    return evaluate(parse_operator(text))
