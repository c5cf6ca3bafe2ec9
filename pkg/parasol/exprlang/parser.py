"""Recursive-descent parser for the field expression grammar.

Precedence, highest first: ``^`` (right-assoc), unary ``-``, ``* /`` (left),
``+ -`` (left). Function calls take one argument; ``pi`` and ``e`` are constants.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import accumulate
from typing import List

from parasol.exprlang.errors import ParseError
from parasol.exprlang.nodes import Binary, Call, ExprAst, Neg, Number, Variable
from parasol.jets import FUNCTION_NAMES

CONSTANTS = {"pi": math.pi, "e": math.e}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>[-+*/^])
  | (?P<lparen>\()
  | (?P<rparen>\))
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int


def tokenize(text: str) -> List[Token]:
    """Split text into tokens; start and end are UTF-8 byte offsets."""
    offsets = list(accumulate((len(ch.encode("utf-8")) for ch in text), initial=0))
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(
                f"Unexpected character {text[pos]!r}", position=offsets[pos], expected="token"
            )
        kind = match.lastgroup or ""
        if kind != "ws":
            tokens.append(Token(kind, match.group(), offsets[match.start()], offsets[match.end()]))
        pos = match.end()
    tokens.append(Token("eof", "", offsets[-1], offsets[-1]))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "eof":
            self.index += 1
        return token

    def error(self, expected: str) -> ParseError:
        token = self.current
        found = "end of input" if token.kind == "eof" else repr(token.text)
        return ParseError(
            f"Expected {expected} at position {token.start}, found {found}",
            position=token.start,
            expected=expected,
        )

    def parse(self) -> ExprAst:
        node = self.expression()
        if self.current.kind != "eof":
            raise self.error("operator or end of input")
        return node

    def expression(self) -> ExprAst:
        node = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            right = self.term()
            node = Binary(op, node, right, span=(node.span[0], right.span[1]))
        return node

    def term(self) -> ExprAst:
        node = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            op = self.advance().text
            right = self.unary()
            node = Binary(op, node, right, span=(node.span[0], right.span[1]))
        return node

    def unary(self) -> ExprAst:
        if self.current.kind == "op" and self.current.text == "-":
            start = self.advance().start
            operand = self.unary()
            return Neg(operand, span=(start, operand.span[1]))
        return self.power()

    def power(self) -> ExprAst:
        base = self.primary()
        if self.current.kind == "op" and self.current.text == "^":
            self.advance()
            exponent = self.unary()  # right-assoc, allows 2^-1
            return Binary("^", base, exponent, span=(base.span[0], exponent.span[1]))
        return base

    def primary(self) -> ExprAst:
        token = self.current
        if token.kind == "number":
            self.advance()
            return Number(float(token.text), span=(token.start, token.end))
        if token.kind == "ident":
            self.advance()
            if self.current.kind == "lparen":
                if token.text not in FUNCTION_NAMES:
                    raise ParseError(
                        f"Unknown function {token.text!r} at position {token.start}",
                        position=token.start,
                        expected="one of " + ", ".join(sorted(FUNCTION_NAMES)),
                    )
                self.advance()
                arg = self.expression()
                if self.current.kind != "rparen":
                    raise self.error("')'")
                end = self.advance().end
                return Call(token.text, arg, span=(token.start, end))
            if token.text in CONSTANTS:
                return Number(
                    CONSTANTS[token.text], name=token.text, span=(token.start, token.end)
                )
            return Variable(token.text, span=(token.start, token.end))
        if token.kind == "lparen":
            start = self.advance().start
            node = self.expression()
            if self.current.kind != "rparen":
                raise self.error("')'")
            end = self.advance().end
            return _respan(node, (start, end))
        raise self.error("expression")


def _respan(node: ExprAst, span) -> ExprAst:
    # parentheses widen the span but keep the tree shape
    if isinstance(node, Number):
        return Number(node.value, node.name, span=span)
    if isinstance(node, Variable):
        return Variable(node.name, span=span)
    if isinstance(node, Neg):
        return Neg(node.operand, span=span)
    if isinstance(node, Binary):
        return Binary(node.op, node.left, node.right, span=span)
    return Call(node.fn, node.arg, span=span)


def parse(text: str) -> ExprAst:
    """Parse an expression; raises ParseError with position and expectation."""
    return _Parser(text).parse()
