"""Expression tree node types."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple, Union

Span = Tuple[int, int]


@dataclass(frozen=True)
class Number:
    value: float
    name: str | None = None  # "pi" / "e" for named constants
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Variable:
    name: str
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "ExprAst"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Binary:
    op: str  # one of + - * / ^
    left: "ExprAst"
    right: "ExprAst"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "ExprAst"
    span: Span = field(default=(0, 0), compare=False)


ExprAst = Union[Number, Variable, Neg, Binary, Call]

BINARY_OPS = ("+", "-", "*", "/", "^")
