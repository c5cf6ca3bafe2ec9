"""Scalar expression language for field definitions in spec files."""

from parasol.exprlang.derivative import derivative
from parasol.exprlang.errors import (
    EvaluationError,
    ExprError,
    ParseError,
    UnboundVariableError,
)
from parasol.exprlang.evaluate import evaluate, free_variables
from parasol.exprlang.nodes import BINARY_OPS, Binary, Call, ExprAst, Neg, Number, Variable
from parasol.exprlang.parser import CONSTANTS, parse, tokenize
from parasol.exprlang.printer import to_source

__all__ = [
    "BINARY_OPS",
    "CONSTANTS",
    "Binary",
    "Call",
    "EvaluationError",
    "ExprAst",
    "ExprError",
    "Neg",
    "Number",
    "ParseError",
    "UnboundVariableError",
    "Variable",
    "derivative",
    "evaluate",
    "free_variables",
    "parse",
    "to_source",
    "tokenize",
]
