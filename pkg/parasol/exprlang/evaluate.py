"""Tree evaluation, generic over the numeric carrier (float or Jet2)."""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Mapping, Optional, Set

from parasol.exprlang.errors import EvaluationError, UnboundVariableError
from parasol.exprlang.nodes import Binary, Call, ExprAst, Neg, Number, Variable
from parasol.jets import Carrier, Jet2, JetDomainError, elementary, integer_power, jet_arith

_OP_NAMES = {"+": "add", "-": "sub", "*": "mul", "/": "div", "^": "pow"}


def free_variables(ast: ExprAst) -> Set[str]:
    """Names of all variable nodes; named constants are numbers, not variables."""
    if isinstance(ast, Variable):
        return {ast.name}
    if isinstance(ast, Number):
        return set()
    if isinstance(ast, Neg):
        return free_variables(ast.operand)
    if isinstance(ast, Call):
        return free_variables(ast.arg)
    return free_variables(ast.left) | free_variables(ast.right)


@lru_cache(maxsize=4096)
def _constant_integer(ast: ExprAst) -> Optional[int]:
    """Integer value of a variable-free exponent subtree, else None."""
    if free_variables(ast):
        return None
    try:
        value = float(evaluate(ast, {}))
    except EvaluationError:
        return None
    if value.is_integer():
        return int(value)
    return None


def evaluate(ast: ExprAst, env: Mapping[str, Carrier]) -> Carrier:
    """Evaluate over the carriers bound in env.

    Raises UnboundVariableError for a missing name and EvaluationError (with
    the failing node's span) for any domain violation.
    """
    if isinstance(ast, Number):
        return ast.value
    if isinstance(ast, Variable):
        try:
            return env[ast.name]
        except KeyError:
            raise UnboundVariableError(ast.name, ast.span) from None
    if isinstance(ast, Neg):
        return -evaluate(ast.operand, env)
    if isinstance(ast, Call):
        arg = evaluate(ast.arg, env)
        try:
            return elementary(ast.fn, arg)
        except JetDomainError as exc:
            raise EvaluationError(str(exc), ast.span) from exc
    if isinstance(ast, Binary):
        left = evaluate(ast.left, env)
        if ast.op == "^":
            k = _constant_integer(ast.right)
            if k is not None:
                try:
                    result = integer_power(left, k)
                except (JetDomainError, OverflowError) as exc:
                    raise EvaluationError(str(exc), ast.span) from exc
                if not isinstance(result, Jet2) and not math.isfinite(result):
                    raise EvaluationError(f"Non-finite power result {result!r}", ast.span)
                return result
        right = evaluate(ast.right, env)
        try:
            return jet_arith(_OP_NAMES[ast.op], left, right)
        except JetDomainError as exc:
            raise EvaluationError(str(exc), ast.span) from exc
    raise EvaluationError(f"Unknown node type: {type(ast).__name__}")
