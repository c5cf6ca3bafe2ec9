"""Symbolic partial derivatives of expression trees.

Used by the potential construction: the mixed second derivatives of a potential
become metric-entry trees, which are then evaluated over Jet2 like any other
entry. Zero and one operands are pruned while building; nothing else is simplified.
"""

from __future__ import annotations

from typing import Callable, Dict

from parasol.exprlang.evaluate import free_variables
from parasol.exprlang.nodes import Binary, Call, ExprAst, Neg, Number, Variable

ZERO = Number(0.0)
ONE = Number(1.0)


def _is_value(node: ExprAst, value: float) -> bool:
    return isinstance(node, Number) and node.name is None and node.value == value


def add(a: ExprAst, b: ExprAst) -> ExprAst:
    if _is_value(a, 0.0):
        return b
    if _is_value(b, 0.0):
        return a
    return Binary("+", a, b)


def sub(a: ExprAst, b: ExprAst) -> ExprAst:
    if _is_value(b, 0.0):
        return a
    if _is_value(a, 0.0):
        return neg(b)
    return Binary("-", a, b)


def mul(a: ExprAst, b: ExprAst) -> ExprAst:
    if _is_value(a, 0.0) or _is_value(b, 0.0):
        return ZERO
    if _is_value(a, 1.0):
        return b
    if _is_value(b, 1.0):
        return a
    return Binary("*", a, b)


def div(a: ExprAst, b: ExprAst) -> ExprAst:
    if _is_value(a, 0.0):
        return ZERO
    if _is_value(b, 1.0):
        return a
    return Binary("/", a, b)


def neg(a: ExprAst) -> ExprAst:
    if _is_value(a, 0.0):
        return ZERO
    return Neg(a)


def _square(a: ExprAst) -> ExprAst:
    return Binary("^", a, Number(2.0))


# outer derivative f'(u) for every grammar function
_OUTER: Dict[str, Callable[[ExprAst], ExprAst]] = {
    "sin": lambda u: Call("cos", u),
    "cos": lambda u: neg(Call("sin", u)),
    "tan": lambda u: div(ONE, _square(Call("cos", u))),
    "exp": lambda u: Call("exp", u),
    "log": lambda u: div(ONE, u),
    "sinh": lambda u: Call("cosh", u),
    "cosh": lambda u: Call("sinh", u),
    "tanh": lambda u: sub(ONE, _square(Call("tanh", u))),
    "sqrt": lambda u: div(Number(0.5), Call("sqrt", u)),
}


def _power_derivative(node: Binary, name: str) -> ExprAst:
    base, exponent = node.left, node.right
    d_base = derivative(base, name)
    if name not in free_variables(exponent):
        if _is_value(exponent, 0.0):
            return ZERO
        if isinstance(exponent, Number) and exponent.name is None:
            lowered: ExprAst = Number(exponent.value - 1.0)
        else:
            lowered = Binary("-", exponent, ONE)
        if _is_value(lowered, 0.0):
            return mul(exponent, d_base)
        return mul(mul(exponent, Binary("^", base, lowered)), d_base)
    d_exponent = derivative(exponent, name)
    # u^v * (v' log u + v u'/u)
    inner = add(
        mul(d_exponent, Call("log", base)),
        div(mul(exponent, d_base), base),
    )
    return mul(node, inner)


def derivative(ast: ExprAst, name: str) -> ExprAst:
    """Partial derivative of ast with respect to the variable name."""
    if isinstance(ast, Number):
        return ZERO
    if isinstance(ast, Variable):
        return ONE if ast.name == name else ZERO
    if isinstance(ast, Neg):
        return neg(derivative(ast.operand, name))
    if isinstance(ast, Call):
        d_arg = derivative(ast.arg, name)
        if _is_value(d_arg, 0.0):
            return ZERO
        return mul(_OUTER[ast.fn](ast.arg), d_arg)
    if isinstance(ast, Binary):
        if ast.op == "^":
            return _power_derivative(ast, name)
        du = derivative(ast.left, name)
        dv = derivative(ast.right, name)
        if ast.op == "+":
            return add(du, dv)
        if ast.op == "-":
            return sub(du, dv)
        if ast.op == "*":
            return add(mul(du, ast.right), mul(ast.left, dv))
        if ast.op == "/":
            return div(sub(mul(du, ast.right), mul(ast.left, dv)), _square(ast.right))
    raise TypeError(f"Cannot differentiate node type: {type(ast).__name__}")
