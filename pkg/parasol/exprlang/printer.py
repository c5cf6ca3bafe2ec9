"""Source printing for expression trees."""

from parasol.exprlang.nodes import Binary, Call, ExprAst, Neg, Number, Variable


def _number_source(node: Number) -> str:
    if node.name is not None:
        return node.name
    text = repr(float(node.value))
    if text in ("inf", "nan"):
        raise ValueError(f"Cannot print non-finite literal {text}")
    return text


def to_source(ast: ExprAst) -> str:
    """Fully parenthesised source; parse(to_source(t)) == t up to spans."""
    if isinstance(ast, Number):
        return _number_source(ast)
    if isinstance(ast, Variable):
        return ast.name
    if isinstance(ast, Neg):
        return f"(-{to_source(ast.operand)})"
    if isinstance(ast, Call):
        return f"{ast.fn}({to_source(ast.arg)})"
    if isinstance(ast, Binary):
        return f"({to_source(ast.left)} {ast.op} {to_source(ast.right)})"
    raise TypeError(f"Unknown node type: {type(ast).__name__}")
