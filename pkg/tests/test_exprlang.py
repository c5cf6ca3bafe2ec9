import math
import random
import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parasol.exprlang import (
    Binary,
    Call,
    EvaluationError,
    Neg,
    Number,
    ParseError,
    UnboundVariableError,
    Variable,
    derivative,
    evaluate,
    free_variables,
    parse,
    to_source,
    tokenize,
)
from parasol.jets import Jet2, seed_jet
from tests.oracles import close, gradient, jacobian

VARS = ("x1", "x2", "y1", "y2")


def _env(point):
    return dict(zip(VARS, point))


def _jet_env(point):
    return {name: seed_jet(value, i, len(VARS)) for i, (name, value) in enumerate(zip(VARS, point))}


def test_precedence_and_associativity() -> None:
    assert parse("1 + 2 * 3") == Binary("+", Number(1.0), Binary("*", Number(2.0), Number(3.0)))
    assert parse("-x^2") == Neg(Binary("^", Variable("x"), Number(2.0)))
    assert evaluate(parse("2^3^2"), {}) == 512.0
    assert evaluate(parse("8 - 4 - 2"), {}) == 2.0
    assert evaluate(parse("2^-1"), {}) == 0.5


def test_constants_and_calls() -> None:
    ast = parse("pi * x + e")
    assert free_variables(ast) == {"x"}
    assert evaluate(ast, {"x": 1.0}) == pytest.approx(math.pi + math.e)
    assert parse("sin(x)") == Call("sin", Variable("x"))


def test_spans_cover_source() -> None:
    text = "x + log(y)"
    ast = parse(text)
    assert ast.span == (0, len(text))
    assert ast.right.span == (4, 10)


@pytest.mark.parametrize(
    "text, position",
    [
        ("x +", 3),
        ("sin(", 4),
        ("(x", 2),
        ("x y", 2),
        ("3 $ 4", 2),
        ("", 0),
        ("\u00a0x $", 4),
        ("x + \u00e9", 4),
        ("\u00e9", 0),
    ],
)
def test_parse_error_position(text: str, position: int) -> None:
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == position


def test_positions_count_utf8_bytes() -> None:
    ast = parse("\u00a0\u00a0x1 + y1")
    assert ast.span == (4, 11)
    assert ast.left.span == (4, 6)


def test_unknown_function_is_parse_error() -> None:
    with pytest.raises(ParseError) as info:
        parse("foo(x)")
    assert "foo" in str(info.value)


def test_tokenize_scientific_numbers() -> None:
    kinds = [token.kind for token in tokenize("1.5e-3*x")]
    assert kinds == ["number", "op", "ident", "eof"]


def test_unbound_variable() -> None:
    with pytest.raises(UnboundVariableError) as info:
        evaluate(parse("x + z"), {"x": 1.0})
    assert info.value.name == "z"


def test_domain_error_carries_span() -> None:
    with pytest.raises(EvaluationError) as info:
        evaluate(parse("1 + log(x)"), {"x": 0.0})
    assert info.value.span == (4, 10)


def test_integer_exponent_accepts_negative_base() -> None:
    assert evaluate(parse("(-2)^3"), {}) == -8.0
    assert evaluate(parse("x^(4/2)"), {"x": -3.0}) == 9.0
    with pytest.raises(EvaluationError):
        evaluate(parse("x^0.5"), {"x": -1.0})
    assert evaluate(parse("x^(1/2)"), {"x": 4.0}) == pytest.approx(2.0)


def test_variable_exponent_agrees_across_carriers() -> None:
    ast = parse("x^y")
    for point in ((2.0, 3.0), (0.7, -1.5)):
        real = evaluate(ast, {"x": point[0], "y": point[1]})
        jet = evaluate(ast, {"x": seed_jet(point[0], 0, 2), "y": seed_jet(point[1], 1, 2)})
        assert jet.value == real
    # an integral value of a variable exponent does not make it an integer power
    with pytest.raises(EvaluationError):
        evaluate(ast, {"x": -1.0, "y": 2.0})
    with pytest.raises(EvaluationError):
        evaluate(ast, {"x": seed_jet(-1.0, 0, 2), "y": seed_jet(2.0, 1, 2)})


def test_large_constant_exponents_finish() -> None:
    start = time.perf_counter()
    assert evaluate(parse("x^1e9"), {"x": 1.0}) == 1.0
    jet = evaluate(parse("x^1e9"), {"x": seed_jet(1.0, 0, 1)})
    assert jet.gradient[0] == 1e9
    with pytest.raises(EvaluationError):
        evaluate(parse("2^1e300"), {})
    assert time.perf_counter() - start < 5.0


def test_jet_evaluation_matches_float_evaluation() -> None:
    ast = parse("x1^2*y1 + sin(x2)*exp(y2)")
    point = (0.3, -0.2, 0.5, 0.1)
    jet = evaluate(ast, _jet_env(point))
    assert isinstance(jet, Jet2)
    assert jet.value == pytest.approx(evaluate(ast, _env(point)))


leaves = st.one_of(
    st.sampled_from(VARS).map(Variable),
    st.floats(min_value=0.0, max_value=1e6, allow_nan=False).map(lambda v: Number(abs(v))),
    st.sampled_from(["pi", "e"]).map(lambda name: Number(math.pi if name == "pi" else math.e, name)),
)


def _extend(children):
    return st.one_of(
        children.map(Neg),
        st.builds(Call, st.sampled_from(["sin", "cos", "exp", "log", "sqrt", "tanh"]), children),
        st.builds(Binary, st.sampled_from(["+", "-", "*", "/", "^"]), children, children),
    )


trees = st.recursive(leaves, _extend, max_leaves=12)


@settings(max_examples=100, deadline=None)
@given(trees)
def test_print_parse_round_trip(tree) -> None:
    assert parse(to_source(tree)) == tree


def test_derivative_prunes_trivial_operands() -> None:
    assert derivative(parse("x * y"), "x") == Variable("y")
    assert derivative(parse("3 + y"), "x") == Number(0.0)
    assert free_variables(derivative(parse("x^3"), "x")) == {"x"}


@pytest.mark.parametrize(
    "text",
    [
        "x1^3 * sin(y1)",
        "exp(x1 * y1) / (2 + x2^2)",
        "log(1 + x1^2) * sqrt(2 + y2)",
        "x1^y1",
        "tan(x1) + cosh(y1) - sinh(x2) * tanh(y2)",
        "(-x1)^3 * y1^-2",
    ],
)
def test_symbolic_derivative_matches_jets(text: str) -> None:
    ast = parse(text)
    point = (0.4, -0.3, 0.7, 0.2)
    jet = evaluate(ast, _jet_env(point))
    for index, name in enumerate(VARS):
        value = evaluate(derivative(ast, name), _env(point))
        assert value == pytest.approx(jet.gradient[index], rel=1e-12, abs=1e-12)


def _random_expression(rng: random.Random, depth: int) -> str:
    """Random source text whose every function stays inside its domain."""
    if depth == 0 or rng.random() < 0.2:
        if rng.random() < 0.6:
            return rng.choice(VARS)
        return f"({rng.uniform(-2.0, 2.0)!r})"
    a = _random_expression(rng, depth - 1)
    choice = rng.randrange(10)
    if choice == 0:
        return f"sin({a})"
    if choice == 1:
        return f"cos({a})"
    if choice == 2:
        return f"tanh({a})"
    if choice == 3:
        return f"exp(tanh({a}))"
    if choice == 4:
        return f"log(1 + ({a})^2)"
    if choice == 5:
        return f"sqrt(1 + ({a})^2)"
    b = _random_expression(rng, depth - 1)
    if choice == 6:
        return f"({a}) + ({b})"
    if choice == 7:
        return f"({a}) * ({b})"
    if choice == 8:
        return f"({a}) / ({rng.uniform(1.0, 2.0)!r} + ({b})^2)"
    return f"({a})^{rng.choice([2, 3])} - ({b})"


def test_jets_match_finite_differences_on_random_expressions() -> None:
    rng = random.Random(20240601)
    started = time.perf_counter()
    checked = 0
    while checked < 100:
        ast = parse(_random_expression(rng, 6))
        point = tuple(rng.uniform(-1.0, 1.0) for _ in VARS)
        jet = evaluate(ast, _jet_env(point))
        if not isinstance(jet, Jet2):
            jet = Jet2.constant(float(jet), len(VARS))
        if abs(jet.value) > 1e3 or np.max(np.abs(jet.gradient)) > 1e3:
            continue

        def value_at(y):
            return float(evaluate(ast, _env(y)))

        def gradient_at(y):
            result = evaluate(ast, _jet_env(y))
            return result.gradient if isinstance(result, Jet2) else np.zeros(len(VARS))

        assert close(jet.gradient, gradient(value_at, point))
        assert close(jet.hessian, jacobian(gradient_at, point))
        checked += 1
    assert time.perf_counter() - started < 5.0
