import random
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parasol.checks import (
    FLAT_CASE_CHECKS,
    PSEUDO_PROJECTIVE,
    QUASI_CONFORMAL,
    W2,
    ParameterError,
    SolitonClass,
    check_soliton,
    check_trace_identity,
    classification_report,
    classify_soliton,
    conformal_einstein_residual,
    conformal_ricci_residual,
    einstein_flow_velocity,
    einstein_soliton_residual,
    flat_case_verdict,
    half_metric_trace,
    solenoidal_scalar_value,
    solenoidal_scalar_verdict,
    trace_identity,
)
from parasol.exprlang import Binary, Neg, Number, parse
from parasol.geometry import VECTOR_FIELD, divergence_at, geometry_at, lie_derivative_metric_at
from parasol.manifold import (
    SamplePlan,
    SolitonParams,
    TensorParams,
    builtin_flat,
    builtin_potential,
    sample_points,
    symmetric_metric,
)
from parasol.report.models import CheckStatus
from parasol.report.runner import evaluate_points
from tests.conftest import FIX_POT_PHI, fix_2d

TOL = 1e-7
POINT4 = (0.21, -0.13, 0.17, 0.08)


def _points(bundle, count=20, seed=42):
    return evaluate_points(bundle, sample_points(SamplePlan(count=count, seed=seed), bundle.n))


def _euler_field(c: float):
    return [parse(f"({c!r})*{name}") for name in ("x1", "x2", "y1", "y2")]


def test_fixed_soliton_residuals(fix_sol) -> None:
    for x in sample_points(SamplePlan(count=20, seed=42), 4):
        assert conformal_einstein_residual(fix_sol, x).norm < 1e-10
        pg = geometry_at(fix_sol, x, VECTOR_FIELD)
        assert abs(divergence_at(pg.metric, pg.ginv, pg.gamma, pg.vector)) < 1e-10
        assert abs(trace_identity(fix_sol, x)) < 1e-10
    assert einstein_soliton_residual(fix_sol, POINT4).norm == pytest.approx(0.5)
    assert conformal_ricci_residual(fix_sol, POINT4).norm == pytest.approx(1.0)


def test_fixed_soliton_verdicts(fix_sol) -> None:
    points = _points(fix_sol)
    params, tensor_params = fix_sol.soliton, fix_sol.tensor_params

    report = check_soliton("conformal_einstein_soliton", points, params, 4, TOL, True)
    assert report.status == CheckStatus.PASS
    assert report.points_checked == 20
    assert check_soliton("einstein_soliton", points, params, 4, TOL, True).status == CheckStatus.FAIL
    assert check_soliton("conformal_ricci_soliton", points, params, 4, TOL, True).status == CheckStatus.FAIL

    assert check_trace_identity(points, params, 4, TOL, True).status == CheckStatus.PASS

    scalar = solenoidal_scalar_verdict(points, params, 4, TOL, True)
    assert scalar.status == CheckStatus.PASS
    assert scalar.fitted_constants["formula_scalar"] == pytest.approx(0.0)
    assert "20/20" in scalar.message

    for which in (QUASI_CONFORMAL, PSEUDO_PROJECTIVE, W2):
        verdict = flat_case_verdict(which, points, params, tensor_params, 4, TOL, True)
        assert verdict.check_name == FLAT_CASE_CHECKS[which]
        assert verdict.status == CheckStatus.PASS
        assert "expected solenoidal: True" in verdict.message

    assert classification_report(params, TOL).message == "expanding"


def test_euler_fields_are_expanding_or_shrinking_solitons(flat4) -> None:
    rng = random.Random(11)
    found = 0
    while found < 5:
        lam, p = rng.uniform(-1.0, 1.0), rng.uniform(-2.0, 2.0)
        c = -lam - 0.5 * (p + 0.5)
        if abs(c) < 0.05:
            continue
        params = SolitonParams(lam=lam, p=p)
        bundle = flat4.with_vector_field(_euler_field(c)).with_params(soliton=params)
        points = _points(bundle, count=8, seed=found)
        report = check_soliton("conformal_einstein_soliton", points, params, 4, TOL, True)
        assert report.status == CheckStatus.PASS
        assert check_trace_identity(points, params, 4, TOL, True).status == CheckStatus.PASS
        assert solenoidal_scalar_verdict(points, params, 4, TOL, True).status == CheckStatus.PASS
        verdict = flat_case_verdict(W2, points, params, bundle.tensor_params, 4, TOL, True)
        assert verdict.status == CheckStatus.PASS
        assert "(nonzero)" in verdict.message
        for record in verdict.details:
            assert record.values["div_v"] == pytest.approx(4.0 * c)
            assert record.values["reduced_identity"] == pytest.approx(0.0, abs=1e-12)
        found += 1


_MONOMIALS = ["x1^2*y1^2", "x1*x2*y1*y2", "x1^3*y2", "x2^2*y1*y2", "x1*y1^3", "x2*y2^2*x1"]


def _random_bundle(rng: random.Random):
    terms = " + ".join(f"({rng.uniform(-0.2, 0.2)!r})*{m}" for m in rng.sample(_MONOMIALS, 3))
    phi = parse(f"x1*y1 + x2*y2 + {terms}")
    components = [
        parse(f"({rng.uniform(-1.0, 1.0)!r})*x1*y2 + ({rng.uniform(-1.0, 1.0)!r})*{name}^2")
        for name in ("y1", "x2", "x1", "y2")
    ]
    soliton = SolitonParams(lam=rng.uniform(-1.0, 1.0), p=rng.uniform(-1.0, 1.0))
    return builtin_potential(2, phi, soliton=soliton, vector_field=components)


def test_trace_identity_holds_on_random_bundles() -> None:
    rng = random.Random(20240602)
    for seed in range(10):
        bundle = _random_bundle(rng)
        points = _points(bundle, count=5, seed=seed)
        report = check_trace_identity(points, bundle.soliton, 4, 1e-9, True)
        assert report.status == CheckStatus.PASS
        # random data is no soliton, so the solenoidal verdict has nothing to judge
        gated = solenoidal_scalar_verdict(points, bundle.soliton, 4, TOL, True)
        assert gated.status == CheckStatus.NOT_APPLICABLE


def test_half_trace_equals_trace_identity(fix_pot) -> None:
    bundle = fix_pot.with_vector_field([parse("x2"), parse("x1*y1"), parse("y2^2"), parse("1")])
    bundle = bundle.with_params(soliton=SolitonParams(lam=0.3, p=-0.7))
    pg = geometry_at(bundle, POINT4, VECTOR_FIELD)
    residual = conformal_einstein_residual(bundle, POINT4)
    assert half_metric_trace(residual.matrix, pg.ginv) == pytest.approx(
        residual.trace_identity_value, abs=1e-12
    )


def test_static_flat_model_is_no_soliton(flat4) -> None:
    bundle = flat4.with_vector_field([parse("0")] * 4).with_params(soliton=SolitonParams(lam=1.0, p=0.0))
    residual = conformal_einstein_residual(bundle, POINT4)
    assert np.allclose(residual.matrix, 2.5 * geometry_at(bundle, POINT4).g)
    assert residual.trace_identity_value == pytest.approx(5.0)
    points = _points(bundle, count=4)
    gated = solenoidal_scalar_verdict(points, bundle.soliton, 4, TOL, True)
    assert gated.status == CheckStatus.NOT_APPLICABLE
    assert "fails at point 0" in gated.message


@pytest.mark.parametrize(
    "lam, p, n, expected",
    [(1.0, 0.0, 4, 5.0), (0.25, -1.0, 4, 0.0), (1.0, 0.0, 6, 3.5), (0.0, -0.5, 4, 0.0)],
)
def test_solenoidal_scalar_value(lam: float, p: float, n: int, expected: float) -> None:
    assert solenoidal_scalar_value(lam, p, n) == pytest.approx(expected)


def test_solenoidal_scalar_needs_dimension_above_two(fix_sol) -> None:
    with pytest.raises(ParameterError):
        solenoidal_scalar_value(1.0, 0.0, 2)
    report = solenoidal_scalar_verdict(_points(fix_sol, count=2), fix_sol.soliton, 2, TOL, True)
    assert report.status == CheckStatus.ERROR


@pytest.mark.parametrize(
    "which, params",
    [
        (QUASI_CONFORMAL, TensorParams(alpha=1.0, beta=-0.5)),
        (PSEUDO_PROJECTIVE, TensorParams(a=2.0, b=-2.0)),
    ],
)
def test_degenerate_parameter_combinations(fix_sol, which: str, params: TensorParams) -> None:
    report = flat_case_verdict(which, _points(fix_sol, count=2), fix_sol.soliton, params, 4, TOL, True)
    assert report.status == CheckStatus.DEGENERATE_PARAMS
    assert report.points_checked == 0
    assert not report.status.fails_run


def test_missing_vector_field_is_not_applicable(flat4) -> None:
    points = _points(flat4, count=2)
    params = SolitonParams(lam=0.25, p=-1.0)
    for report in (
        check_soliton("conformal_einstein_soliton", points, params, 4, TOL, False),
        check_trace_identity(points, params, 4, TOL, False),
        solenoidal_scalar_verdict(points, params, 4, TOL, False),
        flat_case_verdict(W2, points, params, flat4.tensor_params, 4, TOL, False),
    ):
        assert report.status == CheckStatus.NOT_APPLICABLE
        assert report.points_checked == 0


def test_unevaluable_vector_field_is_error() -> None:
    bundle = builtin_flat(
        2,
        soliton=SolitonParams(lam=0.25, p=-1.0),
        vector_field=[parse("log(x1)"), parse("0"), parse("0"), parse("0")],
    )
    points = evaluate_points(bundle, [(0.0, 0.1, 0.2, 0.1), (0.2, 0.1, 0.2, 0.1)])
    report = check_soliton("conformal_einstein_soliton", points, bundle.soliton, 4, TOL, True)
    assert report.status == CheckStatus.ERROR
    assert "V[0]" in report.message


@pytest.mark.parametrize(
    "lam, label",
    [(-0.5, SolitonClass.SHRINKING), (0.0, SolitonClass.STEADY), (2.0, SolitonClass.EXPANDING)],
)
def test_classification(lam: float, label: SolitonClass) -> None:
    assert classify_soliton(lam) == label
    report = classification_report(SolitonParams(lam=lam), TOL)
    assert report.status == CheckStatus.PASS
    assert report.message == label.value
    assert report.fitted_constants == {"lambda": lam}


def test_einstein_flow_vanishes_in_two_dimensions() -> None:
    pg = geometry_at(fix_2d(), (0.3, -0.4))
    assert np.max(np.abs(einstein_flow_velocity(pg.curvature, pg.g))) < 1e-12


def test_einstein_flow_on_potential_metric(fix_pot) -> None:
    pg = geometry_at(fix_pot, POINT4)
    velocity = einstein_flow_velocity(pg.curvature, pg.g)
    assert np.allclose(velocity, -2.0 * pg.curvature.ricci + pg.curvature.scalar * pg.g)
    # trace of the velocity is (n - 2) r
    assert np.einsum("ij,ij->", pg.ginv, velocity) == pytest.approx(2.0 * pg.curvature.scalar)


def _potential_with_field():
    return builtin_potential(
        2,
        parse(FIX_POT_PHI),
        soliton=SolitonParams(lam=0.3, p=-0.7),
        vector_field=[parse("x2"), parse("x1*y1"), parse("y2^2"), parse("1")],
    )


def _rescaled(bundle, k: float):
    n = bundle.n
    entries = {
        (i, j): Binary("*", Number(k), bundle.metric[i][j]) for i in range(n) for j in range(i, n)
    }
    return replace(bundle, metric=symmetric_metric(n, entries), metric_kind="explicit", potential=None)


def _flipped(bundle):
    return bundle.with_vector_field([Neg(component) for component in bundle.vector_field])


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=0.25, max_value=8.0))
def test_residual_under_metric_rescaling(k: float) -> None:
    bundle = _potential_with_field()
    pg = geometry_at(bundle, POINT4, VECTOR_FIELD)
    lie = lie_derivative_metric_at(pg.metric, pg.vector)
    S, r = pg.curvature.ricci, pg.curvature.scalar
    shift = bundle.p + 2.0 / bundle.n
    expected = k * lie + 2.0 * S + (2.0 * bundle.lam - r / k + shift) * k * pg.g

    scaled = _rescaled(bundle, k)
    assert geometry_at(scaled, POINT4).curvature.scalar == pytest.approx(r / k, rel=1e-10, abs=1e-12)
    residual = conformal_einstein_residual(scaled, POINT4).matrix
    assert np.max(np.abs(residual - expected)) < 1e-8 * max(1.0, k)


def test_flipped_field_leaves_only_the_static_part(fix_sol) -> None:
    for bundle in (fix_sol, _potential_with_field()):
        pg = geometry_at(bundle, POINT4)
        S, r = pg.curvature.ricci, pg.curvature.scalar
        static = 2.0 * S + (2.0 * bundle.lam - r + bundle.p + 2.0 / bundle.n) * pg.g
        forward = conformal_einstein_residual(bundle, POINT4).matrix
        backward = conformal_einstein_residual(_flipped(bundle), POINT4).matrix
        assert np.max(np.abs(forward + backward - 2.0 * static)) < 1e-10
