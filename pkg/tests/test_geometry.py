import numpy as np
import pytest

from parasol.exprlang import evaluate, parse
from parasol.geometry import (
    METRIC,
    VECTOR_FIELD,
    christoffel_at,
    curvature_symmetry_residuals,
    divergence_at,
    evaluate_point,
    f_contraction,
    f_contraction_metric,
    frame_gram_residual,
    geometry_at,
    lie_derivative_metric_at,
    pseudo_orthonormal_frame,
    ricci_at,
    ricci_operator_at,
    scalar_curvature_at,
)
from parasol.manifold import (
    DegenerateMetricError,
    FieldBundle,
    FieldEvaluationError,
    MissingVectorFieldError,
    builtin_flat,
    default_coordinates,
    inverse_metric,
    metric_at,
    standard_structure,
    symmetric_metric,
)
from tests.conftest import fix_2d
from tests.oracles import close, curvature_fd

ORIGIN4 = (0.0, 0.0, 0.0, 0.0)
POINT4 = (0.21, -0.13, 0.17, 0.08)


def _float_metric(bundle: FieldBundle):
    def metric(x):
        env = dict(zip(bundle.coordinates, x))
        n = bundle.n
        return np.array([[float(evaluate(bundle.metric[i][j], env)) for j in range(n)] for i in range(n)])

    return metric


def test_christoffel_on_two_dimensional_chart() -> None:
    bundle = fix_2d()
    mj = metric_at(bundle, (1.0, 2.0))
    gamma = christoffel_at(mj, inverse_metric(mj.g, (1.0, 2.0)))
    assert gamma[0, 0, 0] == pytest.approx(2.0 / 3.0)
    assert gamma[1, 1, 1] == pytest.approx(1.0 / 3.0)
    assert gamma[0, 0, 1] == pytest.approx(0.0)
    assert np.allclose(gamma, np.einsum("kji->kij", gamma))


def test_two_dimensional_curvature_at_origin() -> None:
    pg = geometry_at(fix_2d(), (0.0, 0.0))
    assert pg.curvature.ricci[0, 1] == pytest.approx(-1.0)
    assert pg.curvature.scalar == pytest.approx(-2.0)


def test_flat_model_has_no_curvature(flat4) -> None:
    pg = geometry_at(flat4, POINT4)
    assert np.max(np.abs(pg.gamma)) < 1e-12
    assert np.max(np.abs(pg.curvature.riemann_low)) < 1e-12
    assert abs(pg.curvature.scalar) < 1e-12


def test_potential_metric_curvature_at_origin(fix_pot) -> None:
    pg = geometry_at(fix_pot, ORIGIN4)
    assert pg.curvature.ricci[0, 2] == pytest.approx(-4.0, abs=1e-6)
    assert pg.curvature.scalar == pytest.approx(-8.0, abs=1e-6)
    assert scalar_curvature_at(pg.curvature, pg.ginv) == pytest.approx(pg.curvature.scalar)
    assert np.allclose(ricci_at(pg.curvature), pg.curvature.ricci)


@pytest.mark.parametrize("point", [ORIGIN4, POINT4])
def test_curvature_matches_finite_difference_oracle(fix_pot, point) -> None:
    riemann, ricci, scalar = curvature_fd(_float_metric(fix_pot), point)
    pg = geometry_at(fix_pot, point)
    assert close(pg.curvature.riemann_up, riemann)
    assert close(pg.curvature.ricci, ricci)
    assert scalar == pytest.approx(pg.curvature.scalar, abs=1e-6)
    if point == ORIGIN4:
        assert ricci[0, 2] == pytest.approx(-4.0, abs=1e-6)
        assert scalar == pytest.approx(-8.0, abs=1e-6)


def test_riemann_symmetries(fix_pot) -> None:
    pg = geometry_at(fix_pot, POINT4)
    residuals = curvature_symmetry_residuals(pg.curvature.riemann_low)
    assert set(residuals) == {"antisymmetry_ij", "antisymmetry_kl", "pair_symmetry", "first_bianchi"}
    assert max(residuals.values()) < 1e-10


def test_ricci_operator_lowers_back(fix_pot) -> None:
    pg = geometry_at(fix_pot, POINT4)
    Q = ricci_operator_at(pg.curvature, pg.ginv)
    assert np.allclose(pg.g @ Q, pg.curvature.ricci)


def test_parallel_structure_on_potential_metric(fix_pot) -> None:
    pg = geometry_at(fix_pot, POINT4)
    assert np.max(np.abs(pg.nabla_F)) < 1e-12


def test_lie_derivative_and_divergence(flat4) -> None:
    killing = flat4.with_vector_field([parse("x1"), parse("0"), parse("-y1"), parse("0")])
    pg = geometry_at(killing, POINT4, VECTOR_FIELD)
    assert np.max(np.abs(lie_derivative_metric_at(pg.metric, pg.vector))) < 1e-14
    assert abs(divergence_at(pg.metric, pg.ginv, pg.gamma, pg.vector)) < 1e-14

    euler = flat4.with_vector_field([parse(name) for name in flat4.coordinates])
    pg = geometry_at(euler, POINT4, VECTOR_FIELD)
    assert np.allclose(lie_derivative_metric_at(pg.metric, pg.vector), 2.0 * pg.g)
    assert divergence_at(pg.metric, pg.ginv, pg.gamma, pg.vector) == pytest.approx(4.0)


def test_lie_derivative_requires_vector_field(flat4) -> None:
    pg = geometry_at(flat4, POINT4)
    with pytest.raises(MissingVectorFieldError):
        lie_derivative_metric_at(pg.metric, None)
    with pytest.raises(MissingVectorFieldError):
        divergence_at(pg.metric, pg.ginv, pg.gamma, None)


def test_divergence_trace_of_lie_derivative(fix_pot) -> None:
    bundle = fix_pot.with_vector_field([parse("x1*y2"), parse("y1^2"), parse("x2"), parse("x1 - y1")])
    pg = geometry_at(bundle, POINT4, VECTOR_FIELD)
    lie = lie_derivative_metric_at(pg.metric, pg.vector)
    div = divergence_at(pg.metric, pg.ginv, pg.gamma, pg.vector)
    assert 0.5 * np.einsum("ij,ij->", pg.ginv, lie) == pytest.approx(div, abs=1e-12)


def test_pseudo_orthonormal_frame(fix_pot) -> None:
    g = metric_at(fix_pot, POINT4).g
    frame = pseudo_orthonormal_frame(g, POINT4)
    assert frame.counts == (2, 2)
    assert frame_gram_residual(g, frame) < 1e-12
    again = pseudo_orthonormal_frame(g, POINT4)
    assert np.array_equal(frame.vectors, again.vectors)


def test_frame_on_tied_eigenvalues_is_deterministic(flat4) -> None:
    g = metric_at(flat4, ORIGIN4).g
    frame = pseudo_orthonormal_frame(g)
    assert list(frame.signs) == [1.0, 1.0, -1.0, -1.0]
    assert frame_gram_residual(g, frame) < 1e-12
    assert np.array_equal(frame.vectors, pseudo_orthonormal_frame(g.copy()).vectors)


def test_frame_rejects_degenerate_matrix() -> None:
    with pytest.raises(DegenerateMetricError):
        pseudo_orthonormal_frame(np.diag([1.0, 0.0, -1.0, 1.0]))


def test_f_contraction_is_frame_independent(fix_pot) -> None:
    pg = geometry_at(fix_pot, POINT4)
    frame = pseudo_orthonormal_frame(pg.g, POINT4)
    via_frame = f_contraction(pg.curvature.riemann_low, pg.structure.F, frame)
    via_inverse = f_contraction_metric(pg.curvature.riemann_low, pg.structure.F, pg.ginv)
    assert np.allclose(via_frame, via_inverse, atol=1e-12)


def test_evaluate_point_records_failures_per_part() -> None:
    bundle = builtin_flat(2, vector_field=[parse("log(x1)"), parse("0"), parse("0"), parse("0")])
    pg = evaluate_point(bundle, ORIGIN4, index=3)
    assert pg.index == 3
    assert pg.curvature is not None
    assert pg.failure(VECTOR_FIELD) is not None
    assert pg.failure(METRIC) is None
    pg.require()
    with pytest.raises(FieldEvaluationError):
        pg.require(VECTOR_FIELD)


def test_evaluate_point_marks_degenerate_points() -> None:
    bundle = FieldBundle(
        n=4,
        coordinates=default_coordinates(4),
        metric=symmetric_metric(4, {(0, 2): parse("x1"), (1, 3): parse("1")}),
        structure=standard_structure(4),
    )
    pg = evaluate_point(bundle, ORIGIN4)
    assert pg.degenerate is not None
    assert pg.curvature is None
    with pytest.raises(DegenerateMetricError):
        pg.require()


def test_geometry_scale(fix_pot) -> None:
    pg = geometry_at(fix_pot, ORIGIN4)
    assert pg.scale == 1.0
    assert pg.g[0, 2] == 1.0
