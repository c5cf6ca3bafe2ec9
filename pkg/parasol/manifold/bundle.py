"""Chart data: coordinates, metric, para-structure, vector field and constants."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from parasol.exprlang import ExprAst, Number, derivative, free_variables, to_source
from parasol.manifold.errors import SpecError
from parasol.manifold.params import SolitonParams, TensorParams, default_tensor_params

Matrix = Tuple[Tuple[ExprAst, ...], ...]

ZERO = Number(0.0)
ONE = Number(1.0)


def default_coordinates(n: int) -> Tuple[str, ...]:
    m = n // 2
    return tuple([f"x{i}" for i in range(1, m + 1)] + [f"y{i}" for i in range(1, m + 1)])


@dataclass(frozen=True)
class FieldBundle:
    """Immutable chart description; g entries (i, j) and (j, i) share one tree."""

    n: int
    coordinates: Tuple[str, ...]
    metric: Matrix
    structure: Matrix
    vector_field: Optional[Tuple[ExprAst, ...]] = None
    soliton: SolitonParams = field(default_factory=SolitonParams)
    tensor_params: TensorParams = field(default_factory=TensorParams)
    metric_kind: str = "explicit"
    structure_kind: str = "explicit"
    potential: Optional[ExprAst] = None

    def __post_init__(self) -> None:
        n = self.n
        if n < 2 or n % 2:
            raise SpecError(f"dimension must be even and at least 2, got n={n}")
        if len(self.coordinates) != n or len(set(self.coordinates)) != n:
            raise SpecError(f"expected {n} distinct coordinate names, got {list(self.coordinates)}")
        for label, matrix in (("g", self.metric), ("F", self.structure)):
            if len(matrix) != n or any(len(row) != n for row in matrix):
                raise SpecError(f"{label} must be a {n}x{n} array")
        for i in range(n):
            for j in range(i + 1, n):
                if self.metric[i][j] is not self.metric[j][i]:
                    raise SpecError(f"g[{i}][{j}] and g[{j}][{i}] must be the same expression")
        if self.vector_field is not None and len(self.vector_field) != n:
            raise SpecError(f"V must have {n} components, got {len(self.vector_field)}")
        allowed = set(self.coordinates)
        for label, ast in self.labelled_expressions():
            unknown = free_variables(ast) - allowed
            if unknown:
                raise SpecError(
                    f"{label} references unknown coordinate(s) {sorted(unknown)}: {to_source(ast)}"
                )

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def lam(self) -> float:
        return self.soliton.lam

    @property
    def p(self) -> float:
        return self.soliton.p

    @property
    def has_vector_field(self) -> bool:
        return self.vector_field is not None

    def labelled_expressions(self) -> Iterable[Tuple[str, ExprAst]]:
        for i in range(self.n):
            for j in range(i, self.n):
                yield f"g[{i}][{j}]", self.metric[i][j]
        for i in range(self.n):
            for j in range(self.n):
                yield f"F[{i}][{j}]", self.structure[i][j]
        if self.vector_field is not None:
            for i, ast in enumerate(self.vector_field):
                yield f"V[{i}]", ast

    def with_vector_field(self, components: Optional[Sequence[ExprAst]]) -> "FieldBundle":
        return replace(self, vector_field=None if components is None else tuple(components))

    def with_structure(self, entries: Sequence[Sequence[ExprAst]]) -> "FieldBundle":
        return replace(
            self, structure=tuple(tuple(row) for row in entries), structure_kind="explicit"
        )

    def with_params(
        self,
        soliton: Optional[SolitonParams] = None,
        tensor_params: Optional[TensorParams] = None,
    ) -> "FieldBundle":
        return replace(
            self,
            soliton=soliton if soliton is not None else self.soliton,
            tensor_params=tensor_params if tensor_params is not None else self.tensor_params,
        )


def symmetric_metric(n: int, entries: Dict[Tuple[int, int], ExprAst]) -> Matrix:
    """Build a shared-tree symmetric matrix from (i, j) entries; absent entries are 0."""
    rows: List[List[ExprAst]] = [[ZERO] * n for _ in range(n)]
    for (i, j), ast in entries.items():
        rows[i][j] = ast
        rows[j][i] = ast
    return tuple(tuple(row) for row in rows)


def dense_matrix(n: int, entries: Dict[Tuple[int, int], ExprAst]) -> Matrix:
    rows: List[List[ExprAst]] = [[ZERO] * n for _ in range(n)]
    for (i, j), ast in entries.items():
        rows[i][j] = ast
    return tuple(tuple(row) for row in rows)


def standard_structure(n: int) -> Matrix:
    """F = +I on the first half of the coordinates, −I on the second half."""
    m = n // 2
    return dense_matrix(
        n, {(i, i): (ONE if i < m else Number(-1.0)) for i in range(n)}
    )


def flat_metric(n: int) -> Matrix:
    m = n // 2
    return symmetric_metric(n, {(i, m + i): ONE for i in range(m)})


def potential_metric(phi: ExprAst, coordinates: Sequence[str]) -> Matrix:
    """g_{xi,yj} = ∂²φ/∂xi∂yj as symbolic trees; x-x and y-y blocks vanish."""
    n = len(coordinates)
    m = n // 2
    entries: Dict[Tuple[int, int], ExprAst] = {}
    for i in range(m):
        d_x = derivative(phi, coordinates[i])
        for j in range(m):
            entries[(i, m + j)] = derivative(d_x, coordinates[m + j])
    return symmetric_metric(n, entries)


def _require_m(m: int) -> None:
    if m < 2:
        raise SpecError(f"para-Kähler charts need m >= 2 (n = 2m >= 4), got m={m}")


def builtin_flat(
    m: int,
    soliton: Optional[SolitonParams] = None,
    tensor_params: Optional[TensorParams] = None,
    vector_field: Optional[Sequence[ExprAst]] = None,
) -> FieldBundle:
    """Canonical flat model: g(∂xi, ∂yj) = δij, F = diag(I, −I)."""
    _require_m(m)
    n = 2 * m
    return FieldBundle(
        n=n,
        coordinates=default_coordinates(n),
        metric=flat_metric(n),
        structure=standard_structure(n),
        vector_field=None if vector_field is None else tuple(vector_field),
        soliton=soliton or SolitonParams(),
        tensor_params=tensor_params or default_tensor_params(n),
        metric_kind="flat",
        structure_kind="standard",
    )


def builtin_potential(
    m: int,
    phi: ExprAst,
    soliton: Optional[SolitonParams] = None,
    tensor_params: Optional[TensorParams] = None,
    vector_field: Optional[Sequence[ExprAst]] = None,
) -> FieldBundle:
    """Para-Kähler chart generated by a potential φ over x1..xm, y1..ym."""
    _require_m(m)
    n = 2 * m
    coordinates = default_coordinates(n)
    return FieldBundle(
        n=n,
        coordinates=coordinates,
        metric=potential_metric(phi, coordinates),
        structure=standard_structure(n),
        vector_field=None if vector_field is None else tuple(vector_field),
        soliton=soliton or SolitonParams(),
        tensor_params=tensor_params or default_tensor_params(n),
        metric_kind="potential",
        structure_kind="standard",
        potential=phi,
    )
