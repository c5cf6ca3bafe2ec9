"""
Spec file loader
Line-oriented `key = value` pairs under `[section]` headers, `#` comments
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from pydantic import ValidationError

from parasol.config import CHECK_ORDER, PARA_KAHLER_CHECKS, get_default_checks
from parasol.exprlang import (
    CONSTANTS,
    ExprAst,
    ExprError,
    Number,
    evaluate,
    free_variables,
    parse,
)
from parasol.jets import FUNCTION_NAMES
from parasol.manifold.bundle import (
    FieldBundle,
    dense_matrix,
    default_coordinates,
    flat_metric,
    potential_metric,
    standard_structure,
    symmetric_metric,
)
from parasol.manifold.errors import SpecError
from parasol.manifold.params import SolitonParams, TensorParams, default_beta
from parasol.manifold.registry import BuiltinRegistry
from parasol.manifold.sampling import SamplePlan

logger = logging.getLogger("SpecLoader")

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3

TOP_LEVEL = ""

SECTION_KEYS: Dict[str, Dict[str, int]] = {
    # key -> number of bracketed indices
    TOP_LEVEL: {"dimension": 0, "coordinates": 0},
    "metric": {"kind": 0, "potential": 0, "g": 2},
    "structure": {"kind": 0, "F": 2},
    "vector_field": {"V": 1},
    "soliton": {"lambda": 0, "p": 0},
    "tensor_params": {"alpha": 0, "beta": 0, "a": 0, "b": 0},
    "sampling": {"kind": 0, "points": 0, "count": 0, "seed": 0, "box": 0},
}

_SECTION_RE = re.compile(r"^\[\s*([A-Za-z_][A-Za-z0-9_]*)\s*\]$")
_ENTRY_RE = re.compile(
    r"^(?P<key>[A-Za-z_][A-Za-z0-9_]*)(?P<index>(?:\s*\[\s*\d+\s*\])*)\s*=\s*(?P<value>.*)$"
)
_INDEX_RE = re.compile(r"\[\s*(\d+)\s*\]")


@dataclass(frozen=True)
class SpecEntry:
    key: str
    indices: Tuple[int, ...]
    value: str
    line: int


@dataclass(frozen=True)
class LoadedSpec:
    bundle: FieldBundle
    plan: SamplePlan
    canonical_text: str
    digest: str
    requested: FrozenSet[str]


def fnv1a_64(data: bytes) -> int:
    value = FNV_OFFSET
    for byte in data:
        value ^= byte
        value = (value * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return value


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def canonicalize(text: str) -> str:
    """Comments removed, lines stripped, blank lines dropped."""
    lines = [_strip_comment(line) for line in text.splitlines()]
    return "\n".join(line for line in lines if line) + "\n"


def spec_digest(text: str) -> str:
    return f"{fnv1a_64(canonicalize(text).encode('utf-8')):016x}"


def _read_sections(text: str) -> Dict[str, Dict[str, SpecEntry]]:
    sections: Dict[str, Dict[str, SpecEntry]] = {TOP_LEVEL: {}}
    current = TOP_LEVEL
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        header = _SECTION_RE.match(line)
        if header:
            current = header.group(1)
            if current not in SECTION_KEYS:
                raise SpecError(f"unknown section [{current}]", number)
            if current in sections:
                raise SpecError(f"duplicate section [{current}]", number)
            sections[current] = {}
            continue
        entry = _ENTRY_RE.match(line)
        if entry is None:
            raise SpecError(f"expected 'key = value' or '[section]', got {line!r}", number)
        key = entry.group("key")
        indices = tuple(int(i) for i in _INDEX_RE.findall(entry.group("index")))
        allowed = SECTION_KEYS[current]
        where = f"[{current}]" if current else "top level"
        if key not in allowed:
            raise SpecError(f"unknown key {key!r} in {where}", number)
        if len(indices) != allowed[key]:
            raise SpecError(f"key {key!r} takes {allowed[key]} index(es), got {len(indices)}", number)
        label = key + "".join(f"[{i}]" for i in indices)
        if label in sections[current]:
            raise SpecError(f"duplicate key {label} in {where}", number)
        value = entry.group("value").strip()
        if not value:
            raise SpecError(f"empty value for {label}", number)
        sections[current][label] = SpecEntry(key, indices, value, number)
    return sections


def _expression(entry: SpecEntry) -> ExprAst:
    try:
        return parse(entry.value)
    except ExprError as exc:
        raise SpecError(f"{entry.key}: {exc}", entry.line) from exc


def _constant(entry: SpecEntry, text: Optional[str] = None) -> float:
    source = entry.value if text is None else text
    try:
        ast = parse(source)
        if free_variables(ast):
            raise SpecError(
                f"{entry.key} must be a constant, found variables {sorted(free_variables(ast))}",
                entry.line,
            )
        return float(evaluate(ast, {}))
    except ExprError as exc:
        raise SpecError(f"{entry.key}: {exc}", entry.line) from exc


def _integer(entry: SpecEntry) -> int:
    try:
        return int(entry.value, 0)
    except ValueError:
        raise SpecError(f"{entry.key} must be an integer, got {entry.value!r}", entry.line) from None


def _entries(section: Dict[str, SpecEntry], key: str) -> List[SpecEntry]:
    return [entry for entry in section.values() if entry.key == key]


def _check_index(entry: SpecEntry, n: int) -> None:
    for index in entry.indices:
        if not 0 <= index < n:
            raise SpecError(f"index {index} out of range for dimension {n}", entry.line)


def _coordinates(top: Dict[str, SpecEntry], n: int) -> Tuple[str, ...]:
    entry = top.get("coordinates")
    if entry is None:
        return default_coordinates(n)
    names = tuple(name.strip() for name in entry.value.split(","))
    if len(names) != n:
        raise SpecError(f"{len(names)} coordinates listed for dimension {n}", entry.line)
    for name in names:
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
            raise SpecError(f"invalid coordinate name {name!r}", entry.line)
        if name in CONSTANTS or name in FUNCTION_NAMES:
            raise SpecError(f"coordinate name {name!r} is reserved", entry.line)
    if len(set(names)) != n:
        raise SpecError("coordinate names must be distinct", entry.line)
    return names


def _metric(
    section: Dict[str, SpecEntry],
    coordinates: Tuple[str, ...],
    registry: BuiltinRegistry,
) -> Tuple[Tuple[Tuple[ExprAst, ...], ...], str, Optional[ExprAst]]:
    n = len(coordinates)
    entries = _entries(section, "g")
    kind_entry = section.get("kind")
    if kind_entry is not None:
        kind = kind_entry.value
    elif entries:
        kind = "explicit"
    elif "potential" in section:
        kind = "potential"
    else:
        kind = "flat"
    line = kind_entry.line if kind_entry else None

    if kind == "explicit":
        if "potential" in section:
            raise SpecError("potential is only valid with kind = potential", section["potential"].line)
        if not entries:
            raise SpecError("explicit metric needs at least one g[i][j] entry", line)
        values: Dict[Tuple[int, int], ExprAst] = {}
        for entry in entries:
            _check_index(entry, n)
            i, j = entry.indices
            key = (min(i, j), max(i, j))
            if key in values:
                raise SpecError(f"g[{i}][{j}] duplicates g[{key[0]}][{key[1]}]", entry.line)
            values[key] = _expression(entry)
        return symmetric_metric(n, values), kind, None

    if not registry.has(kind):
        known = ", ".join(sorted(f.name for f in registry.list_families()))
        raise SpecError(f"unknown metric kind {kind!r} (known: {known}, explicit)", line)
    family = registry.get(kind)
    if entries:
        raise SpecError("g[i][j] entries require kind = explicit", entries[0].line)
    for required in family.requires:
        if required not in section:
            raise SpecError(f"metric kind {kind!r} requires '{required}'", line)
    if family.construction == "potential":
        phi = _expression(section["potential"])
        return potential_metric(phi, coordinates), kind, phi
    if "potential" in section:
        raise SpecError(f"potential is not used by metric kind {kind!r}", section["potential"].line)
    return flat_metric(n), kind, None


def _structure(section: Dict[str, SpecEntry], n: int) -> Tuple[Tuple[Tuple[ExprAst, ...], ...], str]:
    entries = _entries(section, "F")
    kind_entry = section.get("kind")
    kind = kind_entry.value if kind_entry else ("explicit" if entries else "standard")
    if kind == "standard":
        if entries:
            raise SpecError("F[i][j] entries require kind = explicit", entries[0].line)
        return standard_structure(n), kind
    if kind != "explicit":
        raise SpecError(
            f"unknown structure kind {kind!r} (known: standard, explicit)",
            kind_entry.line if kind_entry else None,
        )
    values: Dict[Tuple[int, int], ExprAst] = {}
    for entry in entries:
        _check_index(entry, n)
        values[(entry.indices[0], entry.indices[1])] = _expression(entry)
    return dense_matrix(n, values), kind


def _vector_field(section: Optional[Dict[str, SpecEntry]], n: int) -> Optional[Tuple[ExprAst, ...]]:
    if section is None:
        return None
    components: List[ExprAst] = [Number(0.0)] * n
    for entry in _entries(section, "V"):
        _check_index(entry, n)
        components[entry.indices[0]] = _expression(entry)
    return tuple(components)


def _parse_points(entry: SpecEntry) -> List[Tuple[float, ...]]:
    points = []
    for chunk in entry.value.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise SpecError(f"points must look like (c1, c2, ...), got {chunk!r}", entry.line)
        points.append(tuple(_constant(entry, c) for c in chunk[1:-1].split(",")))
    return points


def _parse_box(entry: SpecEntry) -> List[Tuple[float, float]]:
    intervals = []
    for chunk in entry.value.split(","):
        parts = chunk.split("..")
        if len(parts) != 2:
            raise SpecError(f"box intervals must look like lo..hi, got {chunk.strip()!r}", entry.line)
        intervals.append((_constant(entry, parts[0]), _constant(entry, parts[1])))
    return intervals


def _plan(section: Optional[Dict[str, SpecEntry]], n: int) -> SamplePlan:
    if section is None:
        return SamplePlan()
    fields: Dict[str, object] = {}
    if "kind" in section:
        fields["kind"] = section["kind"].value
    if "points" in section:
        fields["points"] = _parse_points(section["points"])
        fields.setdefault("kind", "list")
    if "count" in section:
        fields["count"] = _integer(section["count"])
    if "seed" in section:
        fields["seed"] = _integer(section["seed"])
    if "box" in section:
        fields["box"] = _parse_box(section["box"])
        if len(fields["box"]) not in (1, n):
            raise SpecError(
                f"box needs 1 or {n} intervals, got {len(fields['box'])}", section["box"].line
            )
    try:
        plan = SamplePlan(**fields)
    except ValidationError as exc:
        raise SpecError(f"invalid [sampling] section: {exc}") from exc
    if plan.kind == "list":
        for point in plan.points:
            if len(point) != n:
                raise SpecError(
                    f"sample point {point} has {len(point)} coordinates, dimension is {n}",
                    section["points"].line if "points" in section else None,
                )
    return plan


def _validate_requested(requested: Optional[Iterable[str]]) -> FrozenSet[str]:
    names = frozenset(get_default_checks() if requested is None else requested)
    unknown = names - set(CHECK_ORDER)
    if unknown:
        raise SpecError(f"unknown check(s): {', '.join(sorted(unknown))}")
    return names


def load_spec(
    text: str,
    requested: Optional[Iterable[str]] = None,
    registry: Optional[BuiltinRegistry] = None,
) -> LoadedSpec:
    """Parse and validate spec text into a FieldBundle and SamplePlan.

    requested names the checks that will run; para-Kähler checks enforce m >= 2
    and the tensor checks reject vanishing leading constants.
    """
    checks = _validate_requested(requested)
    registry = registry or BuiltinRegistry.default()
    sections = _read_sections(text)
    top = sections[TOP_LEVEL]

    if "dimension" not in top:
        raise SpecError("missing top-level key 'dimension'")
    n = _integer(top["dimension"])
    if n % 2 or n < 2:
        raise SpecError(f"dimension must be even (n = 2m), got {n}", top["dimension"].line)
    if n < 4 and checks & PARA_KAHLER_CHECKS:
        raise SpecError(
            f"m >= 2 is required for para-Kähler checks ({', '.join(sorted(checks & PARA_KAHLER_CHECKS))}), "
            f"got dimension {n}",
            top["dimension"].line,
        )
    coordinates = _coordinates(top, n)
    metric, metric_kind, potential = _metric(sections.get("metric", {}), coordinates, registry)
    structure, structure_kind = _structure(sections.get("structure", {}), n)
    vector_field = _vector_field(sections.get("vector_field"), n)

    soliton_section = sections.get("soliton", {})
    soliton = SolitonParams(
        lam=_constant(soliton_section["lambda"]) if "lambda" in soliton_section else 0.0,
        p=_constant(soliton_section["p"]) if "p" in soliton_section else 0.0,
    )
    tp_section = sections.get("tensor_params", {})
    tensor_values = {
        "alpha": 1.0,
        "beta": default_beta(n),
        "a": 1.0,
        "b": 1.0,
    }
    for key in tensor_values:
        if key in tp_section:
            tensor_values[key] = _constant(tp_section[key])
    tensor_params = TensorParams(**tensor_values)
    if checks & {"quasi_conformal", "solenoidal_quasi_conformal"} and tensor_params.alpha == 0.0:
        raise SpecError("alpha must be nonzero for the quasi-conformal tensor")
    if checks & {"pseudo_projective", "solenoidal_pseudo_projective"}:
        if tensor_params.a == 0.0 or tensor_params.b == 0.0:
            raise SpecError("a and b must be nonzero for the pseudo-projective tensor")

    bundle = FieldBundle(
        n=n,
        coordinates=coordinates,
        metric=metric,
        structure=structure,
        vector_field=vector_field,
        soliton=soliton,
        tensor_params=tensor_params,
        metric_kind=metric_kind,
        structure_kind=structure_kind,
        potential=potential,
    )
    plan = _plan(sections.get("sampling"), n)
    canonical = canonicalize(text)
    digest = f"{fnv1a_64(canonical.encode('utf-8')):016x}"
    logger.info(
        f"Loaded spec digest={digest} n={n} metric={metric_kind} "
        f"points={plan.size} vector_field={vector_field is not None}"
    )
    return LoadedSpec(
        bundle=bundle,
        plan=plan,
        canonical_text=canonical,
        digest=digest,
        requested=checks,
    )


def load_spec_file(
    path: Path,
    requested: Optional[Iterable[str]] = None,
    registry: Optional[BuiltinRegistry] = None,
) -> LoadedSpec:
    return load_spec(Path(path).read_text(encoding="utf-8"), requested, registry)
