"""Registry of builtin chart families, loaded from YAML."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional

import yaml

from parasol.config import ENV_BUILTINS_YAML

DEFAULT_BUILTINS_PATH = Path(__file__).with_name("builtins.yaml")

CONSTRUCTIONS = ("flat", "potential")


@dataclass(frozen=True)
class BuiltinFamily:
    name: str
    construction: str
    structure: str
    parameters: List[str]
    requires: List[str]
    description: str


class BuiltinRegistry:
    """Load and query builtin metric families."""

    def __init__(self, families: Dict[str, BuiltinFamily]) -> None:
        self._families = families

    @classmethod
    def from_yaml(cls, path: Path) -> "BuiltinRegistry":
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        families: Dict[str, BuiltinFamily] = {}
        for name, entry in (data.get("families") or {}).items():
            construction = str(entry.get("construction", name))
            if construction not in CONSTRUCTIONS:
                raise ValueError(
                    f"Builtin family {name!r} has unknown construction {construction!r}"
                )
            families[name] = BuiltinFamily(
                name=name,
                construction=construction,
                structure=str(entry.get("structure", "standard")),
                parameters=list(entry.get("parameters", [])),
                requires=list(entry.get("requires", [])),
                description=str(entry.get("description", "")),
            )
        return cls(families)

    @classmethod
    def default(cls, path: Optional[Path] = None) -> "BuiltinRegistry":
        """Registry from an explicit path, PARASOL_BUILTINS_YAML, or the packaged file."""
        if path is None:
            override = os.getenv(ENV_BUILTINS_YAML)
            path = Path(override) if override else DEFAULT_BUILTINS_PATH
        return cls.from_yaml(path)

    def list_families(self) -> Iterable[BuiltinFamily]:
        return self._families.values()

    def get(self, name: str) -> BuiltinFamily:
        return self._families[name]

    def has(self, name: str) -> bool:
        return name in self._families
