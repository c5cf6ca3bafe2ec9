"""Report and run-option models."""

from __future__ import annotations

from enum import Enum
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from parasol.config import CHECK_CONFIG, CHECK_ORDER, get_default_checks


class CheckStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    NOT_APPLICABLE = "NOT-APPLICABLE"
    DEGENERATE_PARAMS = "DEGENERATE-PARAMS"
    ERROR = "ERROR"

    @property
    def fails_run(self) -> bool:
        return self in (CheckStatus.FAIL, CheckStatus.ERROR)


class PointRecord(BaseModel):
    """Per-point outcome of one check."""

    index: int = Field(ge=0)
    point: List[float]
    residual: Optional[float] = None
    status: CheckStatus
    values: Dict[str, Optional[float]] = Field(default_factory=dict)
    message: str = ""


class CheckReport(BaseModel):
    check_name: str
    status: CheckStatus
    max_residual: Optional[float] = None
    tolerance: float = Field(gt=0)
    points_checked: int = Field(default=0, ge=0)
    worst_point: Optional[List[float]] = None
    details: List[PointRecord] = Field(default_factory=list)
    fitted_constants: Optional[Dict[str, Optional[float]]] = None
    message: str = ""

    @model_validator(mode="after")
    def _pass_within_tolerance(self) -> "CheckReport":
        if self.status == CheckStatus.PASS:
            if self.max_residual is not None and not self.max_residual <= self.tolerance:
                raise ValueError(
                    f"{self.check_name}: PASS with max_residual={self.max_residual} > "
                    f"tolerance={self.tolerance}"
                )
        if self.status in (CheckStatus.PASS, CheckStatus.FAIL) and self.points_checked < 1:
            raise ValueError(f"{self.check_name}: {self.status.value} needs at least one point")
        return self


class RunOptions(BaseModel):
    """Options of one verification run; flags and environment resolve into this."""

    model_config = ConfigDict(frozen=True)

    tolerance: float = Field(default=CHECK_CONFIG["tolerance"], gt=0)
    axiom_tolerance: float = Field(default=CHECK_CONFIG["axiom_tolerance"], gt=0)
    points: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = Field(default=None, ge=0, le=0xFFFFFFFFFFFFFFFF)
    format: Literal["text", "json"] = "text"
    checks: List[str] = Field(default_factory=get_default_checks)
    workers: int = Field(default=1, ge=1)
    progress: bool = False

    @field_validator("checks")
    @classmethod
    def _known_checks(cls, value: List[str]) -> List[str]:
        unknown = [name for name in value if name not in CHECK_ORDER]
        if unknown:
            raise ValueError(f"unknown check(s): {', '.join(unknown)}")
        # execution order is the catalogue order, whatever order was asked for
        return [name for name in CHECK_ORDER if name in set(value)]
