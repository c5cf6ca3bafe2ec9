"""Sample plans and the SplitMix64 point sampler."""

from __future__ import annotations

import logging
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from parasol.config import SAMPLING_CONFIG

logger = logging.getLogger("Sampling")

Point = Tuple[float, ...]

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
UNIT_SCALE = 1.0 / 9007199254740992.0  # 2**-53


class SplitMix64:
    """Stateful SplitMix64 stream; outputs are bit-exact across implementations."""

    def __init__(self, seed: int) -> None:
        self.state = int(seed) & MASK64

    def next64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next64() >> 11) * UNIT_SCALE


class SamplePlan(BaseModel):
    """Explicit point list or a seeded random box."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["list", "random"] = "random"
    points: List[Point] = Field(default_factory=list)
    count: int = Field(default=SAMPLING_CONFIG["default_count"], ge=1)
    seed: int = Field(default=SAMPLING_CONFIG["default_seed"], ge=0, le=MASK64)
    box: List[Tuple[float, float]] = Field(
        default_factory=lambda: [tuple(SAMPLING_CONFIG["default_box"])]
    )

    @model_validator(mode="after")
    def _check_consistency(self) -> "SamplePlan":
        if self.kind == "list" and not self.points:
            raise ValueError("list sample plan needs at least one point")
        if not self.box:
            raise ValueError("box must name at least one interval")
        for lo, hi in self.box:
            if not lo < hi:
                raise ValueError(f"box interval must satisfy low < high, got {lo}..{hi}")
        return self

    @property
    def size(self) -> int:
        return len(self.points) if self.kind == "list" else self.count

    def with_overrides(
        self, count: Optional[int] = None, seed: Optional[int] = None
    ) -> "SamplePlan":
        """--points truncates a list plan or sets the random count; --seed only touches random plans."""
        updates = {}
        if count is not None:
            if count < 1:
                raise ValueError(f"point count must be >= 1, got {count}")
            if self.kind == "list":
                updates["points"] = list(self.points[:count])
            else:
                updates["count"] = count
        if seed is not None and self.kind == "random":
            updates["seed"] = seed
        if not updates:
            return self
        return SamplePlan.model_validate({**self.model_dump(), **updates})


def _intervals(plan: SamplePlan, n: int) -> List[Tuple[float, float]]:
    if len(plan.box) == 1:
        return [plan.box[0]] * n
    if len(plan.box) != n:
        raise ValueError(f"box has {len(plan.box)} intervals for a chart of dimension {n}")
    return list(plan.box)


def sample_points(plan: SamplePlan, n: int) -> List[Point]:
    """Points of the plan, coordinates drawn in index order for random plans."""
    if plan.kind == "list":
        points: List[Point] = []
        for index, point in enumerate(plan.points):
            if len(point) != n:
                raise ValueError(
                    f"point {index} has {len(point)} coordinates, chart dimension is {n}"
                )
            points.append(tuple(float(c) for c in point))
        return points
    intervals = _intervals(plan, n)
    rng = SplitMix64(plan.seed)
    points = []
    for _ in range(plan.count):
        points.append(tuple(lo + (hi - lo) * rng.next_unit() for lo, hi in intervals))
    logger.debug(f"Sampled {plan.count} points with seed={plan.seed}")
    return points
