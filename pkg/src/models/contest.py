"""
Contest problem data: impact function, choice set and full contest description
"""

from enum import Enum
from typing import Any, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.core.config import settings
from src.utils.numbers import parse_number


class ImpactFamily(str, Enum):
    """Supported impact function families"""
    SCALED_POWER = "ScaledPower"


class ImpactFunction(BaseModel):
    """Concave impact f(e) = a * e**r entering the logit success function"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    family: ImpactFamily = ImpactFamily.SCALED_POWER
    r: float = Field(default=1.0, gt=0, le=1, description="Exponent, 0 < r <= 1")
    a: float = Field(default=1.0, gt=0, description="Scale, cancels in the success ratio")

    @field_validator("r", "a", mode="before")
    @classmethod
    def _parse(cls, value: Any) -> float:
        return parse_number(value)


class ChoiceSet(BaseModel):
    """Feasible efforts as ordered, disjoint closed segments [lo, hi]

    A point is a segment with lo == hi. Only closed segments are admitted, so the
    efforts bracketing any target always exist when the set straddles it.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    segments: Tuple[Tuple[float, float], ...]

    @model_validator(mode="before")
    @classmethod
    def _from_list(cls, data: Any) -> Any:
        # A bare list is the config-file shape: [[lo, hi], point, ...]
        if isinstance(data, (list, tuple)):
            return {"segments": data}
        return data

    @field_validator("segments", mode="before")
    @classmethod
    def _parse_segments(cls, value: Any) -> Tuple[Tuple[float, float], ...]:
        if not isinstance(value, (list, tuple)):
            raise ValueError("choice set must be a list of [lo, hi] pairs or points")
        segments = []
        for index, item in enumerate(value):
            if isinstance(item, (list, tuple)):
                if len(item) != 2:
                    raise ValueError(f"segment {index} must have exactly two endpoints")
                lo, hi = parse_number(item[0]), parse_number(item[1])
            else:
                lo = hi = parse_number(item)
            segments.append((lo, hi))
        return tuple(segments)

    @field_validator("segments")
    @classmethod
    def _check_order(cls, segments: Tuple[Tuple[float, float], ...]) -> Tuple[Tuple[float, float], ...]:
        if not segments:
            raise ValueError("choice set must not be empty")
        previous_hi = None
        for index, (lo, hi) in enumerate(segments):
            if lo < 0:
                raise ValueError(f"segment {index} has a negative endpoint")
            if lo > hi:
                raise ValueError(f"segment {index} has lo > hi")
            if previous_hi is not None and lo <= previous_hi:
                raise ValueError(f"segment {index} overlaps or precedes segment {index - 1}")
            previous_hi = hi
        return segments

    @property
    def minimum(self) -> float:
        return self.segments[0][0]

    @property
    def maximum(self) -> float:
        return self.segments[-1][1]

    @property
    def is_finite(self) -> bool:
        """True when every segment is a single point"""
        return all(lo == hi for lo, hi in self.segments)

    def points(self) -> List[float]:
        """Points of a finite choice set"""
        if not self.is_finite:
            raise ValueError("choice set contains interval segments")
        return [lo for lo, _ in self.segments]

    def contains(self, effort: float) -> bool:
        """Exact membership; closed segments make this decidable without tolerance"""
        return any(lo <= effort <= hi for lo, hi in self.segments)

    @classmethod
    def from_points(cls, points: List[float]) -> "ChoiceSet":
        return cls(segments=tuple((p, p) for p in sorted(set(points))))


class Tolerances(BaseModel):
    """Optional tolerance overrides carried by a contest config"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    root: Optional[float] = Field(default=None, gt=0)
    knife_edge: Optional[float] = Field(default=None, gt=0)
    tie: Optional[float] = Field(default=None, gt=0)


class ContestSpec(BaseModel):
    """Full problem instance: valuations, impact function and feasible efforts

    Exactly one of ``choice_set`` (shared by both players) or the pair
    ``efforts_1``/``efforts_2`` (finite per-player lists) is present.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    valuations: Tuple[float, ...] = Field(..., description="One common value or two per-player values")
    impact: ImpactFunction = Field(default_factory=ImpactFunction)
    choice_set: Optional[ChoiceSet] = None
    efforts_1: Optional[Tuple[float, ...]] = None
    efforts_2: Optional[Tuple[float, ...]] = None
    tolerances: Optional[Tolerances] = None

    @field_validator("valuations", mode="before")
    @classmethod
    def _parse_valuations(cls, value: Any) -> Tuple[float, ...]:
        if not isinstance(value, (list, tuple)):
            value = [value]
        return tuple(parse_number(v) for v in value)

    @field_validator("valuations")
    @classmethod
    def _check_valuations(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if len(value) not in (1, 2):
            raise ValueError("give one common valuation or two per-player valuations")
        if any(v <= 0 for v in value):
            raise ValueError("valuations must be strictly positive")
        return value

    @field_validator("efforts_1", "efforts_2", mode="before")
    @classmethod
    def _parse_efforts(cls, value: Any) -> Optional[Tuple[float, ...]]:
        if value is None:
            return None
        if not isinstance(value, (list, tuple)):
            raise ValueError("effort lists must be lists of numbers")
        efforts = []
        for item in value:
            if isinstance(item, (list, tuple)):
                raise ValueError("per-player effort lists take points only; use choice_set and a grid step for intervals")
            efforts.append(parse_number(item))
        return tuple(efforts)

    @field_validator("efforts_1", "efforts_2")
    @classmethod
    def _check_efforts(cls, value: Optional[Tuple[float, ...]]) -> Optional[Tuple[float, ...]]:
        if value is None:
            return None
        if not value:
            raise ValueError("effort lists must not be empty")
        if any(e < 0 for e in value):
            raise ValueError("efforts must be nonnegative")
        return value

    @model_validator(mode="after")
    def _check_sources(self) -> "ContestSpec":
        has_lists = self.efforts_1 is not None or self.efforts_2 is not None
        if self.choice_set is not None and has_lists:
            raise ValueError("give either choice_set or efforts_1/efforts_2, not both")
        if self.choice_set is None and not has_lists:
            raise ValueError("one of choice_set or efforts_1/efforts_2 is required")
        if has_lists and (self.efforts_1 is None or self.efforts_2 is None):
            raise ValueError("efforts_1 and efforts_2 must be given together")
        return self

    @property
    def valuation_1(self) -> float:
        return self.valuations[0]

    @property
    def valuation_2(self) -> float:
        return self.valuations[-1]

    @property
    def is_symmetric(self) -> bool:
        return self.valuation_1 == self.valuation_2 and self.choice_set is not None


class RunConfig(BaseModel):
    """Resolved tolerances, oracle resolution and output format for one command"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    root_tolerance: float = Field(..., gt=0)
    root_max_iter: int = Field(..., gt=0)
    knife_edge_tolerance: float = Field(..., gt=0)
    tie_tolerance: float = Field(..., gt=0)
    mixed_tolerance: float = Field(..., gt=0)
    grid_step: float = Field(..., gt=0)
    eps: float = Field(..., ge=0)
    output_format: str = Field(default="text", pattern="^(text|json)$")

    @classmethod
    def resolve(
        cls,
        spec: Optional[ContestSpec] = None,
        *,
        grid_step: Optional[float] = None,
        eps: Optional[float] = None,
        output_format: Optional[str] = None,
    ) -> "RunConfig":
        """Layer settings defaults, then the config's tolerances, then explicit overrides"""
        tolerances = spec.tolerances if spec is not None and spec.tolerances else Tolerances()
        step = grid_step if grid_step is not None else settings.GRID_STEP
        if eps is None:
            # eps follows an overridden grid step
            eps = 2 * step if grid_step is not None else settings.oracle_eps
        return cls(
            root_tolerance=tolerances.root or settings.ROOT_TOLERANCE,
            root_max_iter=settings.ROOT_MAX_ITER,
            knife_edge_tolerance=tolerances.knife_edge or settings.KNIFE_EDGE_TOLERANCE,
            tie_tolerance=tolerances.tie or settings.TIE_TOLERANCE,
            mixed_tolerance=settings.MIXED_TOLERANCE,
            grid_step=step,
            eps=eps,
            output_format=output_format or settings.OUTPUT_FORMAT,
        )
