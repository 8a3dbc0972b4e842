"""
Result documents produced by the solver, finite-game and oracle services

Every report is a frozen pydantic model; the JSON emitted by the command line
and the HTTP API is ``model_dump_json`` of these models, and text tables are
rendered from the same dumps.
"""

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

EffortProfile = Tuple[float, float]


class _Report(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class ContestCase(str, Enum):
    """Pure-equilibrium regime of a symmetric constrained contest"""
    INTERIOR = "Interior"
    CASE_A = "CaseA"  # lower bracket effort
    CASE_B = "CaseB"  # upper bracket effort
    CASE_C = "CaseC"  # knife edge, every profile over the bracket pair
    ONE_SIDED_LOW = "OneSidedLow"
    ONE_SIDED_HIGH = "OneSidedHigh"


class BracketSide(str, Enum):
    LOW = "low"
    HIGH = "high"


class Bracket(_Report):
    """Feasible efforts immediately below and above the unconstrained equilibrium"""

    e_low: float
    e_high: float
    interior: bool = False

    @model_validator(mode="after")
    def _check(self) -> "Bracket":
        if self.e_low > self.e_high:
            raise ValueError("e_low must not exceed e_high")
        if self.interior and self.e_low != self.e_high:
            raise ValueError("an interior bracket has e_low == e_high")
        return self


class OneSidedChoiceSet(_Report):
    """Marker for a choice set lying entirely on one side of the unconstrained equilibrium"""

    side: BracketSide
    nearest: float = Field(..., description="Feasible effort closest to the unconstrained equilibrium")


class DominantStrategy(_Report):
    """Dominant effort of the 2x2 game restricted to the bracket pair"""

    effort: float
    weak: bool
    indifferent: bool = Field(default=False, description="Both efforts give equal payoffs against either rival effort")
    difference_vs_low: float
    difference_vs_high: float


class EquilibriumReport(_Report):
    """Pure-strategy equilibria of a symmetric contest over a constrained choice set"""

    valuation: float
    e_star: float
    bracket: Optional[Bracket] = None
    one_sided: Optional[OneSidedChoiceSet] = None
    threshold: Optional[float] = None
    case: ContestCase
    equilibria: List[EffortProfile]
    dominant_strategy_2x2: Optional[DominantStrategy] = None
    margin: Optional[float] = Field(
        default=None,
        description="Payoff of the lower bracket effort minus the upper one, against the lower effort",
    )
    rent_dissipation: float
    dissipation_by_equilibrium: List[float]
    diagnostics: List[str] = Field(default_factory=list)


class SweepRow(_Report):
    """One row of a threshold sweep at fixed lower bracket effort"""

    e_high: float
    e_hat: Optional[float]
    case: ContestCase


class Cell(_Report):
    """Cell of a bimatrix: row is player 1's effort, column is player 2's"""

    row: int
    col: int
    effort_1: float
    effort_2: float


class Bimatrix(_Report):
    """Payoff tables indexed (row = player 1's effort, column = player 2's effort)"""

    efforts_1: List[float]
    efforts_2: List[float]
    payoff_1: List[List[float]]
    payoff_2: List[List[float]]

    @model_validator(mode="after")
    def _check_shape(self) -> "Bimatrix":
        rows, cols = len(self.efforts_1), len(self.efforts_2)
        for name in ("payoff_1", "payoff_2"):
            table = getattr(self, name)
            if len(table) != rows or any(len(line) != cols for line in table):
                raise ValueError(f"{name} must be {rows}x{cols}")
        return self

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.efforts_1), len(self.efforts_2)

    def cell(self, row: int, col: int) -> Cell:
        return Cell(row=row, col=col, effort_1=self.efforts_1[row], effort_2=self.efforts_2[col])


class DominanceRelation(_Report):
    player: int
    dominating: float
    dominated: float
    strict: bool


class MixedEquilibrium(_Report):
    """Equilibrium with at most two efforts in each player's support"""

    support_1: List[float]
    probabilities_1: List[float]
    support_2: List[float]
    probabilities_2: List[float]
    degenerate: bool = Field(default=False, description="One representative of a continuum of equilibria")


class BestResponsePath(_Report):
    path: List[Cell]
    fixed_point: Optional[Cell] = None
    cycle: Optional[List[Cell]] = None


class NashResult(_Report):
    pure_equilibria: List[Cell]
    dominance: List[DominanceRelation]
    mixed_2support: List[MixedEquilibrium]
    mixed_degenerate: bool = False
    mixed_searched: bool = Field(default=True, description="False when the game was too large for support enumeration")
    exists_pure: bool
    br_cycle: Optional[List[Cell]] = None


class AsymmetricEquilibrium(_Report):
    """Unconstrained equilibrium efforts of a contest with per-player valuations"""

    e_1: float
    e_2: float
    method: str
    iterations: int = 0


class BracketWitness(_Report):
    """Where a player's equilibrium effort sits relative to the bracket around the player's unconstrained effort"""

    player: int
    unconstrained_effort: float
    e_low: Optional[float]
    e_high: Optional[float]
    equilibrium_effort: float
    within_bracket: bool


class MatrixReport(_Report):
    bimatrix: Bimatrix
    nash: NashResult
    unconstrained: AsymmetricEquilibrium
    bracket_witnesses: List[List[BracketWitness]] = Field(
        default_factory=list, description="One pair of witnesses per pure equilibrium"
    )


class Grid(_Report):
    """Discretized choice set; every segment endpoint is kept exactly"""

    points: List[float]
    step: float = Field(..., gt=0)

    @model_validator(mode="after")
    def _check_order(self) -> "Grid":
        if not self.points:
            raise ValueError("a grid needs at least one point")
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise ValueError("grid points must be strictly increasing")
        return self


class OracleParameters(_Report):
    h: float
    eps: float
    delta: float


class OracleVerdict(_Report):
    confirmed: bool
    predicted_missing: List[EffortProfile]
    extra_found: List[EffortProfile]
    parameters: OracleParameters

    @model_validator(mode="after")
    def _check(self) -> "OracleVerdict":
        if self.confirmed != (not self.predicted_missing and not self.extra_found):
            raise ValueError("confirmed must hold exactly when both lists are empty")
        return self


class IdentityCheckReport(_Report):
    valuation: float
    r: float
    samples: int
    seed: int
    max_residual: float
    tolerance: float
    passed: bool
