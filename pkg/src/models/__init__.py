"""Domain models package"""

from src.models.contest import ChoiceSet, ContestSpec, ImpactFamily, ImpactFunction, RunConfig, Tolerances
from src.models.report import (
    AsymmetricEquilibrium,
    Bimatrix,
    Bracket,
    BracketSide,
    BracketWitness,
    BestResponsePath,
    Cell,
    ContestCase,
    DominanceRelation,
    DominantStrategy,
    EquilibriumReport,
    Grid,
    IdentityCheckReport,
    MatrixReport,
    MixedEquilibrium,
    NashResult,
    OneSidedChoiceSet,
    OracleParameters,
    OracleVerdict,
    SweepRow,
)

__all__ = [
    "AsymmetricEquilibrium",
    "Bimatrix",
    "Bracket",
    "BracketSide",
    "BracketWitness",
    "BestResponsePath",
    "Cell",
    "ChoiceSet",
    "ContestCase",
    "ContestSpec",
    "DominanceRelation",
    "DominantStrategy",
    "EquilibriumReport",
    "Grid",
    "IdentityCheckReport",
    "ImpactFamily",
    "ImpactFunction",
    "MatrixReport",
    "MixedEquilibrium",
    "NashResult",
    "OneSidedChoiceSet",
    "OracleParameters",
    "OracleVerdict",
    "RunConfig",
    "SweepRow",
    "Tolerances",
]
