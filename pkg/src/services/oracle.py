"""
Brute-force verification of analytical equilibrium reports

Choice sets are discretized on a grid that keeps every segment endpoint, the
full payoff tables are evaluated with numpy, and the regret of each cell (the
larger of the two players' best unilateral gains) decides which profiles are
epsilon-Nash. Predictions are matched against the grid by Chebyshev distance.
"""

import math
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import ndimage

from src.core.errors import EffortDomainError
from src.core.logging import get_logger
from src.models.contest import ChoiceSet, ContestSpec, ImpactFunction
from src.models.report import Cell, EffortProfile, EquilibriumReport, Grid, OracleParameters, OracleVerdict
from src.services.contest_core import payoff_matrix

logger = get_logger(__name__)

# Slack on top of eps when comparing regrets; absorbs rounding in the tables
REGRET_SLACK = 1e-12

GridLike = Union[Grid, Sequence[float]]


def discretize(choice_set: ChoiceSet, h: float) -> Grid:
    """Grid over a choice set with spacing at most h inside each segment"""
    if not math.isfinite(h) or h <= 0:
        raise EffortDomainError(f"grid step must be positive, got {h!r}", field="grid_step")
    points: List[float] = []
    for lo, hi in choice_set.segments:
        if lo == hi:
            points.append(lo)
            continue
        pieces = max(1, math.ceil((hi - lo) / h - 1e-9))
        segment = np.linspace(lo, hi, pieces + 1)
        segment[0], segment[-1] = lo, hi
        points.extend(float(p) for p in segment)
    return Grid(points=points, step=h)


def _points(grid: GridLike) -> np.ndarray:
    return np.asarray(grid.points if isinstance(grid, Grid) else list(grid), dtype=float)


def regret_matrix(v1: float, v2: float, f: ImpactFunction, g1: GridLike, g2: GridLike) -> np.ndarray:
    """Largest unilateral gain available to either player, per cell (row = player 1)"""
    x, y = _points(g1), _points(g2)
    payoff_1 = payoff_matrix(v1, f, x, y)
    payoff_2 = payoff_matrix(v2, f, y, x).T
    regret_1 = payoff_1.max(axis=0)[None, :] - payoff_1
    regret_2 = payoff_2.max(axis=1)[:, None] - payoff_2
    return np.maximum(regret_1, regret_2)


def _check_eps(eps: float) -> None:
    if not math.isfinite(eps) or eps < 0:
        raise EffortDomainError(f"eps must be nonnegative, got {eps!r}", field="eps")


def epsilon_nash_enumerate(v1: float, v2: float, f: ImpactFunction, g1: GridLike, g2: GridLike,
                           eps: float) -> List[Cell]:
    """Every grid profile where no player gains more than eps by deviating on the grid"""
    _check_eps(eps)
    x, y = _points(g1), _points(g2)
    regret = regret_matrix(v1, v2, f, x, y)
    rows, cols = np.nonzero(regret <= eps + REGRET_SLACK)
    return [Cell(row=int(i), col=int(j), effort_1=float(x[i]), effort_2=float(y[j])) for i, j in zip(rows, cols)]


def equilibrium_candidates(regret: np.ndarray, eps: float) -> List[Tuple[int, int]]:
    """Epsilon-Nash cells that are local minima of the regret surface

    Around an interior equilibrium the epsilon-Nash set is a basin much wider
    than the grid step; its local minima mark where the equilibria sit.
    """
    _check_eps(eps)
    floor = ndimage.minimum_filter(regret, size=3, mode="nearest")
    mask = (regret <= eps + REGRET_SLACK) & (regret <= floor + REGRET_SLACK)
    rows, cols = np.nonzero(mask)
    return [(int(i), int(j)) for i, j in zip(rows, cols)]


def _nearest(points: np.ndarray, profile: EffortProfile) -> float:
    """Chebyshev distance from a profile to the closest of an (n, 2) point array"""
    if points.size == 0:
        return math.inf
    return float(np.max(np.abs(points - np.asarray(profile, dtype=float)), axis=1).min())


def verify_profiles(predicted: Sequence[EffortProfile], v1: float, v2: float, f: ImpactFunction,
                    g1: GridLike, g2: GridLike, h: float, eps: Optional[float] = None,
                    delta: Optional[float] = None) -> OracleVerdict:
    """Cross-check predicted equilibria against the grid

    A prediction is missing when no epsilon-Nash cell lies within delta of it; a
    regret minimum is extra when no prediction lies within delta of it.
    """
    eps = 2 * h if eps is None else eps
    delta = 2 * h if delta is None else delta
    _check_eps(eps)
    x, y = _points(g1), _points(g2)
    regret = regret_matrix(v1, v2, f, x, y)

    rows, cols = np.nonzero(regret <= eps + REGRET_SLACK)
    nash = np.column_stack([x[rows], y[cols]])
    predicted = [(float(a), float(b)) for a, b in predicted]
    missing = [p for p in predicted if _nearest(nash, p) > delta + REGRET_SLACK]

    prediction_array = np.asarray(predicted, dtype=float).reshape(-1, 2)
    extra = []
    for i, j in equilibrium_candidates(regret, eps):
        found = (float(x[i]), float(y[j]))
        if _nearest(prediction_array, found) > delta + REGRET_SLACK:
            extra.append(found)

    verdict = OracleVerdict(
        confirmed=not missing and not extra,
        predicted_missing=missing,
        extra_found=extra,
        parameters=OracleParameters(h=h, eps=eps, delta=delta),
    )
    logger.info(
        "oracle verdict",
        confirmed=verdict.confirmed,
        grid=(len(x), len(y)),
        epsilon_nash=len(nash),
        missing=len(missing),
        extra=len(extra),
    )
    return verdict


def verify_report(report: EquilibriumReport, spec: ContestSpec, h: float, eps: Optional[float] = None,
                  delta: Optional[float] = None) -> OracleVerdict:
    """Confirm or refute a symmetric equilibrium report on a grid of resolution h"""
    grid = discretize(spec.choice_set, h)
    v = spec.valuation_1
    return verify_profiles(report.equilibria, v, v, spec.impact, grid, grid, h, eps=eps, delta=delta)


def corrupt_report(report: EquilibriumReport, shift: Optional[float] = None) -> EquilibriumReport:
    """Copy of a report with every equilibrium moved by shift (v/5 by default)"""
    shift = report.valuation / 5 if shift is None else shift
    moved = [(e_1 + shift, e_2 + shift) for e_1, e_2 in report.equilibria]
    return report.model_copy(update={"equilibria": moved})


def grid_best_response(v: float, f: ImpactFunction, grid: GridLike, e_j: float) -> float:
    """Grid effort maximizing the payoff against e_j; lowest effort among ties"""
    x = _points(grid)
    payoffs = payoff_matrix(v, f, x, np.array([e_j]))[:, 0]
    return float(x[int(np.argmax(payoffs))])
