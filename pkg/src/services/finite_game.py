"""
Finite contests with possibly different valuations

Payoff bimatrices are indexed with rows = player 1's effort and columns =
player 2's effort; every cell holds (player 1 payoff, player 2 payoff).
"""

import itertools
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.core.config import settings
from src.core.errors import ConvergenceError, EffortDomainError
from src.core.logging import get_logger
from src.models.contest import ChoiceSet, ImpactFunction
from src.models.report import (
    AsymmetricEquilibrium,
    BestResponsePath,
    Bimatrix,
    BracketWitness,
    Cell,
    DominanceRelation,
    MixedEquilibrium,
    NashResult,
)
from src.services.contest_core import best_response, expected_payoff
from src.services.oracle import discretize

logger = get_logger(__name__)

# A feasible range for the rival's weight on the first effort of its support
Interval = Tuple[float, float]


def _check_efforts(efforts: Sequence[float], name: str) -> List[float]:
    efforts = [float(e) for e in efforts]
    if not efforts:
        raise EffortDomainError("effort list must not be empty", field=name)
    if any(not np.isfinite(e) or e < 0 for e in efforts):
        raise EffortDomainError("efforts must be finite and nonnegative", field=name)
    return efforts


def build_bimatrix(v1: float, v2: float, f: ImpactFunction, efforts_1: Sequence[float],
                   efforts_2: Sequence[float]) -> Bimatrix:
    """Exact payoff tables for two effort lists and per-player valuations"""
    efforts_1 = _check_efforts(efforts_1, "efforts_1")
    efforts_2 = _check_efforts(efforts_2, "efforts_2")
    payoff_1 = [[expected_payoff(v1, f, x, y) for y in efforts_2] for x in efforts_1]
    payoff_2 = [[expected_payoff(v2, f, y, x) for y in efforts_2] for x in efforts_1]
    return Bimatrix(efforts_1=efforts_1, efforts_2=efforts_2, payoff_1=payoff_1, payoff_2=payoff_2)


def bimatrix_from_choice_set(v: float, f: ImpactFunction, choice_set: ChoiceSet,
                             h: Optional[float] = None) -> Bimatrix:
    """Symmetric finite game over a choice set, discretized when it has intervals"""
    if choice_set.is_finite:
        points = choice_set.points()
    elif h is None:
        raise EffortDomainError("choice set contains intervals; give a grid step to discretize it", field="grid_step")
    else:
        points = discretize(choice_set, h).points
    return build_bimatrix(v, v, f, points, points)


def _tables(b: Bimatrix) -> Tuple[np.ndarray, np.ndarray]:
    return np.asarray(b.payoff_1, dtype=float), np.asarray(b.payoff_2, dtype=float)


def _is_pure_nash(payoff_1: np.ndarray, payoff_2: np.ndarray, row: int, col: int, tie_tol: float) -> bool:
    return (payoff_1[row, col] >= payoff_1[:, col].max() - tie_tol
            and payoff_2[row, col] >= payoff_2[row, :].max() - tie_tol)


def pure_nash(b: Bimatrix, tie_tol: float = 1e-12) -> List[Cell]:
    """Cells where each effort is a best response to the other"""
    payoff_1, payoff_2 = _tables(b)
    rows, cols = b.shape
    return [
        b.cell(i, j)
        for i in range(rows)
        for j in range(cols)
        if _is_pure_nash(payoff_1, payoff_2, i, j, tie_tol)
    ]


def _dominance_for(table: np.ndarray, efforts: List[float], player: int, tie_tol: float) -> List[DominanceRelation]:
    # table rows are the player's own efforts
    relations = []
    for i, k in itertools.permutations(range(len(efforts)), 2):
        difference = table[i] - table[k]
        if np.all(np.abs(difference) <= tie_tol):
            continue
        if np.all(difference >= -tie_tol):
            relations.append(DominanceRelation(
                player=player,
                dominating=efforts[i],
                dominated=efforts[k],
                strict=bool(np.all(difference > tie_tol)),
            ))
    return relations


def dominance(b: Bimatrix, tie_tol: float = 1e-12) -> List[DominanceRelation]:
    """Every weak or strict dominance relation between two efforts of the same player

    Pairs of efforts with identical payoffs against every rival effort are skipped.
    """
    payoff_1, payoff_2 = _tables(b)
    return (_dominance_for(payoff_1, b.efforts_1, 1, tie_tol)
            + _dominance_for(payoff_2.T, b.efforts_2, 2, tie_tol))


def mixed_payoff_gaps(b: Bimatrix, x: Sequence[float], y: Sequence[float]) -> Tuple[float, float]:
    """Best pure-deviation gain for each player against the mixed profile (x, y)"""
    payoff_1, payoff_2 = _tables(b)
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    values_1 = payoff_1 @ y
    values_2 = x @ payoff_2
    return float(values_1.max() - x @ values_1), float(values_2.max() - values_2 @ y)


def is_mixed_equilibrium(b: Bimatrix, x: Sequence[float], y: Sequence[float], tol: float = 1e-10) -> bool:
    """No player gains more than tol from any pure deviation"""
    gap_1, gap_2 = mixed_payoff_gaps(b, x, y)
    return gap_1 <= tol and gap_2 <= tol


def _rival_weight(table: np.ndarray, own: Tuple[int, ...], rival: Tuple[int, ...], tol: float) -> Optional[Interval]:
    """Feasible weights t on rival[0] making every effort in ``own`` a best response

    ``table`` holds the player's payoffs with rows = own efforts. A one-effort
    rival support has the single weight 1.
    """
    if len(rival) == 1:
        column = table[:, rival[0]]
        best = column.max()
        if all(column[i] >= best - tol for i in own):
            return 1.0, 1.0
        return None

    first, second = rival
    lo, hi = 0.0, 1.0
    anchor = own[0]
    if len(own) == 2:
        # Indifference between the two own efforts: d2 + t * (d1 - d2) = 0
        d1 = table[own[0], first] - table[own[1], first]
        d2 = table[own[0], second] - table[own[1], second]
        if abs(d1 - d2) > tol:
            lo = hi = d2 / (d2 - d1)
        elif abs(d2) > tol:
            return None
    # Best response against every own effort: a * t + b >= -tol
    for m in range(table.shape[0]):
        slope = (table[anchor, first] - table[m, first]) - (table[anchor, second] - table[m, second])
        offset = table[anchor, second] - table[m, second]
        if abs(slope) <= tol:
            if offset < -tol:
                return None
        elif slope > 0:
            lo = max(lo, (-tol - offset) / slope)
        else:
            hi = min(hi, (-tol - offset) / slope)
    # Both rival efforts must carry positive weight
    lo, hi = max(lo, 0.0), min(hi, 1.0)
    if lo > hi or hi <= tol or lo >= 1 - tol:
        return None
    return lo, hi


def _pick(interval: Interval, tol: float) -> Tuple[float, bool]:
    lo, hi = interval
    if hi - lo > tol:
        return (lo + hi) / 2, True
    return (lo + hi) / 2, False


def _weights(size: int, support: Tuple[int, ...], t: float) -> np.ndarray:
    weights = np.zeros(size)
    if len(support) == 1:
        weights[support[0]] = 1.0
    else:
        weights[support[0]], weights[support[1]] = t, 1 - t
    return weights


def mixed_2support(b: Bimatrix, tol: float = 1e-10) -> Tuple[List[MixedEquilibrium], bool]:
    """Equilibria in which each player mixes over at most two efforts

    Returns the equilibria found and whether any support pair admits a continuum
    of mixtures, in which case one representative of the continuum is listed.
    """
    payoff_1, payoff_2 = _tables(b)
    rows, cols = b.shape
    supports_1 = [s for k in (1, 2) for s in itertools.combinations(range(rows), k)]
    supports_2 = [s for k in (1, 2) for s in itertools.combinations(range(cols), k)]

    found: List[MixedEquilibrium] = []
    degenerate = False
    for support_1, support_2 in itertools.product(supports_1, supports_2):
        # Player 2's mixture keeps player 1 indifferent over support_1, and vice versa
        weight_2 = _rival_weight(payoff_1, support_1, support_2, tol)
        if weight_2 is None:
            continue
        weight_1 = _rival_weight(payoff_2.T, support_2, support_1, tol)
        if weight_1 is None:
            continue
        t_2, continuum_2 = _pick(weight_2, tol)
        t_1, continuum_1 = _pick(weight_1, tol)
        x = _weights(rows, support_1, t_1)
        y = _weights(cols, support_2, t_2)
        if not is_mixed_equilibrium(b, x, y, tol):
            continue
        degenerate = degenerate or continuum_1 or continuum_2
        found.append(MixedEquilibrium(
            support_1=[b.efforts_1[i] for i in support_1],
            probabilities_1=[float(x[i]) for i in support_1],
            support_2=[b.efforts_2[j] for j in support_2],
            probabilities_2=[float(y[j]) for j in support_2],
            degenerate=continuum_1 or continuum_2,
        ))
    logger.debug("support enumeration finished", pairs=len(supports_1) * len(supports_2), found=len(found))
    return found, degenerate


def _as_indices(start: Union[Cell, Tuple[int, int]]) -> Tuple[int, int]:
    if isinstance(start, Cell):
        return start.row, start.col
    return int(start[0]), int(start[1])


def best_response_dynamics(b: Bimatrix, start: Union[Cell, Tuple[int, int]] = (0, 0), max_iter: int = 1000,
                           tie_tol: float = 1e-12) -> BestResponsePath:
    """Alternating best responses, player 1 first, from a starting cell

    Ties go to the lowest index. Stops at a pure equilibrium or on the first
    revisited (cell, mover) state, reporting the cycle.
    """
    payoff_1, payoff_2 = _tables(b)
    rows, cols = b.shape
    row, col = _as_indices(start)
    if not (0 <= row < rows and 0 <= col < cols):
        raise EffortDomainError(f"start cell ({row}, {col}) is outside the {rows}x{cols} game", field="start")

    path = [b.cell(row, col)]
    mover = 1
    seen: Dict[Tuple[int, int, int], int] = {(row, col, mover): 0}
    for _ in range(max_iter):
        if _is_pure_nash(payoff_1, payoff_2, row, col, tie_tol):
            return BestResponsePath(path=path, fixed_point=b.cell(row, col))
        if mover == 1:
            column = payoff_1[:, col]
            row = int(np.flatnonzero(column >= column.max() - tie_tol)[0])
        else:
            line = payoff_2[row, :]
            col = int(np.flatnonzero(line >= line.max() - tie_tol)[0])
        mover = 2 if mover == 1 else 1
        if (path[-1].row, path[-1].col) != (row, col):
            path.append(b.cell(row, col))
        state = (row, col, mover)
        if state in seen:
            cycle = path[seen[state]:-1] or [path[-1]]
            return BestResponsePath(path=path, cycle=cycle)
        seen[state] = len(path) - 1
    raise ConvergenceError(f"best-response dynamics found neither a fixed point nor a cycle in {max_iter} steps",
                           iterations=max_iter)


def unconstrained_asymmetric(v1: float, v2: float, f: ImpactFunction, damping: Optional[float] = None,
                             tol: Optional[float] = None, max_iter: Optional[int] = None,
                             iterative: bool = False) -> AsymmetricEquilibrium:
    """Equilibrium efforts of the contest over [0, inf) with per-player valuations

    Linear impact has a closed form; otherwise (or when ``iterative`` is set)
    damped alternating best responses are iterated from (r v1 / 4, r v2 / 4).
    """
    damping = settings.ASYMMETRIC_DAMPING if damping is None else damping
    tol = settings.ASYMMETRIC_TOLERANCE if tol is None else tol
    max_iter = settings.ASYMMETRIC_MAX_ITER if max_iter is None else max_iter
    if v1 <= 0 or v2 <= 0:
        raise EffortDomainError("valuations must be strictly positive", field="valuations")

    if f.r == 1 and not iterative:
        total = (v1 + v2) ** 2
        return AsymmetricEquilibrium(e_1=v1 ** 2 * v2 / total, e_2=v2 ** 2 * v1 / total, method="closed_form")

    e_1, e_2 = f.r * v1 / 4, f.r * v2 / 4
    for iteration in range(1, max_iter + 1):
        next_1 = (1 - damping) * e_1 + damping * best_response(v1, f, e_2, upper=v1)
        next_2 = (1 - damping) * e_2 + damping * best_response(v2, f, next_1, upper=v2)
        moved = max(abs(next_1 - e_1), abs(next_2 - e_2))
        e_1, e_2 = next_1, next_2
        if moved < tol:
            logger.debug("asymmetric iteration converged", iterations=iteration, e_1=e_1, e_2=e_2)
            return AsymmetricEquilibrium(e_1=e_1, e_2=e_2, method="damped_best_response", iterations=iteration)
    raise ConvergenceError(f"asymmetric best-response iteration did not converge in {max_iter} steps",
                           iterations=max_iter)


def _bracket_around(efforts: List[float], target: float) -> Tuple[Optional[float], Optional[float]]:
    below = [e for e in efforts if e <= target]
    above = [e for e in efforts if e >= target]
    return (max(below) if below else None), (min(above) if above else None)


def bracket_witness(b: Bimatrix, unconstrained: AsymmetricEquilibrium,
                   equilibria: Optional[List[Cell]] = None) -> List[List[BracketWitness]]:
    """For each pure equilibrium, whether each player's effort lies in the bracket
    around that player's unconstrained effort"""
    equilibria = pure_nash(b) if equilibria is None else equilibria
    witnesses = []
    for cell in equilibria:
        pair = []
        for player, efforts, target, effort in (
            (1, b.efforts_1, unconstrained.e_1, cell.effort_1),
            (2, b.efforts_2, unconstrained.e_2, cell.effort_2),
        ):
            e_low, e_high = _bracket_around(efforts, target)
            pair.append(BracketWitness(
                player=player,
                unconstrained_effort=target,
                e_low=e_low,
                e_high=e_high,
                equilibrium_effort=effort,
                within_bracket=effort in (e_low, e_high),
            ))
        witnesses.append(pair)
    return witnesses


def analyze(b: Bimatrix, tie_tol: float = 1e-12, mixed_tol: float = 1e-10, max_iter: int = 1000,
            mixed_limit: Optional[int] = None) -> NashResult:
    """Pure equilibria, dominance, small-support mixed equilibria and, without a
    pure equilibrium, the best-response cycle from the first cell"""
    mixed_limit = settings.MIXED_SUPPORT_LIMIT if mixed_limit is None else mixed_limit
    equilibria = pure_nash(b, tie_tol)
    searched = max(b.shape) <= mixed_limit
    if searched:
        mixed, degenerate = mixed_2support(b, mixed_tol)
    else:
        logger.warning("skipping support enumeration", shape=b.shape, limit=mixed_limit)
        mixed, degenerate = [], False
    cycle = None
    if not equilibria:
        cycle = best_response_dynamics(b, (0, 0), max_iter=max_iter, tie_tol=tie_tol).cycle
    logger.info("finite game analyzed", shape=b.shape, pure=len(equilibria), mixed=len(mixed))
    return NashResult(
        pure_equilibria=equilibria,
        dominance=dominance(b, tie_tol),
        mixed_2support=mixed,
        mixed_degenerate=degenerate,
        mixed_searched=searched,
        exists_pure=bool(equilibria),
        br_cycle=cycle,
    )
