"""
Pure-strategy equilibria of symmetric two-player contests over constrained choice sets

The unconstrained symmetric equilibrium e_c* is bracketed by the nearest feasible
efforts (e_low, e_high). Equilibrium effort is always one of the two; which one is
decided by the threshold effort of the upper bracket effort, or equivalently by
the dominant strategy of the 2x2 game over the bracket pair.
"""

from typing import List, Optional, Union

import numpy as np
from scipy import optimize

from src.core.errors import AsymmetricSpecError, ContestError, ConvergenceError, EffortDomainError
from src.core.logging import get_logger
from src.models.contest import ChoiceSet, ContestSpec, ImpactFunction, RunConfig
from src.models.report import (
    Bracket,
    BracketSide,
    ContestCase,
    DominantStrategy,
    EffortProfile,
    EquilibriumReport,
    OneSidedChoiceSet,
    SweepRow,
)
from src.services.contest_core import expected_payoff, impact_derivative, eval_impact, win_probability

logger = get_logger(__name__)

# Closed form and root-finder must agree to this (scaled by max(1, v))
FOC_AGREEMENT = 1e-10


def foc_residual(v: float, f: ImpactFunction, e: float) -> float:
    """Symmetric first-order condition v * f'(e) / (4 f(e)) - 1 at e > 0"""
    return v * impact_derivative(f, e) / (4 * eval_impact(f, e)) - 1


def unconstrained_equilibrium(v: float, f: ImpactFunction, tol: float = 1e-12, max_iter: int = 200) -> float:
    """Unique symmetric equilibrium effort e_c* of the contest over [0, inf)

    For the scaled-power family the root is r * v / 4; the scale cancels. The root
    is also located by bisection and both must agree.
    """
    closed_form = f.r * v / 4
    # Residual is positive below the root and negative above it for every r in (0, 1]
    lo, hi = closed_form / 2, 2 * closed_form
    try:
        root = optimize.bisect(lambda e: foc_residual(v, f, e), lo, hi, xtol=tol, maxiter=max_iter)
    except (RuntimeError, ValueError) as exc:
        raise ConvergenceError(f"symmetric first-order condition did not converge: {exc}", iterations=max_iter) from exc
    if abs(root - closed_form) > FOC_AGREEMENT * max(1.0, v):
        raise ConvergenceError(
            f"root {root!r} disagrees with closed form {closed_form!r}", iterations=max_iter
        )
    return closed_form


def bracket(choice_set: ChoiceSet, e_star: float) -> Union[Bracket, OneSidedChoiceSet]:
    """Largest feasible effort at or below e_star and smallest at or above it"""
    if choice_set.contains(e_star):
        return Bracket(e_low=e_star, e_high=e_star, interior=True)
    below = [hi for _, hi in choice_set.segments if hi < e_star]
    above = [lo for lo, _ in choice_set.segments if lo > e_star]
    if not above:
        return OneSidedChoiceSet(side=BracketSide.LOW, nearest=max(below))
    if not below:
        return OneSidedChoiceSet(side=BracketSide.HIGH, nearest=min(above))
    return Bracket(e_low=max(below), e_high=min(above))


def threshold_effort(v: float, f: ImpactFunction, e_high: float, e_star: Optional[float] = None,
                     tol: float = 1e-12, max_iter: int = 200) -> Optional[float]:
    """Effort in [0, e_c*] at which a player is indifferent between it and e_high

    Solves v/2 - e = p(e_high, e) * v - e_high. Returns None when e_high > v/2,
    where no such effort exists.
    """
    if e_star is None:
        e_star = unconstrained_equilibrium(v, f, tol=tol, max_iter=max_iter)
    if e_high < e_star:
        raise EffortDomainError(f"upper bracket effort {e_high!r} is below e_c* = {e_star!r}", field="e_high")
    if e_high > v / 2:
        return None
    if e_high == v / 2:
        return 0.0
    if e_high == e_star:
        return e_star

    def residual(e: float) -> float:
        return v / 2 - e - (win_probability(f, e_high, e) * v - e_high)

    if residual(e_star) <= 0:
        # e_high within rounding of e_c*
        return e_star
    try:
        root = optimize.bisect(residual, 0.0, e_star, xtol=tol, maxiter=max_iter)
    except (RuntimeError, ValueError) as exc:
        raise ConvergenceError(f"threshold bisection did not converge: {exc}", iterations=max_iter) from exc
    return float(root)


def dominant_strategy_2x2(v: float, f: ImpactFunction, e_low: float, e_high: float,
                          tie_tol: float = 1e-12) -> DominantStrategy:
    """Dominant effort in the 2x2 game restricted to {e_low, e_high}

    By the payoff identity, E(e_low, y) - E(e_high, y) has the same sign for
    y = e_low and y = e_high, so a (possibly weak) dominant effort always exists.
    """
    if not e_low < e_high:
        raise EffortDomainError("the 2x2 game needs e_low < e_high", field="e_low")
    vs_low = expected_payoff(v, f, e_low, e_low) - expected_payoff(v, f, e_high, e_low)
    vs_high = expected_payoff(v, f, e_low, e_high) - expected_payoff(v, f, e_high, e_high)
    zero_low, zero_high = abs(vs_low) <= tie_tol, abs(vs_high) <= tie_tol
    if zero_low and zero_high:
        return DominantStrategy(effort=e_low, weak=True, indifferent=True,
                                difference_vs_low=vs_low, difference_vs_high=vs_high)
    if (vs_low > tie_tol and vs_high < -tie_tol) or (vs_low < -tie_tol and vs_high > tie_tol):
        raise ContestError(f"payoff differences {vs_low!r} and {vs_high!r} have opposite signs")
    low_dominates = vs_low > tie_tol or vs_high > tie_tol
    return DominantStrategy(
        effort=e_low if low_dominates else e_high,
        weak=zero_low or zero_high,
        difference_vs_low=vs_low,
        difference_vs_high=vs_high,
    )


def case_for_threshold(e_low: float, threshold: Optional[float], tau: float) -> ContestCase:
    """Regime for a bracket pair given the threshold of its upper effort"""
    if threshold is None or threshold < e_low - tau:
        return ContestCase.CASE_A
    if threshold > e_low + tau:
        return ContestCase.CASE_B
    return ContestCase.CASE_C


def _fmt(x: float) -> str:
    return format(x, ".12g")


def _report(v: float, e_star: float, case: ContestCase, equilibria: List[EffortProfile],
            diagnostics: List[str], **fields) -> EquilibriumReport:
    dissipation = [(e_1 + e_2) / v for e_1, e_2 in equilibria]
    return EquilibriumReport(
        valuation=v,
        e_star=e_star,
        case=case,
        equilibria=equilibria,
        rent_dissipation=max(dissipation),
        dissipation_by_equilibrium=dissipation,
        diagnostics=diagnostics,
        **fields,
    )


def classify(spec: ContestSpec, run: Optional[RunConfig] = None) -> EquilibriumReport:
    """Complete set of pure-strategy equilibria of a symmetric constrained contest"""
    if not spec.is_symmetric:
        raise AsymmetricSpecError("contest is not symmetric")
    run = run or RunConfig.resolve(spec)
    v, f, choice_set = spec.valuation_1, spec.impact, spec.choice_set

    e_star = unconstrained_equilibrium(v, f, tol=run.root_tolerance, max_iter=run.root_max_iter)
    located = bracket(choice_set, e_star)
    diagnostics: List[str] = []

    if isinstance(located, OneSidedChoiceSet):
        e = located.nearest
        if located.side is BracketSide.LOW:
            case = ContestCase.ONE_SIDED_LOW
            diagnostics.append(
                f"choice set lies entirely below e_c* = {_fmt(e_star)}; no upper bracket effort exists, "
                f"equilibrium at the largest feasible effort (confirm with the oracle)"
            )
        else:
            case = ContestCase.ONE_SIDED_HIGH
            diagnostics.append(
                f"choice set lies entirely above e_c* = {_fmt(e_star)}; no lower bracket effort exists, "
                f"equilibrium at the smallest feasible effort (confirm with the oracle)"
            )
        if 2 * e > v:
            diagnostics.append("equilibrium effort exceeds the prize value")
        logger.info("classified one-sided contest", case=case.value, e_star=e_star, effort=e)
        return _report(v, e_star, case, [(e, e)], diagnostics, one_sided=located)

    if located.interior:
        logger.info("classified interior contest", e_star=e_star)
        return _report(v, e_star, ContestCase.INTERIOR, [(e_star, e_star)], diagnostics,
                       bracket=located, threshold=e_star)

    e_low, e_high = located.e_low, located.e_high
    threshold = threshold_effort(v, f, e_high, e_star=e_star, tol=run.root_tolerance, max_iter=run.root_max_iter)
    case = case_for_threshold(e_low, threshold, run.knife_edge_tolerance)
    dominant = dominant_strategy_2x2(v, f, e_low, e_high, tie_tol=run.tie_tolerance)

    if case is ContestCase.CASE_A:
        equilibria = [(e_low, e_low)]
    elif case is ContestCase.CASE_B:
        equilibria = [(e_high, e_high)]
    else:
        equilibria = [(e_low, e_low), (e_low, e_high), (e_high, e_low), (e_high, e_high)]

    if threshold is None:
        diagnostics.append(f"no threshold: upper bracket effort {_fmt(e_high)} exceeds v/2 = {_fmt(v / 2)}")
    elif case is ContestCase.CASE_C:
        diagnostics.append(
            f"knife edge: threshold {_fmt(threshold)} equals the lower bracket effort within "
            f"{run.knife_edge_tolerance:g}; every profile over the bracket pair is an equilibrium"
        )
    else:
        diagnostics.append(
            f"threshold {_fmt(threshold)} vs lower bracket effort {_fmt(e_low)}: small changes in the "
            f"choice set near the threshold switch the equilibrium between the bracket efforts"
        )
    expected_effort = {ContestCase.CASE_A: e_low, ContestCase.CASE_B: e_high}.get(case)
    if expected_effort is not None and not dominant.weak and dominant.effort != expected_effort:
        diagnostics.append("dominant 2x2 strategy disagrees with the threshold comparison")
        logger.warning("threshold and dominance disagree", case=case.value, dominant=dominant.effort)

    logger.info("classified bracketed contest", case=case.value, e_star=e_star,
                e_low=e_low, e_high=e_high, threshold=threshold)
    return _report(v, e_star, case, equilibria, diagnostics, bracket=located, threshold=threshold,
                   dominant_strategy_2x2=dominant, margin=dominant.difference_vs_low)


def threshold_sweep(v: float, f: ImpactFunction, e_low: float, lo: float, hi: float, steps: int,
                    tol: float = 1e-12, max_iter: int = 200, tau: float = 1e-9) -> List[SweepRow]:
    """Threshold and regime for evenly spaced upper bracket efforts in [lo, hi]"""
    if steps < 2:
        raise EffortDomainError("a sweep needs at least two steps", field="steps")
    if lo > hi:
        raise EffortDomainError("sweep range is empty", field="e_high")
    e_star = unconstrained_equilibrium(v, f, tol=tol, max_iter=max_iter)
    if lo < e_star:
        raise EffortDomainError(f"sweep must start at or above e_c* = {e_star!r}", field="e_high")
    if e_low > e_star:
        raise EffortDomainError(f"lower bracket effort must not exceed e_c* = {e_star!r}", field="e_low")

    rows = []
    for e_high in np.linspace(lo, hi, steps):
        e_high = float(e_high)
        e_hat = threshold_effort(v, f, e_high, e_star=e_star, tol=tol, max_iter=max_iter)
        rows.append(SweepRow(e_high=e_high, e_hat=e_hat, case=case_for_threshold(e_low, e_hat, tau)))
    logger.debug("threshold sweep finished", steps=steps, lo=lo, hi=hi)
    return rows
