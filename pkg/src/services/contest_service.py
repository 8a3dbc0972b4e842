"""
Contest service: the operations behind the command line and the HTTP API
"""

import time
from typing import List, Optional, Tuple

import numpy as np

from src.core.config import settings
from src.core.errors import AsymmetricSpecError, EffortDomainError
from src.core.logging import get_logger
from src.models.contest import ContestSpec, ImpactFunction, RunConfig
from src.models.report import (
    EffortProfile,
    EquilibriumReport,
    IdentityCheckReport,
    MatrixReport,
    OracleVerdict,
    SweepRow,
)
from src.services import finite_game, oracle, symmetric_solver
from src.services.contest_core import payoff_identity_residual

logger = get_logger(__name__)


class ContestService:
    """Runs solver, finite-game and oracle analyses for a contest configuration"""

    def _efforts(self, spec: ContestSpec, grid_step: Optional[float]) -> Tuple[List[float], List[float]]:
        """Per-player finite effort lists, discretizing a shared interval set when a grid step is given"""
        if spec.efforts_1 is not None:
            return list(spec.efforts_1), list(spec.efforts_2)
        if spec.choice_set.is_finite:
            points = spec.choice_set.points()
        elif grid_step is None:
            raise EffortDomainError(
                "choice set contains intervals; pass a grid step to analyze a discretized game",
                field="choice_set",
            )
        else:
            points = oracle.discretize(spec.choice_set, grid_step).points
        return points, list(points)

    def solve(self, spec: ContestSpec, run: Optional[RunConfig] = None) -> EquilibriumReport:
        """Pure-strategy equilibria of a symmetric contest"""
        started = time.perf_counter()
        report = symmetric_solver.classify(spec, run or RunConfig.resolve(spec))
        logger.info("solve finished", case=report.case.value, duration=time.perf_counter() - started)
        return report

    def matrix(self, spec: ContestSpec, run: Optional[RunConfig] = None,
               grid_step: Optional[float] = None) -> MatrixReport:
        """Payoff bimatrix and equilibrium analysis of a finite contest"""
        run = run or RunConfig.resolve(spec)
        efforts_1, efforts_2 = self._efforts(spec, grid_step)
        v1, v2 = spec.valuation_1, spec.valuation_2
        bimatrix = finite_game.build_bimatrix(v1, v2, spec.impact, efforts_1, efforts_2)
        nash = finite_game.analyze(bimatrix, tie_tol=run.tie_tolerance, mixed_tol=run.mixed_tolerance)
        unconstrained = finite_game.unconstrained_asymmetric(v1, v2, spec.impact)
        witnesses = finite_game.bracket_witness(bimatrix, unconstrained, nash.pure_equilibria)
        return MatrixReport(bimatrix=bimatrix, nash=nash, unconstrained=unconstrained, bracket_witnesses=witnesses)

    def sweep(self, spec: ContestSpec, lo: float, hi: float, steps: int, e_low: Optional[float] = None,
              run: Optional[RunConfig] = None) -> List[SweepRow]:
        """Threshold effort over a range of upper bracket efforts"""
        run = run or RunConfig.resolve(spec)
        v = spec.valuation_1
        if spec.valuation_1 != spec.valuation_2:
            raise AsymmetricSpecError("threshold sweeps need a common valuation")
        if e_low is None:
            e_low = self._default_e_low(spec, run)
        return symmetric_solver.threshold_sweep(
            v, spec.impact, e_low, lo, hi, steps,
            tol=run.root_tolerance, max_iter=run.root_max_iter, tau=run.knife_edge_tolerance,
        )

    def _default_e_low(self, spec: ContestSpec, run: RunConfig) -> float:
        # Lower bracket effort of the configured choice set, else zero
        if spec.choice_set is None:
            return 0.0
        e_star = symmetric_solver.unconstrained_equilibrium(
            spec.valuation_1, spec.impact, tol=run.root_tolerance, max_iter=run.root_max_iter
        )
        located = symmetric_solver.bracket(spec.choice_set, e_star)
        return getattr(located, "e_low", 0.0)

    def identity_check(self, v: float, r: float, samples: int, seed: int, a: float = 1.0,
                       force_equal: bool = False) -> IdentityCheckReport:
        """Largest payoff-identity residual over seeded random effort pairs in [0, v]"""
        if samples < 1:
            raise EffortDomainError("sample count must be at least 1", field="samples")
        f = ImpactFunction(r=r, a=a)
        rng = np.random.default_rng(seed)
        xs = rng.uniform(0.0, v, samples)
        ys = xs if force_equal else rng.uniform(0.0, v, samples)
        residual = max(abs(payoff_identity_residual(v, f, float(x), float(y))) for x, y in zip(xs, ys))
        tolerance = settings.IDENTITY_TOLERANCE * max(1.0, v)
        logger.info("identity check finished", samples=samples, seed=seed, max_residual=residual)
        return IdentityCheckReport(
            valuation=v,
            r=r,
            samples=samples,
            seed=seed,
            max_residual=residual,
            tolerance=tolerance,
            passed=residual <= tolerance,
        )

    def oracle(self, spec: ContestSpec, run: Optional[RunConfig] = None, corrupt: bool = False,
               grid_step: Optional[float] = None, eps: Optional[float] = None) -> OracleVerdict:
        """Confirm or refute the analytical equilibria by grid enumeration

        Symmetric contests check the classifier's report; otherwise the pure
        equilibria of the finite game are checked. Finite effort lists are exact
        games, so their slack defaults to zero rather than to the grid slack.
        """
        run = run or RunConfig.resolve(spec, grid_step=grid_step, eps=eps)
        h, delta = run.grid_step, 2 * run.grid_step
        if spec.is_symmetric:
            report = self.solve(spec, run)
            if corrupt:
                report = oracle.corrupt_report(report)
            return oracle.verify_report(report, spec, h, eps=run.eps, delta=delta)

        efforts_1, efforts_2 = self._efforts(spec, grid_step)
        efforts_1, efforts_2 = sorted(set(efforts_1)), sorted(set(efforts_2))
        bimatrix = finite_game.build_bimatrix(spec.valuation_1, spec.valuation_2, spec.impact, efforts_1, efforts_2)
        predicted: List[EffortProfile] = [
            (cell.effort_1, cell.effort_2) for cell in finite_game.pure_nash(bimatrix, run.tie_tolerance)
        ]
        if corrupt:
            shift = spec.valuation_1 / 5
            predicted = [(e_1 + shift, e_2 + shift) for e_1, e_2 in predicted]
        exact = spec.efforts_1 is not None or spec.choice_set.is_finite
        slack = 0.0 if exact and eps is None else run.eps
        return oracle.verify_profiles(
            predicted, spec.valuation_1, spec.valuation_2, spec.impact,
            efforts_1, efforts_2, h, eps=slack, delta=delta,
        )


# Global service instance
contest_service = ContestService()


def get_contest_service() -> ContestService:
    """Get contest service instance"""
    return contest_service
