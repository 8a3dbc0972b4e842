"""
Logit contest success function, expected payoffs and the payoff identity

All functions are pure; scalar versions are used for exact reporting and the
array version ``payoff_matrix`` feeds the brute-force oracle.
"""

import math
from typing import Optional

import numpy as np
from scipy import optimize

from src.core.errors import ConvergenceError, EffortDomainError
from src.models.contest import ImpactFamily, ImpactFunction


def _check_effort(effort: float, name: str = "effort") -> None:
    if not math.isfinite(effort) or effort < 0:
        raise EffortDomainError(f"effort must be finite and nonnegative, got {effort!r}", field=name)


def _check_valuation(v: float) -> None:
    if not math.isfinite(v) or v <= 0:
        raise EffortDomainError(f"valuation must be finite and positive, got {v!r}", field="valuation")


def eval_impact(f: ImpactFunction, e: float) -> float:
    """Impact a * e**r; exactly 0 at e = 0"""
    _check_effort(e)
    if e == 0:
        return 0.0
    if f.family is ImpactFamily.SCALED_POWER:
        return f.a * e ** f.r
    raise EffortDomainError(f"unsupported impact family {f.family}", field="impact.family")


def impact_derivative(f: ImpactFunction, e: float) -> float:
    """f'(e) = a * r * e**(r - 1); infinite at 0 when r < 1"""
    _check_effort(e)
    if e == 0:
        return f.a if f.r == 1 else math.inf
    return f.a * f.r * e ** (f.r - 1)


def win_probability(f: ImpactFunction, e_i: float, e_j: float) -> float:
    """Probability that effort e_i beats e_j; one half at (0, 0)"""
    f_i = eval_impact(f, e_i)
    f_j = eval_impact(f, e_j)
    if f_i + f_j == 0:
        # (0, 0), or impacts that underflow together
        return 0.5
    return f_i / (f_i + f_j)


def expected_payoff(v: float, f: ImpactFunction, e_i: float, e_j: float) -> float:
    """Expected payoff p(e_i, e_j) * v - e_i"""
    _check_valuation(v)
    return win_probability(f, e_i, e_j) * v - e_i


def payoff_identity_residual(v: float, f: ImpactFunction, x: float, y: float) -> float:
    """[E(x, y) - E(y, y)] - [E(x, x) - E(y, x)], identically zero for symmetric players"""
    left = expected_payoff(v, f, x, y) - expected_payoff(v, f, y, y)
    right = expected_payoff(v, f, x, x) - expected_payoff(v, f, y, x)
    return left - right


def marginal_payoff(v: float, f: ImpactFunction, e_i: float, e_j: float) -> float:
    """Derivative of the expected payoff in own effort e_i

    At e_i = 0 against e_j = 0 the success probability jumps from 1/2 to 1, so the
    right derivative is reported as +inf.
    """
    _check_valuation(v)
    f_j = eval_impact(f, e_j)
    if e_i == 0 and e_j == 0:
        return math.inf
    f_i = eval_impact(f, e_i)
    slope = impact_derivative(f, e_i)
    if math.isinf(slope):
        return math.inf
    return v * slope * f_j / (f_i + f_j) ** 2 - 1


def best_response(v: float, f: ImpactFunction, e_j: float, upper: Optional[float] = None,
                  tol: float = 1e-12, max_iter: int = 200) -> float:
    """Unconstrained best response on [0, upper] to a positive rival effort

    The payoff is strictly concave in own effort, so the maximizer is the root of
    the marginal payoff, or an endpoint when the marginal payoff keeps its sign.
    """
    _check_valuation(v)
    _check_effort(e_j, "e_j")
    if e_j == 0:
        raise EffortDomainError("no best response to zero rival effort: the payoff supremum is not attained", field="e_j")
    upper = v if upper is None else upper
    _check_effort(upper, "upper")

    def marginal(e: float) -> float:
        return marginal_payoff(v, f, e, e_j)

    if upper == 0 or marginal(upper) >= 0:
        return upper
    if marginal(0.0) <= 0:
        return 0.0

    # Halve towards 0 until the marginal payoff turns positive
    hi, lo = upper, upper / 2
    while lo > 0:
        slope = marginal(lo)
        if slope > 0:
            break
        if slope == 0:
            return lo
        hi, lo = lo, lo / 2
    else:
        return 0.0
    try:
        root = optimize.bisect(marginal, lo, hi, xtol=tol, maxiter=max_iter)
    except RuntimeError as exc:
        raise ConvergenceError(f"best response did not converge: {exc}", iterations=max_iter) from exc
    return float(root)


def impact_array(f: ImpactFunction, efforts: np.ndarray) -> np.ndarray:
    """Vectorized impact over an effort array"""
    efforts = np.asarray(efforts, dtype=float)
    if efforts.size and (not np.all(np.isfinite(efforts)) or np.any(efforts < 0)):
        raise EffortDomainError("efforts must be finite and nonnegative", field="efforts")
    return f.a * np.power(efforts, f.r)


def payoff_matrix(v: float, f: ImpactFunction, own: np.ndarray, rival: np.ndarray) -> np.ndarray:
    """Expected payoffs with rows = own effort, columns = rival effort"""
    _check_valuation(v)
    own = np.asarray(own, dtype=float)
    rival = np.asarray(rival, dtype=float)
    own_impact = impact_array(f, own)[:, None]
    rival_impact = impact_array(f, rival)[None, :]
    total = own_impact + rival_impact
    probability = np.divide(
        np.broadcast_to(own_impact, total.shape),
        total,
        out=np.full(total.shape, 0.5),
        where=total > 0,
    )
    return probability * v - own[:, None]
