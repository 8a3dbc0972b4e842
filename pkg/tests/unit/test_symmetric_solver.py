"""
Unit tests for the symmetric constrained-contest solver
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.errors import AsymmetricSpecError, EffortDomainError
from src.models.contest import ChoiceSet, ContestSpec, ImpactFunction
from src.models.report import Bracket, BracketSide, ContestCase, OneSidedChoiceSet
from src.services.contest_core import expected_payoff, win_probability
from src.services.symmetric_solver import (
    bracket,
    case_for_threshold,
    classify,
    dominant_strategy_2x2,
    foc_residual,
    threshold_effort,
    threshold_sweep,
    unconstrained_equilibrium,
)


class TestUnconstrainedEquilibrium:
    @pytest.mark.parametrize(
        "v, r, a, expected",
        [(1, 1, 1, 0.25), (1, 0.5, 1, 0.125), (3, 1, 7, 0.75)],
    )
    def test_closed_form(self, v, r, a, expected):
        assert unconstrained_equilibrium(v, ImpactFunction(r=r, a=a)) == pytest.approx(expected, abs=1e-12)

    def test_first_order_condition_holds(self, square_root):
        e_star = unconstrained_equilibrium(2.0, square_root)
        assert abs(foc_residual(2.0, square_root, e_star)) <= 1e-12

    @pytest.mark.parametrize("v, r", [(1, 1e-9), (1, 1e-12), (1000, 1e-12), (1e-3, 1e-9)])
    def test_tiny_exponent(self, v, r):
        assert unconstrained_equilibrium(v, ImpactFunction(r=r)) == r * v / 4

    def test_grid_argmax_against_itself(self, linear):
        grid = np.round(np.arange(0, 10_001) * 1e-4, 10)
        payoffs = [expected_payoff(1, linear, float(e), 0.25) for e in grid]
        assert grid[int(np.argmax(payoffs))] == pytest.approx(0.25)


class TestBracket:
    def test_gapped_set(self):
        located = bracket(ChoiceSet(segments=[0, [0.6, 1]]), 0.25)
        assert located == Bracket(e_low=0, e_high=0.6)

    def test_interior(self):
        located = bracket(ChoiceSet(segments=[[0, 1]]), 0.25)
        assert located.interior
        assert located.e_low == located.e_high == 0.25

    def test_two_points(self):
        assert bracket(ChoiceSet(segments=[0.05, 0.4]), 0.25) == Bracket(e_low=0.05, e_high=0.4)

    def test_segment_endpoints(self):
        located = bracket(ChoiceSet(segments=[[0, 0.2], [0.3, 0.35], 0.9]), 0.25)
        assert (located.e_low, located.e_high) == (0.2, 0.3)

    def test_one_sided(self):
        assert bracket(ChoiceSet(segments=[[0, 0.1], 0.2]), 0.25) == OneSidedChoiceSet(side=BracketSide.LOW, nearest=0.2)
        assert bracket(ChoiceSet(segments=[0.3, [0.5, 1]]), 0.25) == OneSidedChoiceSet(side=BracketSide.HIGH, nearest=0.3)


class TestThreshold:
    def test_boundary_values(self, linear):
        assert threshold_effort(1, linear, 0.5) == 0.0
        assert threshold_effort(1, linear, 0.25) == pytest.approx(0.25, abs=1e-8)

    def test_quadratic_root(self, linear):
        # v/2 - e = 0.4 / (0.4 + e) - 0.4  <=>  e^2 - 0.5 e + 0.04 = 0
        roots = np.roots([1.0, -0.5, 0.04])
        expected = min(float(root) for root in roots if 0 <= root <= 0.25)
        assert threshold_effort(1, linear, 0.4) == pytest.approx(expected, abs=1e-10)
        assert threshold_effort(1, linear, 0.4) == pytest.approx(0.1, abs=1e-10)

    def test_linear_closed_form(self, linear):
        for e_high in (0.3, 0.35, 0.45):
            assert threshold_effort(2, linear, 2 * e_high) == pytest.approx(1 - 2 * e_high, abs=1e-10)

    def test_no_threshold_above_half_value(self, linear):
        assert threshold_effort(1, linear, 0.55) is None

    def test_below_unconstrained_rejected(self, linear):
        with pytest.raises(EffortDomainError):
            threshold_effort(1, linear, 0.2)

    def test_indifference_holds_at_threshold(self, square_root):
        e_high = 0.3
        e_hat = threshold_effort(1, square_root, e_high)
        # indifferent between e_hat and e_high against either rival effort
        for rival in (e_hat, e_high):
            gap = expected_payoff(1, square_root, e_hat, rival) - expected_payoff(1, square_root, e_high, rival)
            assert abs(gap) <= 1e-9

    def test_monotone_decreasing(self, square_root):
        e_star = unconstrained_equilibrium(1, square_root)
        values = [threshold_effort(1, square_root, float(e)) for e in np.linspace(e_star + 1e-3, 0.5, 100)]
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_no_threshold_means_low_effort_wins(self, square_root):
        e_star = unconstrained_equilibrium(1, square_root)
        e_high = 0.6
        for e in np.linspace(0, e_star, 25):
            e = float(e)
            assert 1 / 2 - e > win_probability(square_root, e_high, e) - e_high


class TestDominantStrategy:
    def test_gapped_set_lower_strict(self, linear):
        dominant = dominant_strategy_2x2(1, linear, 0, 0.6)
        assert dominant.effort == 0
        assert not dominant.weak

    def test_upper_effort_strict(self, linear):
        dominant = dominant_strategy_2x2(1, linear, 0.05, 0.4)
        assert dominant.effort == 0.4
        assert not dominant.weak

    def test_knife_edge_weak(self, linear):
        dominant = dominant_strategy_2x2(1, linear, 0.1, 0.4)
        assert dominant.weak
        assert dominant.indifferent

    def test_same_sign_against_both(self, square_root):
        dominant = dominant_strategy_2x2(3, square_root, 0.2, 0.5)
        assert dominant.difference_vs_low == pytest.approx(dominant.difference_vs_high, abs=1e-12)

    def test_requires_ordered_pair(self, linear):
        with pytest.raises(EffortDomainError):
            dominant_strategy_2x2(1, linear, 0.4, 0.4)


class TestClassify:
    def test_gapped_set_effortless(self, golden):
        report = classify(golden("gap_effortless"))
        assert report.case is ContestCase.CASE_A
        assert report.equilibria == [(0.0, 0.0)]
        assert report.rent_dissipation == 0.0
        assert report.threshold is None

    def test_gapped_set_dissipation(self, golden):
        report = classify(golden("gap_dissipation"))
        assert report.case is ContestCase.CASE_B
        assert report.equilibria == [(0.45, 0.45)]
        assert report.rent_dissipation == pytest.approx(0.9)

    def test_interior(self, golden):
        report = classify(golden("unconstrained"))
        assert report.case is ContestCase.INTERIOR
        assert report.equilibria == [(0.25, 0.25)]

    def test_knife_edge(self, golden):
        report = classify(golden("knife_edge"))
        assert report.case is ContestCase.CASE_C
        assert sorted(report.equilibria) == [(0.1, 0.1), (0.1, 0.4), (0.4, 0.1), (0.4, 0.4)]
        assert report.rent_dissipation == pytest.approx(0.8)
        assert any("knife edge" in note for note in report.diagnostics)

    @pytest.mark.parametrize("name, case, effort", [("case_a", ContestCase.CASE_A, 0.15), ("case_b", ContestCase.CASE_B, 0.4)])
    def test_hand_built_cases(self, golden, name, case, effort):
        report = classify(golden(name))
        assert report.case is case
        assert report.equilibria == [(effort, effort)]

    def test_one_sided_low(self, make_spec):
        report = classify(make_spec([[0, 0.1], 0.2]))
        assert report.case is ContestCase.ONE_SIDED_LOW
        assert report.equilibria == [(0.2, 0.2)]
        assert report.diagnostics

    def test_one_sided_high(self, make_spec):
        report = classify(make_spec([0.3, [0.5, 1]]))
        assert report.case is ContestCase.ONE_SIDED_HIGH
        assert report.equilibria == [(0.3, 0.3)]

    def test_tiny_exponent(self):
        spec = ContestSpec(valuations=[1], impact={"r": 1e-9}, choice_set=[0, [0.6, 1]])
        report = classify(spec)
        assert report.case is ContestCase.CASE_A
        assert report.equilibria == [(0.0, 0.0)]
        assert report.e_star == pytest.approx(2.5e-10)

    def test_margin_sign_matches_case(self, golden):
        assert classify(golden("case_a")).margin > 0
        assert classify(golden("case_b")).margin < 0

    def test_asymmetric_rejected(self, golden):
        with pytest.raises(AsymmetricSpecError) as excinfo:
            classify(golden("three_efforts_pure"))
        assert "matrix" in str(excinfo.value)

    def test_unequal_valuations_on_shared_set_rejected(self):
        spec = ContestSpec(valuations=[1, 2], choice_set=[[0, 1]])
        with pytest.raises(AsymmetricSpecError):
            classify(spec)

    @given(
        v=st.floats(min_value=0.5, max_value=5.0),
        r=st.floats(min_value=0.1, max_value=1.0),
        low=st.floats(min_value=0.0, max_value=0.99),
        high=st.floats(min_value=1.01, max_value=3.0),
    )
    def test_equilibria_from_bracket_pair(self, v, r, low, high):
        e_star = r * v / 4
        spec = ContestSpec(valuations=[v], impact={"r": r}, choice_set=[low * e_star, high * e_star])
        report = classify(spec)
        pair = {spec.choice_set.minimum, spec.choice_set.maximum}
        for e_1, e_2 in report.equilibria:
            assert e_1 in pair and e_2 in pair
        assert 0 <= report.rent_dissipation <= 2


class TestBelowUnconstrained:
    def test_higher_effort_pays_against_both(self):
        # For 0 <= y < x <= e_c*: x beats y against x and against y, by the same amount
        rng = np.random.default_rng(5)
        for _ in range(500):
            v, r = rng.uniform(0.5, 5.0), rng.uniform(0.1, 1.0)
            f = ImpactFunction(r=r)
            x = unconstrained_equilibrium(v, f) * rng.uniform(0.05, 1.0)
            y = x * rng.choice([0.0, rng.uniform(0.0, 0.9)])
            against_x = expected_payoff(v, f, x, x) - expected_payoff(v, f, y, x)
            against_y = expected_payoff(v, f, x, y) - expected_payoff(v, f, y, y)
            assert against_x > 0
            assert against_y > 0
            assert against_x == pytest.approx(against_y, abs=1e-12)


class TestSweep:
    def test_endpoints(self, linear):
        rows = threshold_sweep(1, linear, 0.0, 0.25, 0.5, 6)
        assert len(rows) == 6
        assert rows[0].e_hat == pytest.approx(0.25, abs=1e-8)
        assert rows[-1].e_hat == 0.0
        hats = [row.e_hat for row in rows]
        assert all(b < a for a, b in zip(hats, hats[1:]))

    def test_beyond_half_value(self, linear):
        rows = threshold_sweep(1, linear, 0.0, 0.55, 0.6, 5)
        assert all(row.e_hat is None for row in rows)
        assert all(row.case is ContestCase.CASE_A for row in rows)

    def test_two_steps(self, linear):
        rows = threshold_sweep(1, linear, 0.1, 0.25, 0.5, 2)
        assert [row.e_high for row in rows] == [0.25, 0.5]

    def test_validation(self, linear):
        with pytest.raises(EffortDomainError):
            threshold_sweep(1, linear, 0.0, 0.25, 0.5, 1)
        with pytest.raises(EffortDomainError):
            threshold_sweep(1, linear, 0.0, 0.1, 0.5, 5)


def test_case_for_threshold():
    assert case_for_threshold(0.1, None, 1e-9) is ContestCase.CASE_A
    assert case_for_threshold(0.1, 0.05, 1e-9) is ContestCase.CASE_A
    assert case_for_threshold(0.1, 0.2, 1e-9) is ContestCase.CASE_B
    assert case_for_threshold(0.1, 0.1 + 1e-12, 1e-9) is ContestCase.CASE_C
