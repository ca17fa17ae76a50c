import math
from dataclasses import replace

import numpy as np
import pytest

from src.srl_model.body_model import JointState
from src.srl_model.dynamics import total_moment
from src.srl_model.exceptions import InvalidInputError
from src.srl_planner.planner import (
    PlannerConfig,
    evaluate_candidate,
    evaluate_candidates,
    plan_step,
    reference_decision,
    select_best,
    should_activate,
)
from src.srl_planner.sampler import make_rng, sample_candidate, sample_candidates
from src.srl_planner.trajectory import ReferenceTrajectory, disturbance_profile

rad = math.radians


@pytest.fixture
def case_1(case_1_1):
    scenario = case_1_1
    return (
        list(scenario.limbs),
        scenario.human,
        scenario.reference(),
        [JointState(0.0)] * 4,
        scenario.planner,
    )


@pytest.mark.parametrize("changes", [
    {"alpha_max": 0.0},
    {"deviation_limit": -0.1},
    {"iterations": 0},
    {"control_dt": 0.0},
    {"horizon_steps": 0},
    {"seed": -1},
    {"seed": 2**64},
    {"braking_fraction": 1.0},
])
def test_planner_config_validation(changes):
    with pytest.raises(InvalidInputError):
        PlannerConfig(**changes)


def test_planner_config_defaults():
    config = PlannerConfig()
    assert config.alpha_max == pytest.approx(rad(20.0))
    assert config.deviation_limit == pytest.approx(rad(20.0))
    assert config.iterations == 3000
    assert config.control_dt == 0.01
    assert config.horizon_steps == 1
    assert config.activation_threshold == 0.0


def test_sample_candidate_bounds_and_determinism():
    first = sample_candidate(make_rng(42), 3, rad(20.0))
    second = sample_candidate(make_rng(42), 3, rad(20.0))
    assert first.shape == (3,)
    assert np.array_equal(first, second)
    assert np.all(np.abs(first) <= rad(20.0))
    assert not np.array_equal(first, sample_candidate(make_rng(43), 3, rad(20.0)))


def test_sample_candidate_zero_bound():
    assert np.all(sample_candidate(make_rng(0), 3, 0.0) == 0.0)


def test_sample_candidate_requires_a_limb():
    with pytest.raises(InvalidInputError):
        sample_candidate(make_rng(0), 0, 1.0)


def test_block_draw_matches_sequential_draws():
    block = sample_candidates(make_rng(7), 50, 3, rad(20.0))
    rng = make_rng(7)
    rows = np.array([sample_candidate(rng, 3, rad(20.0)) for _ in range(50)])
    assert np.array_equal(block, rows)


def test_sample_mean_is_centered():
    samples = sample_candidates(make_rng(3), 100_000, 3, rad(20.0))
    assert np.all(np.abs(samples.mean(axis=0)) < rad(0.5))


def test_make_rng_rejects_bad_seed():
    with pytest.raises(InvalidInputError):
        make_rng(-5)


def test_should_activate_on_disturbance_onset(case_1):
    limbs, human, ref, states, config = case_1
    assert should_activate(states, limbs, human, ref, 0.0, config)
    assert not should_activate(states, limbs, human, ref, 0.0,
                               replace(config, activation_threshold=math.inf))


def test_should_activate_when_case_2_starts(case_2_1):
    ref = case_2_1.reference()
    limbs = list(case_2_1.limbs)
    states = [ref.state_at(limb.id, 0.0) for limb in limbs]
    assert should_activate(states, limbs, case_2_1.human, ref, 0.0, case_2_1.planner)


def test_should_not_activate_without_disturbance(case_1):
    limbs, human, _, states, config = case_1
    still = ReferenceTrajectory.from_initial_states(
        {limb.id: (0.0, 0.0) for limb in limbs}, 2.5,
        disturbance_limb_id=2, disturbance=disturbance_profile(0.0, 2.5),
    )
    assert not should_activate(states, limbs, human, still, 0.0, config)


def test_zero_candidate_costs_the_uncompensated_moment(case_1):
    limbs, human, ref, states, config = case_1
    plan = evaluate_candidate((0.0, 0.0, 0.0), states, None, limbs, human, ref, 0.0, config)
    assert plan.feasible

    next_states = list(states)
    next_states[1] = ref.state_at(2, 0.01)
    expected = total_moment(limbs, next_states, human, 0.01).norm
    assert plan.cost == pytest.approx(expected, rel=1e-9)


def test_candidate_leaving_the_band_is_infeasible(case_1):
    limbs, human, ref, states, config = case_1
    near_edge = list(states)
    near_edge[0] = JointState(rad(19.9), rad(50.0))
    plan = evaluate_candidate((0.0, 0.0, 0.0), near_edge, None, limbs, human, ref, 0.0, config)
    assert not plan.feasible
    assert plan.cost is None


def test_evaluate_candidate_checks_width(case_1):
    limbs, human, ref, states, config = case_1
    with pytest.raises(InvalidInputError):
        evaluate_candidate((0.0, 0.0), states, None, limbs, human, ref, 0.0, config)


def test_deviation_limit_never_changes_costs(case_1):
    limbs, human, ref, states, config = case_1
    alphas = sample_candidates(make_rng(11), 200, 3, config.alpha_max)
    wide_costs, wide_ok = evaluate_candidates(alphas, states, limbs, human, ref, 0.0, config)
    tight = replace(config, deviation_limit=rad(1e-5))
    tight_costs, tight_ok = evaluate_candidates(alphas, states, limbs, human, ref, 0.0, tight)
    assert np.array_equal(wide_costs, tight_costs)
    assert wide_ok.sum() >= tight_ok.sum()


def test_single_feasible_candidate_is_chosen(case_1):
    limbs, human, ref, states, config = case_1
    config = replace(config, iterations=1, seed=5)
    expected = sample_candidates(make_rng(5), 1, 3, config.alpha_max)[0]
    decision = plan_step(make_rng(5), states, limbs, human, ref, 0.0, config)
    assert decision.activated and not decision.fallback
    assert decision.n_feasible == 1
    assert decision.chosen.alphas == tuple(expected)
    assert decision.chosen.draw_index == 0


def test_zero_deviation_limit_falls_back(case_1):
    limbs, human, ref, states, config = case_1
    config = replace(config, deviation_limit=0.0, iterations=50)
    decision = plan_step(make_rng(1), states, limbs, human, ref, 0.0, config, force_active=True)
    assert decision.fallback
    assert decision.n_feasible == 0
    assert decision.chosen.alphas == (0.0, 0.0, 0.0)
    assert not decision.chosen.feasible


def test_chosen_plan_is_best_of_evaluated_set(case_1):
    limbs, human, ref, states, config = case_1
    config = replace(config, seed=42, keep_evaluated=True)
    decision = plan_step(make_rng(42), states, limbs, human, ref, 0.0, config)
    assert len(decision.evaluated) == 3000

    feasible_costs = [plan.cost for plan in decision.evaluated if plan.feasible]
    assert len(feasible_costs) == decision.n_feasible
    assert decision.chosen.cost == min(feasible_costs)

    # Independent recheck of the winner and of the all-zero candidate
    recheck = evaluate_candidate(decision.chosen.alphas, states, None, limbs, human, ref, 0.0, config)
    assert recheck.cost == pytest.approx(decision.chosen.cost, rel=1e-12)
    zero = evaluate_candidate((0.0, 0.0, 0.0), states, None, limbs, human, ref, 0.0, config)
    assert decision.chosen.cost <= zero.cost


def test_larger_budget_never_does_worse(case_1):
    limbs, human, ref, states, config = case_1
    small = plan_step(make_rng(9), states, limbs, human, ref, 0.0, replace(config, iterations=100))
    large = plan_step(make_rng(9), states, limbs, human, ref, 0.0, replace(config, iterations=3000))
    assert large.chosen.cost <= small.chosen.cost


def test_plan_step_is_deterministic(case_1):
    limbs, human, ref, states, config = case_1
    first = plan_step(make_rng(42), states, limbs, human, ref, 0.0, config)
    second = plan_step(make_rng(42), states, limbs, human, ref, 0.0, config)
    assert first == second


def test_inactive_planner_keeps_reference_accelerations(case_1):
    limbs, _, ref, _, config = case_1
    decision = reference_decision(limbs, ref, 0.0, config)
    assert not decision.activated
    assert decision.chosen.alphas == (0.0, 0.0, 0.0)


def test_select_best_breaks_ties_by_lowest_index():
    alphas = np.array([[-1.0], [0.0], [1.0]])
    decision = select_best(alphas, np.array([2.0, 1.0, 1.0]), np.array([True, True, True]))
    assert decision.chosen.draw_index == 1
    assert decision.chosen.alphas == (0.0,)

    decision = select_best(alphas, np.array([3.0, 0.5, 3.0]), np.array([True, False, True]))
    assert decision.chosen.draw_index == 0
    assert decision.n_feasible == 2


def test_select_best_without_feasible_candidates():
    alphas = np.array([[0.3, -0.2], [0.1, 0.1]])
    decision = select_best(alphas, np.array([1.0, 2.0]), np.array([False, False]), keep_evaluated=True)
    assert decision.fallback
    assert decision.chosen.alphas == (0.0, 0.0)
    assert decision.chosen.cost is None
    assert [plan.draw_index for plan in decision.evaluated] == [0, 1]
