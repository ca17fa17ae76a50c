import math
from dataclasses import replace

import numpy as np
import pytest

from src.srl_model.body_model import JointState
from src.srl_model.dynamics import total_moment
from src.srl_model.exceptions import GridSizeError, InvalidInputError
from src.srl_planner import grid_search
from src.srl_planner.grid_search import grid_search_step
from src.srl_planner.planner import evaluate_candidate, evaluate_candidates, plan_step
from src.srl_planner.sampler import make_rng
from src.srl_planner.trajectory import integrate_constant_alpha
from src.srl_simulator.scenario_loader import parse_scenario


@pytest.fixture
def single_limb(scenario_path):
    scenario = parse_scenario(scenario_path("oracle_single_limb"))
    return (
        list(scenario.limbs),
        scenario.human,
        scenario.reference(),
        [JointState(0.0), JointState(0.0)],
        scenario.planner,
    )


@pytest.fixture
def case_1(case_1_1):
    return list(case_1_1.limbs), case_1_1.human, case_1_1.reference(), [JointState(0.0)] * 4, case_1_1.planner


def test_grid_needs_two_points(single_limb):
    limbs, human, ref, states, config = single_limb
    with pytest.raises(InvalidInputError):
        grid_search_step(states, limbs, human, ref, 0.0, config, 1)


def test_grid_size_guard(case_1):
    limbs, human, ref, states, config = case_1
    # 216^3 > 10^7
    with pytest.raises(GridSizeError):
        grid_search_step(states, limbs, human, ref, 0.0, config, 216)


def test_grid_minimum_matches_explicit_enumeration(single_limb):
    limbs, human, ref, states, config = single_limb
    decision = grid_search_step(states, limbs, human, ref, 0.0, config, 101)

    grid = np.linspace(-config.alpha_max, config.alpha_max, 101).reshape(-1, 1)
    costs, feasible = evaluate_candidates(grid, states, limbs, human, ref, 0.0, config)
    best = int(np.argmin(np.where(feasible, costs, np.inf)))
    assert decision.chosen.draw_index == best
    assert decision.chosen.alphas == (grid[best, 0],)
    assert decision.chosen.cost == costs[best]
    assert decision.n_feasible == int(feasible.sum())


def test_two_point_grid_uses_the_bounds(single_limb):
    limbs, human, ref, states, config = single_limb
    config = replace(config, keep_evaluated=True)
    decision = grid_search_step(states, limbs, human, ref, 0.0, config, 2)
    assert [plan.alphas for plan in decision.evaluated] == [(-config.alpha_max,), (config.alpha_max,)]


def test_chunking_does_not_change_the_result(case_1):
    limbs, human, ref, states, config = case_1
    whole = grid_search_step(states, limbs, human, ref, 0.0, config, 9)
    chunked = grid_search_step(states, limbs, human, ref, 0.0, config, 9, chunk_size=10)
    assert chunked.chosen.cost == pytest.approx(whole.chosen.cost, rel=1e-12)
    assert chunked.n_feasible == whole.n_feasible == 9 ** 3


def test_grid_is_row_major(case_1):
    limbs, human, ref, states, config = case_1
    config = replace(config, keep_evaluated=True)
    decision = grid_search_step(states, limbs, human, ref, 0.0, config, 2)
    a = config.alpha_max
    assert [plan.alphas for plan in decision.evaluated][:3] == [(-a, -a, -a), (-a, -a, a), (-a, a, -a)]


def test_zero_deviation_limit_falls_back(single_limb):
    limbs, human, ref, states, config = single_limb
    decision = grid_search_step(states, limbs, human, ref, 0.0, replace(config, deviation_limit=0.0), 4)
    assert decision.fallback
    assert decision.chosen.alphas == (0.0,)


def test_random_search_is_close_to_the_grid(single_limb):
    limbs, human, ref, states, config = single_limb
    grid = grid_search_step(states, limbs, human, ref, 0.0, config, 10_001)
    for seed in range(3):
        random = plan_step(make_rng(seed), states, limbs, human, ref, 0.0, config, force_active=True)
        assert random.chosen.cost - grid.chosen.cost <= 0.02 * grid.chosen.cost
        assert math.isfinite(random.chosen.cost)


def direct_cost(alpha, states, limbs, human, ref, config):
    """One-step moment norm rebuilt limb by limb from the scalar model"""
    dt = config.control_dt
    next_states = [
        ref.state_at(limb.id, dt) if limb.id == ref.disturbance_limb_id
        else integrate_constant_alpha(state, alpha, dt)
        for limb, state in zip(limbs, states)
    ]
    return total_moment(limbs, next_states, human, dt).norm


def test_candidate_cost_matches_a_direct_rebuild_on_a_dense_grid(single_limb):
    limbs, human, ref, states, config = single_limb
    grid = np.linspace(-config.alpha_max, config.alpha_max, 1001)
    expected = np.array([direct_cost(alpha, states, limbs, human, ref, config) for alpha in grid])

    for alpha, cost in zip(grid[::50], expected[::50]):
        plan = evaluate_candidate((alpha,), states, None, limbs, human, ref, 0.0, config)
        assert plan.feasible
        assert plan.cost == pytest.approx(cost, rel=1e-12)

    decision = grid_search_step(states, limbs, human, ref, 0.0, config, 1001)
    assert decision.chosen.cost == pytest.approx(expected.min(), rel=1e-12)
    assert expected[decision.chosen.draw_index] <= expected.min() * (1 + 1e-12)


@pytest.mark.parametrize("chunk_size", [1, 2, 3])
def test_even_cost_ties_go_to_the_lowest_grid_index(single_limb, monkeypatch, chunk_size):
    limbs, human, ref, states, config = single_limb

    def even_cost(alphas, *args, **kwargs):
        # Lowest at both ends of the range, same value on each side
        return -alphas[:, 0] ** 2, np.ones(len(alphas), dtype=bool)

    monkeypatch.setattr(grid_search, "evaluate_candidates", even_cost)
    config = replace(config, alpha_max=math.radians(20.0), keep_evaluated=True)
    decision = grid_search_step(states, limbs, human, ref, 0.0, config, 3, chunk_size=chunk_size)

    costs = [plan.cost for plan in decision.evaluated]
    assert costs[0] == costs[2] < costs[1]
    assert decision.chosen.draw_index == 0
    assert decision.chosen.alphas == (-math.radians(20.0),)
