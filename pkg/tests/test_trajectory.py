import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from src.srl_model.body_model import JointState
from src.srl_model.exceptions import InvalidInputError
from src.srl_planner.trajectory import (
    ConstantAccelProfile,
    ReferenceTrajectory,
    build_deviation_report,
    deviation,
    disturbance_profile,
    eval_reference,
    integrate_constant_alpha,
)

rad = math.radians
deg = math.degrees


def case_2_reference():
    profile = disturbance_profile(rad(90.0), 2.5)
    initial = {
        1: (rad(40.0), rad(10.0)),
        2: (0.0, 0.0),
        3: (rad(-70.0), rad(-10.0)),
        4: (rad(-20.0), rad(20.0)),
    }
    return ReferenceTrajectory.from_initial_states(initial, 2.5, disturbance_limb_id=2, disturbance=profile)


def test_integrate_examples():
    assert integrate_constant_alpha(JointState(0.0), 0.0, 1.0) == JointState(0.0, 0.0, 0.0)

    swept = integrate_constant_alpha(JointState(0.0), rad(28.8), 2.5)
    assert deg(swept.angle) == pytest.approx(90.0, abs=1e-9)
    assert deg(swept.velocity) == pytest.approx(72.0, abs=1e-9)
    assert swept.acceleration == rad(28.8)

    coast = integrate_constant_alpha(JointState(rad(40.0), rad(10.0)), 0.0, 2.0)
    assert deg(coast.angle) == pytest.approx(60.0, abs=1e-9)
    assert deg(coast.velocity) == pytest.approx(10.0, abs=1e-9)


def test_integrate_rejects_non_positive_dt():
    with pytest.raises(InvalidInputError):
        integrate_constant_alpha(JointState(0.0), 1.0, 0.0)


@given(
    st.floats(min_value=-3.0, max_value=3.0),
    st.floats(min_value=-5.0, max_value=5.0),
    st.floats(min_value=-1.0, max_value=1.0),
    st.floats(min_value=1e-3, max_value=1.0),
)
def test_two_half_steps_equal_one_step(theta, omega, alpha, dt):
    state = JointState(theta, omega)
    full = integrate_constant_alpha(state, alpha, dt)
    halves = integrate_constant_alpha(integrate_constant_alpha(state, alpha, dt / 2), alpha, dt / 2)
    assert halves.angle == pytest.approx(full.angle, abs=1e-12)
    assert halves.velocity == pytest.approx(full.velocity, abs=1e-12)


def test_disturbance_profile_values():
    profile = disturbance_profile(rad(90.0), 2.5)
    assert deg(profile.alpha) == pytest.approx(28.8)
    assert disturbance_profile(0.0, 2.5).alpha == 0.0
    assert deg(profile.state_at(2.5).angle) == pytest.approx(90.0, abs=1e-9)
    assert deg(profile.state_at(1.25).angle) == pytest.approx(22.5, abs=1e-9)
    with pytest.raises(InvalidInputError):
        disturbance_profile(rad(90.0), 0.0)


def test_disturbance_profile_is_monotone():
    profile = disturbance_profile(rad(90.0), 2.5)
    angles = [profile.state_at(t).angle for t in np.linspace(0.0, 2.5, 1001)]
    assert all(b >= a for a, b in zip(angles, angles[1:]))


def test_profile_acceleration_belongs_to_interval_ending_at_t():
    profile = disturbance_profile(rad(90.0), 2.5)
    assert profile.state_at(0.0).acceleration == 0.0
    assert profile.acceleration_at(0.0) == 0.0
    assert profile.acceleration_at(0.01) == profile.alpha
    assert profile.acceleration_at(2.5) == profile.alpha
    assert profile.acceleration_at(2.6) == 0.0


def test_profile_coasts_after_end():
    profile = ConstantAccelProfile(theta0=0.0, omega0=0.0, alpha=2.0, t_start=0.0, t_end=1.0)
    after = profile.state_at(2.0)
    assert after.velocity == pytest.approx(2.0)
    assert after.angle == pytest.approx(1.0 + 2.0)
    assert after.acceleration == 0.0


def test_profile_validation():
    with pytest.raises(InvalidInputError):
        ConstantAccelProfile(0.0, 0.0, 1.0, t_start=1.0, t_end=1.0)


def test_eval_reference_examples():
    ref = case_2_reference()
    limb_3 = eval_reference(ref, 3, 1.0)
    assert deg(limb_3.angle) == pytest.approx(-80.0, abs=1e-9)
    assert deg(limb_3.velocity) == pytest.approx(-10.0, abs=1e-9)
    assert deg(eval_reference(ref, 2, 1.25).angle) == pytest.approx(22.5, abs=1e-9)

    start = eval_reference(ref, 1, 0.0)
    assert deg(start.angle) == pytest.approx(40.0, abs=1e-12)
    assert deg(start.velocity) == pytest.approx(10.0, abs=1e-12)


def test_eval_reference_errors():
    ref = case_2_reference()
    with pytest.raises(InvalidInputError):
        eval_reference(ref, 9, 0.5)
    with pytest.raises(InvalidInputError):
        eval_reference(ref, 1, -0.1)


def test_case_1_reference_holds_still():
    profile = disturbance_profile(rad(90.0), 2.5)
    initial = {limb_id: (0.0, 0.0) for limb_id in (1, 2, 3, 4)}
    ref = ReferenceTrajectory.from_initial_states(initial, 2.5, disturbance_limb_id=2, disturbance=profile)
    assert ref.compensating_ids == [1, 3, 4]
    for t in (0.0, 0.7, 2.5):
        assert eval_reference(ref, 1, t) == JointState(0.0, 0.0, 0.0)


def test_reference_needs_id_and_profile_together():
    with pytest.raises(InvalidInputError):
        ReferenceTrajectory.from_initial_states({1: (0.0, 0.0)}, 2.5, disturbance_limb_id=1)


def test_deviation_examples():
    assert deg(deviation(JointState(rad(10.0)), JointState(0.0))) == pytest.approx(10.0)
    assert deg(deviation(JointState(rad(-90.0)), JointState(rad(-70.0)))) == pytest.approx(20.0)
    assert deg(deviation(JointState(rad(25.0)), JointState(0.0))) == pytest.approx(25.0)


def test_deviation_report_flags_strict_excess():
    ref = case_2_reference()
    times = [0.0, 1.0]
    reference = np.array([[ref.state_at(limb_id, t).angle for limb_id in (1, 3)] for t in times])
    angles = reference.copy()
    angles[1, 0] += rad(5.0)
    angles[1, 1] -= rad(25.0)

    report = build_deviation_report([1, 3], times, angles, ref, rad(20.0))
    assert deg(report.max_deviation[1]) == pytest.approx(5.0)
    assert deg(report.max_deviation[3]) == pytest.approx(25.0)
    assert report.violated
    assert deg(report.worst) == pytest.approx(25.0)

    within = build_deviation_report([1, 3], times, reference, ref, 0.0)
    assert not within.violated


def test_deviation_report_ignores_round_off_drift():
    ref = case_2_reference()
    times = [0.0, 1.0, 2.0]
    reference = np.array([[ref.state_at(limb_id, t).angle for limb_id in (1, 3)] for t in times])
    drifted = reference + 3e-14
    report = build_deviation_report([1, 3], times, drifted, ref, 0.0)
    assert not report.violated
    assert report.worst == pytest.approx(3e-14, rel=0.5)

    beyond = reference.copy()
    beyond[2, 1] += 1e-6
    assert build_deviation_report([1, 3], times, beyond, ref, 0.0).violated
