"""
Trajectories - constant-acceleration profiles, reference trajectories and
deviation measurement

A JointState's acceleration is the one applied over the interval that ends
at that instant, so a state evaluated at t=0 carries zero acceleration.
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..srl_model.body_model import JointState
from ..srl_model.exceptions import InvalidInputError

# Round-off allowed on top of the limit when rechecking logged angles
DEVIATION_SLACK_RAD = 1e-9


@dataclass(frozen=True)
class ConstantAccelProfile:
    """
    Joint motion with constant acceleration on [t_start, t_end] and coasting
    elsewhere. theta0 and omega0 are the state at t=0.
    """
    theta0: float
    omega0: float
    alpha: float
    t_start: float
    t_end: float

    def __post_init__(self):
        if not self.t_end > self.t_start:
            raise InvalidInputError(
                f"t_end ({self.t_end}) must be greater than t_start ({self.t_start})"
            )
        for name in ("theta0", "omega0", "alpha", "t_start"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidInputError(f"profile {name} must be finite")

    def acceleration_at(self, t: float) -> float:
        """Acceleration applied over the interval ending at t"""
        return self.alpha if self.t_start < t <= self.t_end else 0.0

    def state_at(self, t: float) -> JointState:
        """Closed-form joint state at time t"""
        if t <= self.t_start:
            return JointState(self.theta0 + self.omega0 * t, self.omega0, 0.0)

        theta_start = self.theta0 + self.omega0 * self.t_start
        if t <= self.t_end:
            tau = t - self.t_start
            return JointState(
                theta_start + self.omega0 * tau + 0.5 * self.alpha * tau * tau,
                self.omega0 + self.alpha * tau,
                self.alpha,
            )

        span = self.t_end - self.t_start
        theta_end = theta_start + self.omega0 * span + 0.5 * self.alpha * span * span
        omega_end = self.omega0 + self.alpha * span
        return JointState(theta_end + omega_end * (t - self.t_end), omega_end, 0.0)


def integrate_constant_alpha(state: JointState, alpha: float, dt: float) -> JointState:
    """
    Advance a joint by dt under constant acceleration (exact closed form)

    Args:
        state: Joint state at the start of the interval
        alpha: Acceleration held over the interval (rad/s^2)
        dt: Interval length (s)

    Returns:
        Joint state at the end of the interval, carrying alpha as its acceleration

    Raises:
        InvalidInputError: If dt is not positive
    """
    if not dt > 0:
        raise InvalidInputError(f"dt must be > 0, got {dt}")
    return JointState(
        state.angle + state.velocity * dt + 0.5 * alpha * dt * dt,
        state.velocity + alpha * dt,
        alpha,
    )


def disturbance_profile(total_angle: float, duration: float) -> ConstantAccelProfile:
    """
    Constant-acceleration sweep from rest covering total_angle in duration

    Raises:
        InvalidInputError: If duration is not positive
    """
    if not duration > 0:
        raise InvalidInputError(f"disturbance duration must be > 0, got {duration}")
    return ConstantAccelProfile(
        theta0=0.0,
        omega0=0.0,
        alpha=2.0 * total_angle / (duration * duration),
        t_start=0.0,
        t_end=duration,
    )


@dataclass(frozen=True)
class ReferenceTrajectory:
    """
    Original trajectory of every limb.

    Compensating limbs coast from their initial state; the disturbance limb
    follows its own profile.
    """
    profiles: Mapping[int, ConstantAccelProfile]
    disturbance_limb_id: Optional[int] = None

    @classmethod
    def from_initial_states(
        cls,
        initial_states: Mapping[int, Tuple[float, float]],
        duration: float,
        disturbance_limb_id: Optional[int] = None,
        disturbance: Optional[ConstantAccelProfile] = None,
    ) -> "ReferenceTrajectory":
        """
        Build coast references from initial (angle, velocity) pairs in radians

        Args:
            initial_states: limb id -> (angle rad, velocity rad/s)
            duration: Length of the study window (s)
            disturbance_limb_id: Limb that follows the disturbance profile
            disturbance: Profile of the disturbance limb
        """
        if (disturbance_limb_id is None) != (disturbance is None):
            raise InvalidInputError("disturbance limb id and profile must be given together")

        profiles: Dict[int, ConstantAccelProfile] = {}
        for limb_id, (theta0, omega0) in initial_states.items():
            if limb_id == disturbance_limb_id:
                continue
            profiles[limb_id] = ConstantAccelProfile(theta0, omega0, 0.0, 0.0, duration)
        if disturbance_limb_id is not None:
            profiles[disturbance_limb_id] = disturbance
        return cls(profiles=profiles, disturbance_limb_id=disturbance_limb_id)

    @property
    def limb_ids(self) -> List[int]:
        return sorted(self.profiles)

    @property
    def compensating_ids(self) -> List[int]:
        return [limb_id for limb_id in self.limb_ids if limb_id != self.disturbance_limb_id]

    def profile(self, limb_id: int) -> ConstantAccelProfile:
        try:
            return self.profiles[limb_id]
        except KeyError:
            raise InvalidInputError(f"unknown limb id {limb_id}") from None

    def state_at(self, limb_id: int, t: float) -> JointState:
        return self.profile(limb_id).state_at(t)

    def acceleration(self, limb_id: int, t: float) -> float:
        return self.profile(limb_id).acceleration_at(t)


def eval_reference(ref: ReferenceTrajectory, limb_id: int, t: float) -> JointState:
    """
    Reference state of one limb at time t

    Raises:
        InvalidInputError: If limb_id is unknown or t is negative
    """
    if t < 0:
        raise InvalidInputError(f"reference time must be >= 0, got {t}")
    return ref.state_at(limb_id, t)


def deviation(actual: JointState, ref: JointState) -> float:
    """Unwrapped absolute angle difference (rad)"""
    return abs(actual.angle - ref.angle)


@dataclass(frozen=True)
class DeviationReport:
    """Worst deviation from the reference per limb over a run"""
    max_deviation: Mapping[int, float]
    limit: float
    violated: bool

    @property
    def worst(self) -> float:
        return max(self.max_deviation.values(), default=0.0)


def build_deviation_report(
    limb_ids: Sequence[int],
    times: Sequence[float],
    angles: np.ndarray,
    ref: ReferenceTrajectory,
    limit: float,
) -> DeviationReport:
    """
    Recheck logged angles against the reference trajectory

    Args:
        limb_ids: Limb id of each column of angles
        times: Logged times
        angles: Logged angles, shape (len(times), len(limb_ids)), rad
        ref: Reference trajectory
        limit: Deviation limit (rad); exceeding it by more than
            DEVIATION_SLACK_RAD marks the report violated
    """
    max_deviation: Dict[int, float] = {}
    for column, limb_id in enumerate(limb_ids):
        reference = np.array([ref.state_at(limb_id, t).angle for t in times])
        max_deviation[limb_id] = float(np.max(np.abs(angles[:, column] - reference)))
    violated = any(value > limit + DEVIATION_SLACK_RAD for value in max_deviation.values())
    return DeviationReport(max_deviation=max_deviation, limit=limit, violated=violated)
