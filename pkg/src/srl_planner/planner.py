"""
Motion planning layer - random-search trajectory modification

Each control loop the planner checks whether the disturbance is raising the
moment on the wearer. When active, it draws random constant accelerations for
the compensating limbs, discards candidates that leave the deviation band
around the original trajectories, and applies the one with the lowest
predicted moment norm.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..srl_model.body_model import HumanModel, JointState, LimbModel
from ..srl_model.dynamics import LimbGeometry, batch_moment, moment_norms, total_moment
from ..srl_model.exceptions import InvalidInputError
from .config import (
    ACTIVATION_THRESHOLD_NM,
    ALPHA_MAX_DEG_S2,
    BRAKING_FRACTION,
    CONTROL_DT_S,
    DEVIATION_LIMIT_DEG,
    HORIZON_STEPS,
    ITERATIONS,
    LATCH_ACTIVATION,
    MAX_SEED,
)
from .sampler import sample_candidates
from .trajectory import ReferenceTrajectory, integrate_constant_alpha

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlannerConfig:
    """Planner parameters; angles in radians"""
    alpha_max: float = math.radians(ALPHA_MAX_DEG_S2)
    deviation_limit: float = math.radians(DEVIATION_LIMIT_DEG)
    iterations: int = ITERATIONS
    control_dt: float = CONTROL_DT_S
    horizon_steps: int = HORIZON_STEPS
    activation_threshold: float = ACTIVATION_THRESHOLD_NM
    seed: int = 0
    braking_fraction: float = BRAKING_FRACTION
    latch_activation: bool = LATCH_ACTIVATION
    keep_evaluated: bool = False

    def __post_init__(self):
        if not self.alpha_max > 0:
            raise InvalidInputError(f"alpha_max must be > 0, got {self.alpha_max}")
        # 0 is allowed: it pins the compensating limbs to their references
        if not self.deviation_limit >= 0:
            raise InvalidInputError(f"deviation_limit must be >= 0, got {self.deviation_limit}")
        if self.iterations < 1:
            raise InvalidInputError(f"iterations must be >= 1, got {self.iterations}")
        if not self.control_dt > 0:
            raise InvalidInputError(f"control_dt must be > 0, got {self.control_dt}")
        if self.horizon_steps < 1:
            raise InvalidInputError(f"horizon_steps must be >= 1, got {self.horizon_steps}")
        if not 0 <= self.seed <= MAX_SEED:
            raise InvalidInputError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not 0 <= self.braking_fraction < 1:
            raise InvalidInputError(
                f"braking_fraction must be in [0, 1), got {self.braking_fraction}"
            )


@dataclass(frozen=True)
class CandidatePlan:
    """One vector of compensating accelerations and its verdict"""
    alphas: Tuple[float, ...]
    cost: Optional[float]
    feasible: bool
    draw_index: Optional[int] = None


@dataclass(frozen=True)
class PlanDecision:
    """Outcome of one control loop"""
    chosen: CandidatePlan
    activated: bool
    n_feasible: int
    fallback: bool
    evaluated: Optional[Tuple[CandidatePlan, ...]] = None


def compensating_indices(limbs: Sequence[LimbModel], ref: ReferenceTrajectory) -> List[int]:
    """Positions in limbs of the compensating limbs, in limb-id order"""
    positions = {limb.id: index for index, limb in enumerate(limbs)}
    if sorted(positions) != ref.limb_ids:
        raise InvalidInputError(
            f"limb ids {sorted(positions)} do not match reference ids {ref.limb_ids}"
        )
    return [positions[limb_id] for limb_id in ref.compensating_ids]


def _reference_states(
    limbs: Sequence[LimbModel],
    comp: Sequence[int],
    ref: ReferenceTrajectory,
    t: float,
) -> List[Optional[JointState]]:
    comp_set = set(comp)
    return [
        None if index in comp_set else ref.state_at(limb.id, t)
        for index, limb in enumerate(limbs)
    ]


def evaluate_candidates(
    alphas: np.ndarray,
    current_states: Sequence[JointState],
    limbs: Sequence[LimbModel],
    human: HumanModel,
    ref: ReferenceTrajectory,
    t: float,
    config: PlannerConfig,
    disturbance_state_next: Optional[JointState] = None,
    geometry: Optional[LimbGeometry] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Score a batch of candidates over the look-ahead horizon

    Args:
        alphas: Candidate accelerations, shape (K, m), one column per
            compensating limb in limb-id order
        current_states: Joint states at time t, aligned with limbs
        limbs: Limb models
        human: Human model
        ref: Reference trajectories of all limbs
        t: Current time (s)
        config: Planner parameters
        disturbance_state_next: Optional override of the disturbance limb's
            state at t + control_dt
        geometry: Pre-stacked limbs, built from limbs when omitted

    Returns:
        Tuple of (costs, feasible), both shape (K,). costs is the mean moment
        norm over the horizon substeps.
    """
    alphas = np.atleast_2d(np.asarray(alphas, dtype=float))
    comp = compensating_indices(limbs, ref)
    if len(current_states) != len(limbs):
        raise InvalidInputError(f"got {len(limbs)} limbs but {len(current_states)} joint states")
    if alphas.shape[1] != len(comp):
        raise InvalidInputError(
            f"candidate has {alphas.shape[1]} accelerations for {len(comp)} compensating limbs"
        )
    if geometry is None:
        geometry = LimbGeometry.from_limbs(limbs)

    count = alphas.shape[0]
    comp_ids = [limbs[index].id for index in comp]
    theta = np.array([current_states[index].angle for index in comp])
    omega = np.array([current_states[index].velocity for index in comp])

    angles = np.empty((count, len(limbs)))
    velocities = np.empty_like(angles)
    accelerations = np.empty_like(angles)
    costs = np.zeros(count)
    feasible = np.ones(count, dtype=bool)

    for step in range(1, config.horizon_steps + 1):
        tau = step * config.control_dt
        t_step = t + tau

        for index, state in enumerate(_reference_states(limbs, comp, ref, t_step)):
            if state is None:
                continue
            if (step == 1 and disturbance_state_next is not None
                    and limbs[index].id == ref.disturbance_limb_id):
                state = disturbance_state_next
            angles[:, index] = state.angle
            velocities[:, index] = state.velocity
            accelerations[:, index] = state.acceleration

        comp_angles = theta + omega * tau + 0.5 * alphas * tau * tau
        comp_velocities = omega + alphas * tau
        angles[:, comp] = comp_angles
        velocities[:, comp] = comp_velocities
        accelerations[:, comp] = alphas

        costs += moment_norms(batch_moment(geometry, angles, velocities, accelerations, human))

        ref_angles = np.array([ref.state_at(limb_id, t_step).angle for limb_id in comp_ids])
        feasible &= np.all(np.abs(comp_angles - ref_angles) <= config.deviation_limit, axis=1)

    costs /= config.horizon_steps

    if config.braking_fraction > 0:
        t_end = t + config.horizon_steps * config.control_dt
        ref_end = [ref.state_at(limb_id, t_end) for limb_id in comp_ids]
        ref_alpha = np.array([abs(ref.acceleration(limb_id, t_end)) for limb_id in comp_ids])
        braking = config.braking_fraction * (config.alpha_max - ref_alpha)
        error = comp_angles - np.array([state.angle for state in ref_end])
        error_rate = comp_velocities - np.array([state.velocity for state in ref_end])
        # Limbs whose reference already uses the whole budget get no braking check
        with np.errstate(divide="ignore", invalid="ignore"):
            stop = np.where(braking > 0, error + error_rate * np.abs(error_rate) / (2.0 * braking), error)
        feasible &= np.all(np.abs(stop) <= config.deviation_limit, axis=1)

    return costs, feasible


def evaluate_candidate(
    alphas: Sequence[float],
    current_states: Sequence[JointState],
    disturbance_state_next: Optional[JointState],
    limbs: Sequence[LimbModel],
    human: HumanModel,
    ref: ReferenceTrajectory,
    t: float,
    config: PlannerConfig,
) -> CandidatePlan:
    """
    Simulate one candidate over the horizon and score it

    Infeasibility is reported in the returned plan, never raised.
    """
    alphas = np.asarray(alphas, dtype=float).reshape(1, -1)
    costs, feasible = evaluate_candidates(
        alphas, current_states, limbs, human, ref, t, config,
        disturbance_state_next=disturbance_state_next,
    )
    is_feasible = bool(feasible[0])
    return CandidatePlan(
        alphas=tuple(float(a) for a in alphas[0]),
        cost=float(costs[0]) if is_feasible else None,
        feasible=is_feasible,
    )


def should_activate(
    current_states: Sequence[JointState],
    limbs: Sequence[LimbModel],
    human: HumanModel,
    ref: ReferenceTrajectory,
    t: float,
    config: PlannerConfig,
) -> bool:
    """
    True when following the references for one control period would raise
    the moment norm by more than the activation threshold
    """
    comp = set(compensating_indices(limbs, ref))
    t_next = t + config.control_dt
    predicted_states = []
    for index, (limb, state) in enumerate(zip(limbs, current_states)):
        if index in comp:
            alpha_ref = ref.acceleration(limb.id, t_next)
            predicted_states.append(integrate_constant_alpha(state, alpha_ref, config.control_dt))
        else:
            predicted_states.append(ref.state_at(limb.id, t_next))

    current = total_moment(limbs, current_states, human, t).norm
    predicted = total_moment(limbs, predicted_states, human, t_next).norm
    return predicted - current > config.activation_threshold


def reference_decision(
    limbs: Sequence[LimbModel],
    ref: ReferenceTrajectory,
    t: float,
    config: PlannerConfig,
) -> PlanDecision:
    """Inactive planner: every compensating limb keeps its reference acceleration"""
    t_next = t + config.control_dt
    alphas = tuple(ref.acceleration(limb_id, t_next) for limb_id in ref.compensating_ids)
    return PlanDecision(
        chosen=CandidatePlan(alphas=alphas, cost=None, feasible=True),
        activated=False,
        n_feasible=0,
        fallback=False,
    )


def select_best(
    alphas: np.ndarray,
    costs: np.ndarray,
    feasible: np.ndarray,
    keep_evaluated: bool = False,
    index_offset: int = 0,
) -> PlanDecision:
    """
    Pick the feasible candidate with the lowest cost

    Ties go to the lowest index. With no feasible candidate the decision
    falls back to zero acceleration.
    """
    n_feasible = int(np.count_nonzero(feasible))
    evaluated = None
    if keep_evaluated:
        evaluated = tuple(
            CandidatePlan(
                alphas=tuple(float(a) for a in row),
                cost=float(cost) if ok else None,
                feasible=bool(ok),
                draw_index=index_offset + k,
            )
            for k, (row, cost, ok) in enumerate(zip(alphas, costs, feasible))
        )

    if n_feasible == 0:
        chosen = CandidatePlan(alphas=(0.0,) * alphas.shape[1], cost=None, feasible=False)
        return PlanDecision(chosen=chosen, activated=True, n_feasible=0, fallback=True,
                            evaluated=evaluated)

    best = int(np.argmin(np.where(feasible, costs, np.inf)))
    chosen = CandidatePlan(
        alphas=tuple(float(a) for a in alphas[best]),
        cost=float(costs[best]),
        feasible=True,
        draw_index=index_offset + best,
    )
    return PlanDecision(chosen=chosen, activated=True, n_feasible=n_feasible,
                        fallback=False, evaluated=evaluated)


def plan_step(
    rng: np.random.Generator,
    current_states: Sequence[JointState],
    limbs: Sequence[LimbModel],
    human: HumanModel,
    ref: ReferenceTrajectory,
    t: float,
    config: PlannerConfig,
    force_active: bool = False,
    geometry: Optional[LimbGeometry] = None,
) -> PlanDecision:
    """
    Run one control loop of the random-search planner

    Args:
        rng: Candidate stream; consumed only when the planner is active
        current_states: Joint states at time t, aligned with limbs
        limbs: Limb models
        human: Human model
        ref: Reference trajectories
        t: Current time (s)
        config: Planner parameters
        force_active: Skip the activation test (latched planner)
        geometry: Pre-stacked limbs, built from limbs when omitted

    Returns:
        PlanDecision for the interval [t, t + control_dt]
    """
    activated = force_active or should_activate(current_states, limbs, human, ref, t, config)
    if not activated:
        return reference_decision(limbs, ref, t, config)

    n_comp = len(ref.compensating_ids)
    alphas = sample_candidates(rng, config.iterations, n_comp, config.alpha_max)
    costs, feasible = evaluate_candidates(
        alphas, current_states, limbs, human, ref, t, config, geometry=geometry,
    )
    decision = select_best(alphas, costs, feasible, keep_evaluated=config.keep_evaluated)
    if decision.fallback:
        logger.warning(f"t={t:.3f}s: no feasible candidate among {config.iterations}, coasting")
    return decision
