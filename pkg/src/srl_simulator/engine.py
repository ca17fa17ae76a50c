"""
Simulation engine - fixed-step scenario executor

Every control period the engine (1) asks the planner for compensating
accelerations, or coasts when compensation is off, (2) advances all limbs in
closed form and (3) records the moment on the wearer. The disturbance limb is
always evaluated directly from its profile, so it never drifts.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..srl_model.body_model import HumanModel, JointState, LimbModel
from ..srl_model.dynamics import (
    LimbGeometry,
    MomentSample,
    moment_breakdown,
    norm_percent_body_mass,
)
from ..srl_model.exceptions import InvalidInputError
from ..srl_planner.grid_search import grid_search_step
from ..srl_planner.planner import (
    PlanDecision,
    PlannerConfig,
    compensating_indices,
    plan_step,
    reference_decision,
    should_activate,
)
from ..srl_planner.sampler import make_rng
from ..srl_planner.trajectory import (
    ConstantAccelProfile,
    DeviationReport,
    ReferenceTrajectory,
    build_deviation_report,
    integrate_constant_alpha,
)
from .logging import RunLogger

logger = logging.getLogger(__name__)

# Slack when dividing the duration into control periods (2.5 / 0.01 is not exactly 250)
_STEP_COUNT_SLACK = 1e-9


@dataclass(frozen=True)
class Scenario:
    """
    A fully resolved simulation case.

    initial_states maps limb id -> (angle rad, velocity rad/s).
    defaults_applied lists (key, value) for every value the scenario file
    left to its default.
    """
    name: str
    human: HumanModel
    limbs: Tuple[LimbModel, ...]
    disturbance_limb_id: int
    disturbance: ConstantAccelProfile
    initial_states: Mapping[int, Tuple[float, float]]
    planner: PlannerConfig = field(default_factory=PlannerConfig)
    compensation_enabled: bool = True
    duration: float = 2.5
    defaults_applied: Tuple[Tuple[str, str], ...] = ()

    def validate(self) -> None:
        """
        Check the scenario invariants

        Raises:
            InvalidInputError: On any violated invariant
        """
        ids = [limb.id for limb in self.limbs]
        if not ids:
            raise InvalidInputError("scenario needs at least one limb")
        if len(set(ids)) != len(ids):
            raise InvalidInputError(f"duplicate limb ids: {ids}")
        if self.disturbance_limb_id not in ids:
            raise InvalidInputError(
                f"disturbance limb {self.disturbance_limb_id} is not one of {sorted(ids)}"
            )
        if sorted(self.initial_states) != sorted(ids):
            raise InvalidInputError(
                f"initial states given for {sorted(self.initial_states)}, limbs are {sorted(ids)}"
            )
        for limb_id, state in self.initial_states.items():
            if not all(math.isfinite(value) for value in state):
                raise InvalidInputError(f"initial state of limb {limb_id} must be finite, got {state}")
        theta0, omega0 = self.initial_states[self.disturbance_limb_id]
        if theta0 != self.disturbance.theta0 or omega0 != self.disturbance.omega0:
            raise InvalidInputError(
                f"initial state of disturbance limb {self.disturbance_limb_id} "
                "does not match its profile at t=0"
            )
        if not self.duration > 0:
            raise InvalidInputError(f"duration must be > 0, got {self.duration}")
        if self.compensation_enabled and len(ids) < 2:
            raise InvalidInputError("compensation needs at least one compensating limb")

    def with_compensation(self, enabled: bool) -> "Scenario":
        return replace(self, compensation_enabled=enabled)

    def with_seed(self, seed: int) -> "Scenario":
        return replace(self, planner=replace(self.planner, seed=seed))

    def with_planner(self, **changes) -> "Scenario":
        return replace(self, planner=replace(self.planner, **changes))

    def reference(self) -> ReferenceTrajectory:
        return ReferenceTrajectory.from_initial_states(
            self.initial_states,
            self.duration,
            disturbance_limb_id=self.disturbance_limb_id,
            disturbance=self.disturbance,
        )

    @property
    def step_count(self) -> int:
        return math.ceil(self.duration / self.planner.control_dt - _STEP_COUNT_SLACK)


@dataclass(frozen=True)
class TimeSeriesEntry:
    """One logged control step"""
    time: float
    states: Tuple[JointState, ...]
    moment: MomentSample
    gravity_norm: float
    motion_norm: float
    activated: bool = False
    fallback: bool = False
    n_feasible: int = 0


@dataclass
class TimeSeries:
    """Logged steps of a run; states are ordered like limb_ids"""
    limb_ids: Tuple[int, ...]
    entries: List[TimeSeriesEntry] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def times(self) -> np.ndarray:
        return np.array([entry.time for entry in self.entries])

    @property
    def norms(self) -> np.ndarray:
        return np.array([entry.moment.norm for entry in self.entries])

    @property
    def angles(self) -> np.ndarray:
        return np.array([[s.angle for s in entry.states] for entry in self.entries])

    @property
    def velocities(self) -> np.ndarray:
        return np.array([[s.velocity for s in entry.states] for entry in self.entries])


@dataclass(frozen=True)
class RunSummary:
    """Statistics of one run over all logged samples, t=0 included"""
    label: str
    seed: int
    compensation_enabled: bool
    step_count: int
    max_norm: float
    mean_norm: float
    deviation_report: DeviationReport
    fallback_count: int
    activated_count: int
    mean_gravity_norm: float
    mean_motion_norm: float
    body_mass: float

    def norm_pct_bm(self, value: float) -> float:
        """value (N·m) as %BM"""
        return norm_percent_body_mass(value, self.body_mass)


def _record(
    limbs: Sequence[LimbModel],
    states: Sequence[JointState],
    human: HumanModel,
    t: float,
    decision: Optional[PlanDecision],
) -> TimeSeriesEntry:
    breakdown = moment_breakdown(limbs, states, human)
    return TimeSeriesEntry(
        time=t,
        states=tuple(states),
        moment=MomentSample.from_moment(t, breakdown.total()),
        gravity_norm=breakdown.gravity_total().norm(),
        motion_norm=breakdown.motion_total().norm(),
        activated=bool(decision and decision.activated),
        fallback=bool(decision and decision.fallback),
        n_feasible=decision.n_feasible if decision else 0,
    )


def summarize(scenario: Scenario, series: TimeSeries, ref: ReferenceTrajectory) -> RunSummary:
    """Compute the run statistics and the post-hoc deviation recheck"""
    norms = series.norms
    report = build_deviation_report(
        series.limb_ids, series.times, series.angles, ref, scenario.planner.deviation_limit,
    )
    return RunSummary(
        label=scenario.name,
        seed=scenario.planner.seed,
        compensation_enabled=scenario.compensation_enabled,
        step_count=len(series) - 1,
        max_norm=float(np.max(norms)),
        mean_norm=float(np.mean(norms)),
        deviation_report=report,
        fallback_count=sum(entry.fallback for entry in series.entries),
        activated_count=sum(entry.activated for entry in series.entries),
        mean_gravity_norm=float(np.mean([entry.gravity_norm for entry in series.entries])),
        mean_motion_norm=float(np.mean([entry.motion_norm for entry in series.entries])),
        body_mass=scenario.human.body_mass,
    )


def run_scenario(
    scenario: Scenario,
    oracle_grid_points: Optional[int] = None,
    run_logger: Optional[RunLogger] = None,
) -> Tuple[TimeSeries, RunSummary]:
    """
    Execute a scenario from t=0 for ceil(duration / control_dt) steps

    Args:
        scenario: Resolved scenario
        oracle_grid_points: When set, each active loop runs an exhaustive grid
            search with this many points per limb instead of random search
        run_logger: Optional structured run log

    Returns:
        Tuple of (time series, summary)

    Raises:
        InvalidInputError: If the scenario violates an invariant (before any stepping)
    """
    scenario.validate()
    ref = scenario.reference()
    limbs = list(scenario.limbs)
    human = scenario.human
    config = scenario.planner
    dt = config.control_dt
    geometry = LimbGeometry.from_limbs(limbs)
    comp = compensating_indices(limbs, ref)
    comp_set = set(comp)
    rng = make_rng(config.seed)

    states: List[JointState] = []
    for limb in limbs:
        theta0, omega0 = scenario.initial_states[limb.id]
        if limb.id == scenario.disturbance_limb_id:
            states.append(ref.state_at(limb.id, 0.0))
        else:
            states.append(JointState(theta0, omega0, 0.0))

    series = TimeSeries(limb_ids=tuple(limb.id for limb in limbs))
    series.entries.append(_record(limbs, states, human, 0.0, None))

    steps = scenario.step_count
    mode = "grid" if oracle_grid_points else "random"
    logger.info(
        f"Running {scenario.name}: {steps} steps, compensation="
        f"{'on' if scenario.compensation_enabled else 'off'}, search={mode}, seed={config.seed}"
    )
    if run_logger:
        run_logger.stage_start("stepping", {
            "scenario": scenario.name,
            "steps": steps,
            "compensation_enabled": scenario.compensation_enabled,
            "search": mode,
            "seed": config.seed,
        })

    latched = False
    for k in range(steps):
        t = k * dt
        t_next = (k + 1) * dt

        if scenario.compensation_enabled:
            force_active = latched and config.latch_activation
            if oracle_grid_points:
                if force_active or should_activate(states, limbs, human, ref, t, config):
                    decision = grid_search_step(
                        states, limbs, human, ref, t, config, oracle_grid_points, geometry=geometry,
                    )
                else:
                    decision = reference_decision(limbs, ref, t, config)
            else:
                decision = plan_step(
                    rng, states, limbs, human, ref, t, config,
                    force_active=force_active, geometry=geometry,
                )
            latched = latched or decision.activated
            if decision.fallback and run_logger:
                run_logger.planner_fallback(t, config.iterations)
        else:
            decision = reference_decision(limbs, ref, t, config)

        alphas = dict(zip(comp, decision.chosen.alphas))
        next_states = []
        for index, (limb, state) in enumerate(zip(limbs, states)):
            if index in comp_set:
                next_states.append(integrate_constant_alpha(state, alphas[index], dt))
            else:
                next_states.append(ref.state_at(limb.id, t_next))
        states = next_states
        series.entries.append(_record(limbs, states, human, t_next, decision))

    summary = summarize(scenario, series, ref)
    if summary.deviation_report.violated:
        logger.warning(
            f"{scenario.name}: deviation limit exceeded "
            f"(worst {math.degrees(summary.deviation_report.worst):.6f} deg)"
        )
    logger.info(
        f"✅ {scenario.name} done: max |M| = {summary.max_norm:.4f} N·m, "
        f"mean |M| = {summary.mean_norm:.4f} N·m, fallbacks = {summary.fallback_count}"
    )
    if run_logger:
        run_logger.stage_end("stepping", {
            "max_norm_nm": summary.max_norm,
            "mean_norm_nm": summary.mean_norm,
            "fallback_count": summary.fallback_count,
            "activated_count": summary.activated_count,
            "deviation_violated": summary.deviation_report.violated,
        })
    return series, summary
