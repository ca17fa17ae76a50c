"""
Pydantic models for scenario files

Scenario files use degrees and body-mass fractions; the loader converts them
to radians and kilograms once. Unknown keys and non-finite numbers are
rejected at every level. Fields whose default depends on other values (limb
mount, axis, length and mass, missing initial states, run duration) default
to None and are resolved by the loader.
"""
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..srl_model.config import (
    DEFAULT_BODY_MASS_KG,
    DEFAULT_GRAVITY,
    DEFAULT_REFERENCE_POINT,
    DEFAULT_THUMB_TIP_REACH_M,
    DEFAULT_ZERO_DIRECTION,
)
from ..srl_planner.config import (
    ACTIVATION_THRESHOLD_NM,
    ALPHA_MAX_DEG_S2,
    BRAKING_FRACTION,
    CONTROL_DT_S,
    DEVIATION_LIMIT_DEG,
    HORIZON_STEPS,
    ITERATIONS,
    LATCH_ACTIVATION,
)
from .config import (
    DEFAULT_DISTURBANCE_ANGLE_DEG,
    DEFAULT_DISTURBANCE_DURATION_S,
    DEFAULT_DISTURBANCE_LIMB_ID,
)

Triple = Tuple[float, float, float]


class StrictModel(BaseModel):
    """Base for scenario sections: unknown keys are an error"""
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)


class HumanSection(StrictModel):
    """Wearer anthropometrics and frame"""
    body_mass_kg: float = Field(DEFAULT_BODY_MASS_KG, gt=0, description="Body mass (kg)")
    thumb_tip_reach_m: float = Field(DEFAULT_THUMB_TIP_REACH_M, gt=0, description="Thumb-tip reach (m)")
    reference_point_m: Triple = Field(DEFAULT_REFERENCE_POINT, description="T10 position in the body frame (m)")
    gravity_mps2: Triple = Field(DEFAULT_GRAVITY, description="Gravity vector in the body frame (m/s^2)")
    allow_nonstandard_gravity: bool = Field(False, description="Accept a gravity norm outside 9.0-10.5 m/s^2")


class LimbSection(StrictModel):
    """One robotic limb"""
    id: int = Field(..., ge=1, description="Limb id (1-based)")
    mount_point_m: Optional[Triple] = Field(None, description="Joint position (m); default layout by id")
    rotation_axis: Optional[Triple] = Field(None, description="Unit joint axis; default layout by id")
    zero_direction: Triple = Field(DEFAULT_ZERO_DIRECTION, description="Unit link direction at angle 0")
    length_m: Optional[float] = Field(None, gt=0, description="Link length (m); default thumb-tip reach")
    mass_kg: Optional[float] = Field(None, gt=0, description="Point mass (kg)")
    mass_fraction: Optional[float] = Field(None, gt=0, description="Point mass as a fraction of body mass")

    @model_validator(mode="after")
    def check_single_mass(self) -> "LimbSection":
        if self.mass_kg is not None and self.mass_fraction is not None:
            raise ValueError("give either mass_kg or mass_fraction, not both")
        return self


class DisturbanceSection(StrictModel):
    """Moment-increasing maneuver of one limb, from rest"""
    limb_id: int = Field(DEFAULT_DISTURBANCE_LIMB_ID, ge=1, description="Disturbance limb id")
    total_angle_deg: float = Field(DEFAULT_DISTURBANCE_ANGLE_DEG, description="Swept angle (deg)")
    duration_s: float = Field(DEFAULT_DISTURBANCE_DURATION_S, gt=0, description="Sweep duration (s)")


class InitialStateSection(StrictModel):
    """Joint state at t=0"""
    angle_deg: float = Field(0.0, description="Joint angle (deg)")
    velocity_degs: float = Field(0.0, description="Joint velocity (deg/s)")


class PlannerSection(StrictModel):
    """Random-search planner parameters"""
    alpha_max_degs2: float = Field(ALPHA_MAX_DEG_S2, gt=0, description="Acceleration bound (deg/s^2)")
    deviation_limit_deg: float = Field(DEVIATION_LIMIT_DEG, ge=0, description="Deviation limit (deg)")
    iterations: int = Field(ITERATIONS, ge=1, description="Candidates per control loop")
    control_dt_s: float = Field(CONTROL_DT_S, gt=0, description="Control period (s)")
    horizon_steps: int = Field(HORIZON_STEPS, ge=1, description="Look-ahead substeps")
    activation_threshold_nm: float = Field(ACTIVATION_THRESHOLD_NM, description="Activation threshold (N·m)")
    braking_fraction: float = Field(BRAKING_FRACTION, ge=0, lt=1, description="Braking margin share of the budget")
    latch_activation: bool = Field(LATCH_ACTIVATION, description="Stay active once triggered")


class ScenarioFile(BaseModel):
    """
    A scenario document.

    The planner seed is deliberately absent: it comes only from --seed.
    """
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    name: Optional[str] = Field(None, description="Case label; default file stem")
    description: Optional[str] = Field(None, description="Free text")
    human: HumanSection = Field(default_factory=HumanSection, description="Wearer model")
    limbs: Optional[List[LimbSection]] = Field(None, description="Limbs; default four-limb layout")
    disturbance: DisturbanceSection = Field(default_factory=DisturbanceSection, description="Disturbance maneuver")
    initial_states: Dict[str, InitialStateSection] = Field(
        default_factory=dict, description="Initial joint states keyed by limb id; missing limbs start at rest"
    )
    planner: PlannerSection = Field(default_factory=PlannerSection, description="Planner parameters")
    compensation_enabled: bool = Field(True, description="Run the planning layer")
    duration_s: Optional[float] = Field(None, gt=0, description="Run duration (s); default disturbance duration")
