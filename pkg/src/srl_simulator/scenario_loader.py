"""
Scenario Loader - scenario JSON → resolved Scenario

Steps:
- Read and parse the file (distinct errors for missing file, bad JSON,
  unknown keys and invalid values)
- Convert degrees to radians and body-mass fractions to kilograms, once
- Fill every omitted value with its default and record it for the
  provenance banner
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from pydantic import BaseModel, ValidationError

from ..srl_model.body_model import HumanModel, LimbModel, Vec3
from ..srl_model.config import (
    DEFAULT_LIMB_MASS_FRACTION,
    DEFAULT_MOUNT_POINTS,
    DEFAULT_ROTATION_AXES,
    DEFAULT_ROTATION_AXIS,
)
from ..srl_model.exceptions import InvalidInputError
from ..srl_planner.planner import PlannerConfig
from ..srl_planner.trajectory import disturbance_profile
from .engine import Scenario
from .exceptions import (
    MalformedScenarioError,
    ScenarioFileNotFoundError,
    ScenarioValidationError,
    UnknownKeyError,
)
from .models import LimbSection, ScenarioFile

logger = logging.getLogger(__name__)


def format_value(value: Any) -> str:
    """Render a resolved value for the provenance banner"""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:g}"
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(format_value(v) for v in value) + ")"
    return str(value)


def _dotted(loc: Tuple[Union[str, int], ...]) -> str:
    key = ""
    for part in loc:
        if isinstance(part, int):
            key += f"[{part}]"
        else:
            key += f".{part}" if key else str(part)
    return key


class ScenarioLoader:
    """
    Loads one scenario file into a Scenario

    Usage:
        scenario = ScenarioLoader("config/scenarios/case_1_1.json").load(seed=42)
    """

    def __init__(self, file_path: Union[str, Path]):
        """
        Args:
            file_path: Path to the scenario JSON file

        Raises:
            ScenarioFileNotFoundError: If the file doesn't exist
        """
        self.file_path = Path(file_path)
        if not self.file_path.is_file():
            raise ScenarioFileNotFoundError(f"Scenario file not found: {file_path}")
        self._defaults: List[Tuple[str, str]] = []

    def read(self) -> ScenarioFile:
        """
        Parse and schema-check the file

        Raises:
            MalformedScenarioError: On bytes that are not UTF-8 or a JSON syntax
                error (with line and column)
            UnknownKeyError: On a key the schema does not define
            ScenarioValidationError: On a missing or mistyped value
        """
        try:
            text = self.file_path.read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise MalformedScenarioError(
                f"{self.file_path.name}: not valid UTF-8 (byte {e.start})"
            ) from e
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise MalformedScenarioError(
                f"{self.file_path.name}: {e.msg} (line {e.lineno}, column {e.colno})",
                line=e.lineno,
                column=e.colno,
            ) from e
        if not isinstance(raw, dict):
            raise MalformedScenarioError(
                f"{self.file_path.name}: top level must be a JSON object", line=1, column=1
            )

        try:
            return ScenarioFile.model_validate(raw)
        except ValidationError as e:
            errors = e.errors()
            unknown = [err for err in errors if err["type"] == "extra_forbidden"]
            if unknown:
                key = _dotted(unknown[0]["loc"])
                raise UnknownKeyError(f"{self.file_path.name}: unknown key '{key}'", key=key) from e
            key = _dotted(errors[0]["loc"])
            raise ScenarioValidationError(
                f"{self.file_path.name}: {key or 'scenario'}: {errors[0]['msg']}", key=key or None
            ) from e

    def _record(self, key: str, value: Any) -> None:
        if any(existing == key for existing, _ in self._defaults):
            return
        self._defaults.append((key, format_value(value)))

    def _walk_defaults(self, model: BaseModel, prefix: str = "") -> None:
        """Record every omitted field that has a fixed default"""
        for name in type(model).model_fields:
            key = f"{prefix}{name}"
            value = getattr(model, name)
            if isinstance(value, BaseModel):
                self._walk_defaults(value, f"{key}.")
            elif isinstance(value, list):
                for index, item in enumerate(value):
                    self._walk_defaults(item, f"{key}[{index}].")
            elif isinstance(value, dict):
                for item_key, item in value.items():
                    self._walk_defaults(item, f"{key}.{item_key}.")
            elif name not in model.model_fields_set and value is not None:
                self._record(key, value)

    def _invalid(self, key: str, error: Exception) -> ScenarioValidationError:
        return ScenarioValidationError(f"{self.file_path.name}: {key}: {error}", key=key)

    def _build_human(self, doc: ScenarioFile) -> HumanModel:
        section = doc.human
        try:
            return HumanModel(
                body_mass=section.body_mass_kg,
                thumb_tip_reach=section.thumb_tip_reach_m,
                reference_point=Vec3(*section.reference_point_m),
                gravity=Vec3(*section.gravity_mps2),
                allow_nonstandard_gravity=section.allow_nonstandard_gravity,
            )
        except InvalidInputError as e:
            raise self._invalid("human", e) from e

    def _build_limbs(self, doc: ScenarioFile, human: HumanModel) -> List[LimbModel]:
        sections = doc.limbs
        if sections is None:
            sections = [LimbSection(id=limb_id) for limb_id in sorted(DEFAULT_MOUNT_POINTS)]
            self._record("limbs", f"default layout, ids {sorted(DEFAULT_MOUNT_POINTS)}")
            for index, section in enumerate(sections):
                self._walk_defaults(section, f"limbs[{index}].")
        if not sections:
            raise ScenarioValidationError(f"{self.file_path.name}: limbs: list is empty", key="limbs")

        limbs = []
        for index, section in enumerate(sections):
            prefix = f"limbs[{index}]"
            mount = section.mount_point_m
            if mount is None:
                if section.id not in DEFAULT_MOUNT_POINTS:
                    raise ScenarioValidationError(
                        f"{self.file_path.name}: {prefix}.mount_point_m: "
                        f"required for limb {section.id} (no default mount)",
                        key=f"{prefix}.mount_point_m",
                    )
                mount = DEFAULT_MOUNT_POINTS[section.id]
                self._record(f"{prefix}.mount_point_m", mount)

            axis = section.rotation_axis
            if axis is None:
                axis = DEFAULT_ROTATION_AXES.get(section.id, DEFAULT_ROTATION_AXIS)
                self._record(f"{prefix}.rotation_axis", axis)

            length = section.length_m
            if length is None:
                length = human.thumb_tip_reach
                self._record(f"{prefix}.length_m", length)

            mass = section.mass_kg
            if mass is None:
                fraction = section.mass_fraction
                if fraction is None:
                    fraction = DEFAULT_LIMB_MASS_FRACTION
                    self._record(f"{prefix}.mass_fraction", f"{fraction:g} ({fraction * human.body_mass:g} kg)")
                mass = fraction * human.body_mass

            try:
                limbs.append(LimbModel(
                    id=section.id,
                    mount_point=Vec3(*mount),
                    rotation_axis=Vec3(*axis),
                    zero_direction=Vec3(*section.zero_direction),
                    length=length,
                    mass=mass,
                ))
            except InvalidInputError as e:
                raise self._invalid(prefix, e) from e

        ids = [limb.id for limb in limbs]
        if len(set(ids)) != len(ids):
            raise ScenarioValidationError(
                f"{self.file_path.name}: limbs: duplicate limb ids {ids}", key="limbs"
            )
        return sorted(limbs, key=lambda limb: limb.id)

    def _build_initial_states(
        self,
        doc: ScenarioFile,
        limb_ids: List[int],
        disturbance_limb_id: int,
    ) -> Dict[int, Tuple[float, float]]:
        given: Dict[int, Tuple[float, float]] = {}
        for raw_id, section in doc.initial_states.items():
            key = f"initial_states.{raw_id}"
            try:
                limb_id = int(raw_id)
            except ValueError:
                raise ScenarioValidationError(
                    f"{self.file_path.name}: {key}: limb id must be an integer", key=key
                ) from None
            if limb_id not in limb_ids:
                raise ScenarioValidationError(
                    f"{self.file_path.name}: {key}: no limb with id {limb_id}", key=key
                )
            if limb_id == disturbance_limb_id and (section.angle_deg or section.velocity_degs):
                raise ScenarioValidationError(
                    f"{self.file_path.name}: {key}: the disturbance limb starts from rest", key=key
                )
            given[limb_id] = (math.radians(section.angle_deg), math.radians(section.velocity_degs))

        states = {}
        for limb_id in limb_ids:
            if limb_id not in given:
                self._record(f"initial_states.{limb_id}", "0 deg, 0 deg/s")
            states[limb_id] = given.get(limb_id, (0.0, 0.0))
        return states

    def _build_planner(self, doc: ScenarioFile, seed: int) -> PlannerConfig:
        section = doc.planner
        try:
            return PlannerConfig(
                alpha_max=math.radians(section.alpha_max_degs2),
                deviation_limit=math.radians(section.deviation_limit_deg),
                iterations=section.iterations,
                control_dt=section.control_dt_s,
                horizon_steps=section.horizon_steps,
                activation_threshold=section.activation_threshold_nm,
                seed=seed,
                braking_fraction=section.braking_fraction,
                latch_activation=section.latch_activation,
            )
        except InvalidInputError as e:
            raise self._invalid("planner", e) from e

    def load(self, seed: int = 0) -> Scenario:
        """
        Resolve the file into a validated Scenario

        Args:
            seed: Planner seed (never read from the file)

        Returns:
            Scenario in SI units with defaults_applied filled in

        Raises:
            ScenarioError: Any subclass, naming the offending key or line
        """
        doc = self.read()
        self._defaults = []
        self._walk_defaults(doc)

        name = doc.name
        if name is None:
            name = self.file_path.stem
            self._record("name", name)

        human = self._build_human(doc)
        limbs = self._build_limbs(doc, human)
        limb_ids = [limb.id for limb in limbs]

        disturbance_limb_id = doc.disturbance.limb_id
        if disturbance_limb_id not in limb_ids:
            raise ScenarioValidationError(
                f"{self.file_path.name}: disturbance.limb_id: no limb with id {disturbance_limb_id}",
                key="disturbance.limb_id",
            )
        profile = disturbance_profile(
            math.radians(doc.disturbance.total_angle_deg), doc.disturbance.duration_s,
        )
        initial_states = self._build_initial_states(doc, limb_ids, disturbance_limb_id)

        duration = doc.duration_s
        if duration is None:
            duration = doc.disturbance.duration_s
            self._record("duration_s", duration)

        scenario = Scenario(
            name=name,
            human=human,
            limbs=tuple(limbs),
            disturbance_limb_id=disturbance_limb_id,
            disturbance=profile,
            initial_states=initial_states,
            planner=self._build_planner(doc, seed),
            compensation_enabled=doc.compensation_enabled,
            duration=duration,
            defaults_applied=tuple(self._defaults),
        )
        try:
            scenario.validate()
        except InvalidInputError as e:
            raise self._invalid("scenario", e) from e

        logger.info(
            f"Loaded scenario {name} from {self.file_path.name} "
            f"({len(limbs)} limbs, {len(self._defaults)} defaults applied)"
        )
        return scenario


def parse_scenario(path: Union[str, Path], seed: int = 0) -> Scenario:
    """Load and resolve a scenario file"""
    return ScenarioLoader(path).load(seed=seed)
