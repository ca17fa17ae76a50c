"""
Body Model - human reference frame and point-mass limb kinematics

Each robotic limb is a single revolute joint: a point mass at the tip of a
link of fixed length, rotating about an axis fixed in the human body frame.
All angles are radians; all vectors are expressed in the body frame.
"""

import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .config import (
    DEFAULT_BODY_MASS_KG,
    DEFAULT_GRAVITY,
    DEFAULT_LIMB_MASS_FRACTION,
    DEFAULT_MOUNT_POINTS,
    DEFAULT_REFERENCE_POINT,
    DEFAULT_ROTATION_AXES,
    DEFAULT_ROTATION_AXIS,
    DEFAULT_THUMB_TIP_REACH_M,
    DEFAULT_ZERO_DIRECTION,
    GRAVITY_NORM_RANGE,
    UNIT_TOLERANCE,
)
from .exceptions import InvalidInputError


@dataclass(frozen=True)
class Vec3:
    """Cartesian 3-vector; the unit depends on where it is used"""
    x: float
    y: float
    z: float

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def __mul__(self, scalar: float) -> "Vec3":
        return Vec3(self.x * scalar, self.y * scalar, self.z * scalar)

    __rmul__ = __mul__

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def is_finite(self) -> bool:
        return math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)

    def to_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    @classmethod
    def from_array(cls, values: Sequence[float]) -> "Vec3":
        if len(values) != 3:
            raise InvalidInputError(f"Vec3 needs exactly 3 components, got {len(values)}")
        return cls(float(values[0]), float(values[1]), float(values[2]))

    @classmethod
    def zero(cls) -> "Vec3":
        return cls(0.0, 0.0, 0.0)


def cross(a: Vec3, b: Vec3) -> Vec3:
    """Right-handed cross product a × b"""
    return Vec3(
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    )


def rotate_about_axis(v: Vec3, axis: Vec3, angle: float) -> Vec3:
    """
    Rotate v about a unit axis by angle (Rodrigues formula)

    Args:
        v: Vector to rotate
        axis: Unit rotation axis
        angle: Rotation angle in radians, right-hand rule

    Returns:
        Rotated vector
    """
    c = math.cos(angle)
    s = math.sin(angle)
    return v * c + cross(axis, v) * s + axis * (axis.dot(v) * (1.0 - c))


@dataclass(frozen=True)
class HumanModel:
    """Anthropometric parameters and the moment reference point (T10)"""
    body_mass: float
    thumb_tip_reach: float
    reference_point: Vec3 = Vec3(*DEFAULT_REFERENCE_POINT)
    gravity: Vec3 = Vec3(*DEFAULT_GRAVITY)
    allow_nonstandard_gravity: bool = False

    def __post_init__(self):
        if not (self.body_mass > 0 and math.isfinite(self.body_mass)):
            raise InvalidInputError(f"body_mass must be > 0, got {self.body_mass}")
        if not (self.thumb_tip_reach > 0 and math.isfinite(self.thumb_tip_reach)):
            raise InvalidInputError(f"thumb_tip_reach must be > 0, got {self.thumb_tip_reach}")
        if not (self.reference_point.is_finite() and self.gravity.is_finite()):
            raise InvalidInputError("reference_point and gravity must be finite")
        if not self.allow_nonstandard_gravity:
            low, high = GRAVITY_NORM_RANGE
            g = self.gravity.norm()
            if not low <= g <= high:
                raise InvalidInputError(
                    f"gravity norm {g:.4f} m/s^2 outside [{low}, {high}]; "
                    "set allow_nonstandard_gravity to override"
                )


@dataclass(frozen=True)
class LimbModel:
    """
    One robotic limb: a point mass at the tip of a link rotating about a
    body-fixed axis through mount_point.

    zero_direction is the link direction at angle 0 and must be perpendicular
    to rotation_axis.
    """
    id: int
    mount_point: Vec3
    rotation_axis: Vec3
    zero_direction: Vec3
    length: float
    mass: float

    def __post_init__(self):
        if self.id < 1:
            raise InvalidInputError(f"limb id must be >= 1, got {self.id}")
        if not (self.length > 0 and math.isfinite(self.length)):
            raise InvalidInputError(f"limb {self.id}: length must be finite and > 0, got {self.length}")
        if not (self.mass > 0 and math.isfinite(self.mass)):
            raise InvalidInputError(f"limb {self.id}: mass must be finite and > 0, got {self.mass}")
        for name in ("mount_point", "rotation_axis", "zero_direction"):
            if not getattr(self, name).is_finite():
                raise InvalidInputError(f"limb {self.id}: {name} must be finite")
        if abs(self.rotation_axis.norm() - 1.0) > UNIT_TOLERANCE:
            raise InvalidInputError(f"limb {self.id}: rotation_axis must be a unit vector")
        if abs(self.zero_direction.norm() - 1.0) > UNIT_TOLERANCE:
            raise InvalidInputError(f"limb {self.id}: zero_direction must be a unit vector")
        if abs(self.rotation_axis.dot(self.zero_direction)) > UNIT_TOLERANCE:
            raise InvalidInputError(
                f"limb {self.id}: zero_direction must be perpendicular to rotation_axis"
            )


@dataclass(frozen=True)
class JointState:
    """Angle (rad), velocity (rad/s) and acceleration (rad/s^2) of one joint"""
    angle: float
    velocity: float = 0.0
    acceleration: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.angle) and math.isfinite(self.velocity)
                and math.isfinite(self.acceleration)):
            raise InvalidInputError(f"joint state must be finite: {self}")


def limb_com_position(limb: LimbModel, angle: float) -> Vec3:
    """Position of the limb's point mass for the given joint angle"""
    direction = rotate_about_axis(limb.zero_direction, limb.rotation_axis, angle)
    return limb.mount_point + direction * limb.length


def limb_com_acceleration(limb: LimbModel, state: JointState) -> Vec3:
    """
    Acceleration of the limb's point mass in the body frame

    Returns α⃗×ρ⃗ + ω⃗×(ω⃗×ρ⃗) with ρ⃗ measured from the mount point.
    """
    rho = limb_com_position(limb, state.angle) - limb.mount_point
    omega = limb.rotation_axis * state.velocity
    alpha = limb.rotation_axis * state.acceleration
    return cross(alpha, rho) + cross(omega, cross(omega, rho))


def moment_arm(limb: LimbModel, angle: float, human: HumanModel) -> Vec3:
    """Vector from the T10 reference point to the limb's point mass"""
    return limb_com_position(limb, angle) - human.reference_point


def default_human(
    body_mass: float = DEFAULT_BODY_MASS_KG,
    thumb_tip_reach: float = DEFAULT_THUMB_TIP_REACH_M,
) -> HumanModel:
    """Human model with the default frame and gravity"""
    return HumanModel(body_mass=body_mass, thumb_tip_reach=thumb_tip_reach)


def default_limbs(
    human: HumanModel,
    mass_fraction: float = DEFAULT_LIMB_MASS_FRACTION,
) -> List[LimbModel]:
    """
    Default four-limb layout: yaw joints at the shoulders and hips of the
    trunk, links pointing forward at angle 0, length = thumb-tip reach.
    Limb #2 turns the other way round (see DEFAULT_ROTATION_AXES).
    """
    return [
        LimbModel(
            id=limb_id,
            mount_point=Vec3(*mount),
            rotation_axis=Vec3(*DEFAULT_ROTATION_AXES.get(limb_id, DEFAULT_ROTATION_AXIS)),
            zero_direction=Vec3(*DEFAULT_ZERO_DIRECTION),
            length=human.thumb_tip_reach,
            mass=mass_fraction * human.body_mass,
        )
        for limb_id, mount in sorted(DEFAULT_MOUNT_POINTS.items())
    ]
