"""
Dynamics - moment exerted on the wearer by the limb system

M_human = Σ_i r_i × (m_i g + m_i a_h,i), taken about the T10 reference point
in the (non-rotating) body frame. The first term comes from the system's
COM offset, the second from limb motion.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .body_model import (
    HumanModel,
    JointState,
    LimbModel,
    Vec3,
    cross,
    limb_com_acceleration,
    moment_arm,
)
from .config import STANDARD_GRAVITY
from .exceptions import InvalidInputError


@dataclass(frozen=True)
class MomentSample:
    """Moment on the human at one instant (N·m) and its Euclidean norm"""
    time: float
    moment: Vec3
    norm: float

    @classmethod
    def from_moment(cls, time: float, moment: Vec3) -> "MomentSample":
        return cls(time=time, moment=moment, norm=moment.norm())


@dataclass(frozen=True)
class LimbMomentTerms:
    """Gravity and motion contributions of a single limb"""
    limb_id: int
    gravity_term: Vec3
    motion_term: Vec3


@dataclass(frozen=True)
class MomentBreakdown:
    """Per-limb decomposition of the total moment"""
    per_limb: Tuple[LimbMomentTerms, ...]

    def gravity_total(self) -> Vec3:
        total = Vec3.zero()
        for terms in self.per_limb:
            total = total + terms.gravity_term
        return total

    def motion_total(self) -> Vec3:
        total = Vec3.zero()
        for terms in self.per_limb:
            total = total + terms.motion_term
        return total

    def total(self) -> Vec3:
        total = Vec3.zero()
        for terms in self.per_limb:
            total = total + terms.gravity_term + terms.motion_term
        return total


def limb_moment(limb: LimbModel, state: JointState, human: HumanModel) -> Tuple[Vec3, Vec3]:
    """
    Moment contributed by one limb

    Args:
        limb: Limb geometry and mass
        state: Current joint state of the limb
        human: Human model (reference point and gravity)

    Returns:
        Tuple of (gravity_term, motion_term) in N·m
    """
    r = moment_arm(limb, state.angle, human)
    gravity_term = cross(r, human.gravity * limb.mass)
    motion_term = cross(r, limb_com_acceleration(limb, state) * limb.mass)
    return gravity_term, motion_term


def _check_lengths(limbs: Sequence[LimbModel], states: Sequence[JointState]) -> None:
    if len(limbs) != len(states):
        raise InvalidInputError(
            f"got {len(limbs)} limbs but {len(states)} joint states"
        )
    if not limbs:
        raise InvalidInputError("at least one limb is required")


def moment_breakdown(
    limbs: Sequence[LimbModel],
    states: Sequence[JointState],
    human: HumanModel,
) -> MomentBreakdown:
    """Per-limb gravity/motion terms for a configuration"""
    _check_lengths(limbs, states)
    per_limb = []
    for limb, state in zip(limbs, states):
        gravity_term, motion_term = limb_moment(limb, state, human)
        per_limb.append(LimbMomentTerms(limb.id, gravity_term, motion_term))
    return MomentBreakdown(per_limb=tuple(per_limb))


def total_moment(
    limbs: Sequence[LimbModel],
    states: Sequence[JointState],
    human: HumanModel,
    time: float,
) -> MomentSample:
    """
    Total moment on the human at one instant

    Raises:
        InvalidInputError: If limbs and states differ in length or are empty
    """
    return MomentSample.from_moment(time, moment_breakdown(limbs, states, human).total())


@dataclass(frozen=True)
class LimbGeometry:
    """
    Limb models stacked into arrays for batched evaluation.

    Row i of every array belongs to limbs[i]; binormals = axis × zero_direction,
    so the link direction at angle θ is cos θ · zero_direction + sin θ · binormal.
    """
    ids: Tuple[int, ...]
    mounts: np.ndarray
    axes: np.ndarray
    zero_directions: np.ndarray
    binormals: np.ndarray
    lengths: np.ndarray
    masses: np.ndarray

    @classmethod
    def from_limbs(cls, limbs: Sequence[LimbModel]) -> "LimbGeometry":
        if not limbs:
            raise InvalidInputError("at least one limb is required")
        axes = np.array([limb.rotation_axis.to_array() for limb in limbs])
        zero_directions = np.array([limb.zero_direction.to_array() for limb in limbs])
        return cls(
            ids=tuple(limb.id for limb in limbs),
            mounts=np.array([limb.mount_point.to_array() for limb in limbs]),
            axes=axes,
            zero_directions=zero_directions,
            binormals=np.cross(axes, zero_directions),
            lengths=np.array([limb.length for limb in limbs], dtype=float),
            masses=np.array([limb.mass for limb in limbs], dtype=float),
        )

    def __len__(self) -> int:
        return len(self.ids)


def batch_moment(
    geometry: LimbGeometry,
    angles: np.ndarray,
    velocities: np.ndarray,
    accelerations: np.ndarray,
    human: HumanModel,
) -> np.ndarray:
    """
    Evaluate the total moment for K configurations at once

    Args:
        geometry: Stacked limb models (n limbs)
        angles: Joint angles, shape (K, n), rad
        velocities: Joint velocities, shape (K, n), rad/s
        accelerations: Joint accelerations, shape (K, n), rad/s^2
        human: Human model

    Returns:
        Moment vectors, shape (K, 3), N·m
    """
    angles = np.atleast_2d(angles)
    velocities = np.broadcast_to(velocities, angles.shape)
    accelerations = np.broadcast_to(accelerations, angles.shape)
    if angles.shape[1] != len(geometry):
        raise InvalidInputError(
            f"expected {len(geometry)} joint columns, got {angles.shape[1]}"
        )

    cos = np.cos(angles)[..., None]
    sin = np.sin(angles)[..., None]
    rho = geometry.lengths[:, None] * (cos * geometry.zero_directions + sin * geometry.binormals)

    omega = velocities[..., None] * geometry.axes
    alpha = accelerations[..., None] * geometry.axes
    accel = np.cross(alpha, rho) + np.cross(omega, np.cross(omega, rho))

    r = geometry.mounts + rho - human.reference_point.to_array()
    force = geometry.masses[:, None] * (human.gravity.to_array() + accel)
    return np.cross(r, force).sum(axis=1)


def moment_norms(moments: np.ndarray) -> np.ndarray:
    """Euclidean norm of each row of a (K, 3) moment array"""
    return np.sqrt(np.einsum("ij,ij->i", moments, moments))


def norm_percent_body_mass(norm: float, body_mass: float, g0: float = STANDARD_GRAVITY) -> float:
    """Express a moment norm as %BM: 100 · M / (body_mass · g0 · 1 m)"""
    return 100.0 * norm / (body_mass * g0 * 1.0)

