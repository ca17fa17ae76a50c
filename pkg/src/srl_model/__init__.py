"""
Limb and moment model
Point-mass limb kinematics in the human body frame and the moment they
exert about T10
"""

from .body_model import (
    Vec3,
    HumanModel,
    LimbModel,
    JointState,
    cross,
    rotate_about_axis,
    limb_com_position,
    limb_com_acceleration,
    moment_arm,
    default_human,
    default_limbs,
)
from .dynamics import (
    MomentSample,
    LimbMomentTerms,
    MomentBreakdown,
    LimbGeometry,
    limb_moment,
    moment_breakdown,
    total_moment,
    batch_moment,
    moment_norms,
    norm_percent_body_mass,
)
from .exceptions import SimulationError, InvalidInputError, GridSizeError

__all__ = [
    # Types
    'Vec3',
    'HumanModel',
    'LimbModel',
    'JointState',
    'MomentSample',
    'LimbMomentTerms',
    'MomentBreakdown',
    'LimbGeometry',
    # Kinematics
    'cross',
    'rotate_about_axis',
    'limb_com_position',
    'limb_com_acceleration',
    'moment_arm',
    'default_human',
    'default_limbs',
    # Dynamics
    'limb_moment',
    'moment_breakdown',
    'total_moment',
    'batch_moment',
    'moment_norms',
    'norm_percent_body_mass',
    # Errors
    'SimulationError',
    'InvalidInputError',
    'GridSizeError',
]
