"""
Default parameters for the human and limb models

Body frame: x forward, y left, z up, origin at the center of T10.
Values are stand-ins for 50th-percentile anthropometry; every one of them
can be overridden from a scenario file.
"""

# Standard gravity (m/s^2), also used as g0 for %BM reporting
STANDARD_GRAVITY = 9.80665

DEFAULT_GRAVITY = (0.0, 0.0, -STANDARD_GRAVITY)

# Accepted gravity magnitude unless a model explicitly opts out
GRAVITY_NORM_RANGE = (9.0, 10.5)

# Anthropometrics
DEFAULT_BODY_MASS_KG = 80.0
DEFAULT_THUMB_TIP_REACH_M = 0.80
DEFAULT_REFERENCE_POINT = (0.0, 0.0, 0.0)

# Each robotic limb weighs this fraction of the body mass
DEFAULT_LIMB_MASS_FRACTION = 0.10

# Limb id -> mount point (m). Limbs #1/#3 on the left, #2/#4 on the right.
DEFAULT_MOUNT_POINTS = {
    1: (0.0, 0.25, 0.25),
    2: (0.0, -0.25, 0.25),
    3: (0.0, 0.25, -0.25),
    4: (0.0, -0.25, -0.25),
}

DEFAULT_ROTATION_AXIS = (0.0, 0.0, 1.0)

# Limb id -> joint axis. Limb #2 turns about -z so its positive sweep carries it
# outward and toward the back of the body.
DEFAULT_ROTATION_AXES = {
    1: (0.0, 0.0, 1.0),
    2: (0.0, 0.0, -1.0),
    3: (0.0, 0.0, 1.0),
    4: (0.0, 0.0, 1.0),
}
DEFAULT_ZERO_DIRECTION = (1.0, 0.0, 0.0)

# Tolerance on unit-vector and orthogonality invariants
UNIT_TOLERANCE = 1e-9
