"""
Default parameters for the compensation planner

Angles here are in degrees as they appear in scenario files; they are
converted to radians once when a PlannerConfig is built.
"""

# Candidate accelerations are drawn uniformly from ±ALPHA_MAX_DEG_S2
ALPHA_MAX_DEG_S2 = 20.0

# Compensating limbs may not leave their original trajectory by more than this
DEVIATION_LIMIT_DEG = 20.0

# Random candidates evaluated per control loop
ITERATIONS = 3000

# Control period (s); 250 planning loops over the 2.5 s disturbance
CONTROL_DT_S = 0.01

# Look-ahead used to score a candidate, in control periods
HORIZON_STEPS = 1

# Predicted moment-norm increase (N·m) that activates the planner
ACTIVATION_THRESHOLD_NM = 0.0

# Fraction of the spare acceleration budget assumed available for braking
# when checking that a candidate can still stop inside the deviation band.
# 0 disables the check.
BRAKING_FRACTION = 0.5

# Keep the planner active for the rest of a run once it has fired
LATCH_ACTIVATION = True

# Exhaustive grid search refuses grids larger than this
MAX_GRID_SIZE = 10_000_000

# Candidates evaluated per batch during grid search
GRID_CHUNK_SIZE = 100_000

# Seeds are unsigned 64-bit integers
MAX_SEED = 2**64 - 1
