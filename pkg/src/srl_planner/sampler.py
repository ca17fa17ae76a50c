"""
Seeded candidate sampling

The stream comes from numpy's counter-based Philox bit generator, so a seed
reproduces the same candidates on every platform.
"""

import numpy as np

from ..srl_model.exceptions import InvalidInputError
from .config import MAX_SEED


def make_rng(seed: int) -> np.random.Generator:
    """Create the planner's random generator for an unsigned 64-bit seed"""
    if not 0 <= int(seed) <= MAX_SEED:
        raise InvalidInputError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return np.random.Generator(np.random.Philox(int(seed)))


def sample_candidate(rng: np.random.Generator, n_comp_limbs: int, alpha_max: float) -> np.ndarray:
    """
    Draw one vector of compensating accelerations

    Each component is uniform on [-alpha_max, alpha_max]; exactly
    n_comp_limbs draws are consumed, in limb-id order.

    Raises:
        InvalidInputError: If n_comp_limbs < 1
    """
    if n_comp_limbs < 1:
        raise InvalidInputError(f"need at least one compensating limb, got {n_comp_limbs}")
    return rng.uniform(-alpha_max, alpha_max, size=n_comp_limbs)


def sample_candidates(
    rng: np.random.Generator,
    count: int,
    n_comp_limbs: int,
    alpha_max: float,
) -> np.ndarray:
    """
    Draw count candidates at once, shape (count, n_comp_limbs)

    Row k equals what the k-th of count successive sample_candidate calls
    would return.
    """
    if n_comp_limbs < 1:
        raise InvalidInputError(f"need at least one compensating limb, got {n_comp_limbs}")
    if count < 1:
        raise InvalidInputError(f"need at least one candidate, got {count}")
    return rng.uniform(-alpha_max, alpha_max, size=(count, n_comp_limbs))
