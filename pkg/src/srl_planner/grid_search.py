"""
Exhaustive grid search over compensating accelerations

Used as an oracle for the random-search planner: same cost, same
feasibility rule, same tie-break, deterministic candidate set.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from ..srl_model.body_model import HumanModel, JointState, LimbModel
from ..srl_model.dynamics import LimbGeometry
from ..srl_model.exceptions import GridSizeError, InvalidInputError
from .config import GRID_CHUNK_SIZE, MAX_GRID_SIZE
from .planner import PlanDecision, PlannerConfig, evaluate_candidates, select_best
from .trajectory import ReferenceTrajectory

logger = logging.getLogger(__name__)


def grid_search_step(
    current_states: Sequence[JointState],
    limbs: Sequence[LimbModel],
    human: HumanModel,
    ref: ReferenceTrajectory,
    t: float,
    config: PlannerConfig,
    grid_points_per_limb: int,
    geometry: Optional[LimbGeometry] = None,
    chunk_size: int = GRID_CHUNK_SIZE,
) -> PlanDecision:
    """
    Evaluate every point of a uniform grid on [-alpha_max, alpha_max]^m

    Grid points are enumerated in row-major order (first compensating limb
    varies slowest); that order is the tie-break order.

    Raises:
        InvalidInputError: If fewer than 2 points per limb are requested
        GridSizeError: If the grid would exceed MAX_GRID_SIZE candidates
    """
    if grid_points_per_limb < 2:
        raise InvalidInputError(
            f"grid search needs at least 2 points per limb, got {grid_points_per_limb}"
        )
    n_comp = len(ref.compensating_ids)
    if n_comp < 1:
        raise InvalidInputError("grid search needs at least one compensating limb")
    total = grid_points_per_limb ** n_comp
    if total > MAX_GRID_SIZE:
        raise GridSizeError(
            f"grid of {grid_points_per_limb}^{n_comp} = {total} points exceeds {MAX_GRID_SIZE}"
        )
    if geometry is None:
        geometry = LimbGeometry.from_limbs(limbs)

    axis = np.linspace(-config.alpha_max, config.alpha_max, grid_points_per_limb)
    shape = (grid_points_per_limb,) * n_comp
    logger.debug(f"Grid search over {total} candidates at t={t:.3f}s")

    best: Optional[PlanDecision] = None
    n_feasible = 0
    evaluated = []
    for start in range(0, total, chunk_size):
        flat = np.arange(start, min(start + chunk_size, total))
        alphas = axis[np.stack(np.unravel_index(flat, shape), axis=1)]
        costs, feasible = evaluate_candidates(
            alphas, current_states, limbs, human, ref, t, config, geometry=geometry,
        )
        chunk = select_best(alphas, costs, feasible,
                            keep_evaluated=config.keep_evaluated, index_offset=start)
        n_feasible += chunk.n_feasible
        if chunk.evaluated:
            evaluated.extend(chunk.evaluated)
        # Strict comparison keeps the earliest chunk on ties
        if not chunk.fallback and (best is None or chunk.chosen.cost < best.chosen.cost):
            best = chunk
        elif best is None and start + chunk_size >= total:
            best = chunk

    return PlanDecision(
        chosen=best.chosen,
        activated=True,
        n_feasible=n_feasible,
        fallback=best.fallback,
        evaluated=tuple(evaluated) if config.keep_evaluated else None,
    )
