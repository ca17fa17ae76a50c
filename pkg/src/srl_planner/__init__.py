"""
Compensation planner
Reference trajectories, the disturbance sweep and the random-search motion
planning layer (with its grid-search oracle)
"""

from .trajectory import (
    ConstantAccelProfile,
    ReferenceTrajectory,
    DeviationReport,
    integrate_constant_alpha,
    disturbance_profile,
    eval_reference,
    deviation,
    build_deviation_report,
)
from .sampler import make_rng, sample_candidate, sample_candidates
from .planner import (
    PlannerConfig,
    CandidatePlan,
    PlanDecision,
    should_activate,
    evaluate_candidate,
    evaluate_candidates,
    select_best,
    reference_decision,
    plan_step,
)
from .grid_search import grid_search_step

__all__ = [
    # Trajectories
    'ConstantAccelProfile',
    'ReferenceTrajectory',
    'DeviationReport',
    'integrate_constant_alpha',
    'disturbance_profile',
    'eval_reference',
    'deviation',
    'build_deviation_report',
    # Sampling
    'make_rng',
    'sample_candidate',
    'sample_candidates',
    # Planning
    'PlannerConfig',
    'CandidatePlan',
    'PlanDecision',
    'should_activate',
    'evaluate_candidate',
    'evaluate_candidates',
    'select_best',
    'reference_decision',
    'plan_step',
    'grid_search_step',
]
