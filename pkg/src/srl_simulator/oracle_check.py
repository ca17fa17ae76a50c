"""
Random search vs. exhaustive grid search on a single compensating limb

For each seed, the best-of-N random candidate is compared with a dense grid
at a handful of states along the uncompensated run. The check passes when
every random-search cost is within the tolerance of the grid cost.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

from ..srl_planner.grid_search import grid_search_step
from ..srl_planner.planner import plan_step
from ..srl_planner.sampler import make_rng
from .engine import Scenario, run_scenario

logger = logging.getLogger(__name__)

# Fractions of the run at which both searches are compared
CHECK_FRACTIONS = (0.0, 0.25, 0.5, 0.75)


@dataclass(frozen=True)
class OracleResult:
    """Random vs. grid cost at one state"""
    seed: int
    time: float
    random_cost: Optional[float]
    grid_cost: Optional[float]

    @property
    def gap(self) -> float:
        """Relative excess of the random-search cost over the grid cost"""
        if self.grid_cost is None:
            return 0.0
        if self.random_cost is None:
            return float("inf")
        if self.grid_cost == 0:
            return self.random_cost
        return (self.random_cost - self.grid_cost) / self.grid_cost


@dataclass(frozen=True)
class OracleReport:
    results: List[OracleResult]
    tolerance: float

    @property
    def worst_gap(self) -> float:
        return max((result.gap for result in self.results), default=0.0)

    @property
    def passed(self) -> bool:
        return self.worst_gap <= self.tolerance


def run_oracle_check(
    scenario: Scenario,
    seeds: Sequence[int],
    grid_points: int,
    iterations: int,
    tolerance: float,
) -> OracleReport:
    """
    Compare random search against grid search

    Args:
        scenario: Scenario with one compensating limb
        seeds: Planner seeds to try
        grid_points: Grid points per limb
        iterations: Random candidates per loop
        tolerance: Accepted relative cost gap (0.02 = 2 %)

    Returns:
        OracleReport with one result per (seed, check time)
    """
    scenario = scenario.with_planner(iterations=iterations)
    coasting = scenario.with_compensation(False)
    series, _ = run_scenario(coasting)
    ref = scenario.reference()
    limbs = list(scenario.limbs)
    steps = len(series) - 1
    check_steps = sorted({min(int(fraction * steps), steps - 1) for fraction in CHECK_FRACTIONS})

    grid_costs = {}
    for step in check_steps:
        entry = series.entries[step]
        decision = grid_search_step(
            entry.states, limbs, scenario.human, ref, entry.time, scenario.planner, grid_points,
        )
        grid_costs[step] = decision.chosen.cost

    results = []
    for seed in seeds:
        config = scenario.with_seed(seed).planner
        rng = make_rng(seed)
        for step in check_steps:
            entry = series.entries[step]
            decision = plan_step(
                rng, entry.states, limbs, scenario.human, ref, entry.time, config, force_active=True,
            )
            result = OracleResult(seed, entry.time, decision.chosen.cost, grid_costs[step])
            logger.debug(f"seed {seed} t={entry.time:.3f}s gap {result.gap:.3e}")
            results.append(result)

    report = OracleReport(results=results, tolerance=tolerance)
    logger.info(
        f"Oracle check on {scenario.name}: {len(results)} comparisons, "
        f"worst gap {report.worst_gap:.3e}, {'passed' if report.passed else 'FAILED'}"
    )
    return report


def format_oracle_report(report: OracleReport) -> str:
    """Text block for stdout"""
    lines = ["=== oracle-check: random search vs grid search ==="]
    for result in report.results:
        random_cost = "fallback" if result.random_cost is None else f"{result.random_cost:.9f}"
        grid_cost = "fallback" if result.grid_cost is None else f"{result.grid_cost:.9f}"
        lines.append(
            f"seed {result.seed:>3}  t={result.time:.2f}s  random {random_cost}  "
            f"grid {grid_cost}  gap {100.0 * result.gap:.5f} %"
        )
    lines.append(f"worst gap: {100.0 * report.worst_gap:.5f} % (tolerance {100.0 * report.tolerance:g} %)")
    lines.append(f"passed: {report.passed}")
    return "\n".join(lines)
