"""
Compensated vs. uncompensated run comparison
"""

from dataclasses import dataclass

from .engine import RunSummary


@dataclass(frozen=True)
class ReductionReport:
    """
    Moment reduction achieved by compensation.

    Deltas are (without - with) in N·m, so positive means the planner helped.
    Percentages are relative to the uncompensated value and are 0 when that
    value is 0.
    """
    delta_max: float
    delta_mean: float
    pct_max: float
    pct_mean: float

    @property
    def mean_reduced(self) -> bool:
        return self.delta_mean > 0


def _percent(delta: float, baseline: float) -> float:
    if baseline == 0:
        return 0.0
    return 100.0 * delta / baseline


def compare_runs(with_comp: RunSummary, without_comp: RunSummary) -> ReductionReport:
    """
    Reduction of max and mean moment norm from the uncompensated run to the
    compensated one
    """
    delta_max = without_comp.max_norm - with_comp.max_norm
    delta_mean = without_comp.mean_norm - with_comp.mean_norm
    return ReductionReport(
        delta_max=delta_max,
        delta_mean=delta_mean,
        pct_max=_percent(delta_max, without_comp.max_norm),
        pct_mean=_percent(delta_mean, without_comp.mean_norm),
    )
