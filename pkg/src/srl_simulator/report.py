"""
Plain-text summary blocks printed on stdout
"""

import math
from typing import List

from .comparison import ReductionReport
from .engine import RunSummary, Scenario

PCT_BM_CAVEAT = (
    "norm_pct_bm = 100 * Mnorm / (body_mass * g0 * 1 m); "
    "a normalization convention of this tool, %BM has no standard definition for moments"
)


def provenance_banner(scenario: Scenario) -> str:
    """Every default the scenario file left out, one line each"""
    lines = [f"# scenario {scenario.name}: {len(scenario.defaults_applied)} defaults applied"]
    lines.extend(f"#   {key} = {value}" for key, value in scenario.defaults_applied)
    return "\n".join(lines)


def format_summary(summary: RunSummary) -> str:
    """Summary block of one run"""
    report = summary.deviation_report
    worst_deg = math.degrees(report.worst)
    limit_deg = math.degrees(report.limit)
    status = "VIOLATED" if report.violated else "ok"
    lines: List[str] = [
        f"=== {summary.label} (seed {summary.seed}, "
        f"compensation {'on' if summary.compensation_enabled else 'off'}) ===",
        f"steps:               {summary.step_count}",
        f"max |M|:             {summary.max_norm:.6f} N·m  "
        f"(norm_pct_bm {summary.norm_pct_bm(summary.max_norm):.4f})",
        f"mean |M|:            {summary.mean_norm:.6f} N·m  "
        f"(norm_pct_bm {summary.norm_pct_bm(summary.mean_norm):.4f})",
        f"mean gravity term:   {summary.mean_gravity_norm:.6f} N·m",
        f"mean motion term:    {summary.mean_motion_norm:.6f} N·m",
        f"deviation max:       {worst_deg:.6f} deg (limit {limit_deg:g} deg, {status})",
    ]
    for limb_id, value in sorted(report.max_deviation.items()):
        lines.append(f"  limb {limb_id}:            {math.degrees(value):.6f} deg")
    lines.extend([
        f"planner active:      {summary.activated_count} steps",
        f"fallback_count:      {summary.fallback_count}",
        f"note: {PCT_BM_CAVEAT}",
    ])
    return "\n".join(lines)


def format_reduction(label: str, reduction: ReductionReport) -> str:
    """Reduction block for a compensated/uncompensated pair"""
    return "\n".join([
        f"=== reduction: {label} ===",
        f"max |M| reduction:   {reduction.delta_max:.6f} N·m ({reduction.pct_max:.3f} %)",
        f"mean |M| reduction:  {reduction.delta_mean:.6f} N·m ({reduction.pct_mean:.3f} %)",
        f"mean reduction > 0: {reduction.mean_reduced}",
    ])
