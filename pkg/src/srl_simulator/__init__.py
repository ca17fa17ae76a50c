"""
Simulator harness
Scenario files, the fixed-step simulation engine, CSV/summary output and
the command-line front end
"""

from .engine import Scenario, TimeSeries, TimeSeriesEntry, RunSummary, run_scenario
from .comparison import ReductionReport, compare_runs
from .scenario_loader import ScenarioLoader, parse_scenario
from .csv_writer import write_time_series, read_time_series
from .exceptions import (
    ScenarioError,
    ScenarioFileNotFoundError,
    MalformedScenarioError,
    UnknownKeyError,
    ScenarioValidationError,
)

__all__ = [
    # Engine
    'Scenario',
    'TimeSeries',
    'TimeSeriesEntry',
    'RunSummary',
    'run_scenario',
    # Comparison
    'ReductionReport',
    'compare_runs',
    # Scenario files
    'ScenarioLoader',
    'parse_scenario',
    # Output
    'write_time_series',
    'read_time_series',
    # Exceptions
    'ScenarioError',
    'ScenarioFileNotFoundError',
    'MalformedScenarioError',
    'UnknownKeyError',
    'ScenarioValidationError',
]
