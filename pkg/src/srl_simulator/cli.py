"""
Command-line front end

Subcommands:
    run           simulate one scenario, write its time-series CSV, print a summary
    compare       simulate a scenario with and without compensation (or all
                  bundled cases with --all) and print the moment reduction
    oracle-check  compare random search against an exhaustive grid search

Summaries go to stdout, diagnostics to stderr. Exit code 0 on success,
1 on any error (or a failed oracle check), 2 on bad usage.
"""

import argparse
import logging
import sys
import uuid
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from ..srl_model.exceptions import SimulationError
from ..srl_planner.config import ITERATIONS, MAX_SEED
from .comparison import compare_runs
from .config import BUNDLED_CASES, BUNDLED_PAIRS, ORACLE_SCENARIO, settings
from .csv_writer import write_time_series
from .engine import RunSummary, Scenario, TimeSeries, run_scenario
from .logging import RunLogger
from .oracle_check import format_oracle_report, run_oracle_check
from .report import format_reduction, format_summary, provenance_banner
from .scenario_loader import parse_scenario

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_GRID_POINTS = 10_001
DEFAULT_ORACLE_TOLERANCE = 0.02
DEFAULT_ORACLE_SEEDS = "0..9"


def seed_type(text: str) -> int:
    """argparse type for unsigned 64-bit seeds"""
    try:
        seed = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= seed <= MAX_SEED:
        raise argparse.ArgumentTypeError(f"seed must be in [0, 2^64 - 1], got {seed}")
    return seed


def parse_seeds(text: str) -> List[int]:
    """Parse "0..9" (inclusive range) or "1,5,7" into a seed list"""
    if ".." in text:
        low, high = text.split("..", 1)
        seeds = list(range(seed_type(low), seed_type(high) + 1))
    else:
        seeds = [seed_type(part) for part in text.split(",") if part.strip()]
    if not seeds:
        raise argparse.ArgumentTypeError(f"empty seed list {text!r}")
    return seeds


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _run_logged(
    scenario: Scenario,
    config_path: Path,
    logs_dir: str,
    out_path: Optional[Path] = None,
    oracle_grid_points: Optional[int] = None,
) -> Tuple[TimeSeries, RunSummary]:
    """Run one scenario under its own RunLogger, optionally writing the CSV"""
    mode = "comp" if scenario.compensation_enabled else "nocomp"
    run_logger = RunLogger(f"{scenario.name}_{mode}_{uuid.uuid4().hex[:8]}", logs_dir)
    try:
        run_logger.record_input(str(config_path))
        series, summary = run_scenario(
            scenario, oracle_grid_points=oracle_grid_points, run_logger=run_logger,
        )
        if out_path is not None:
            write_time_series(series, out_path)
            run_logger.record_output(str(out_path), row_count=len(series))
        run_logger.finalize(success=True)
        return series, summary
    except Exception as e:
        run_logger.finalize(success=False, error_message=str(e))
        raise


def cmd_run(args: argparse.Namespace) -> int:
    config_path = Path(args.config)
    scenario = parse_scenario(config_path, seed=args.seed)
    if args.no_compensation:
        scenario = scenario.with_compensation(False)

    _, summary = _run_logged(
        scenario, config_path, args.log_dir, out_path=Path(args.out),
        oracle_grid_points=args.oracle,
    )
    print(provenance_banner(scenario))
    print(format_summary(summary))
    return 0


def _compare_one(args: argparse.Namespace) -> int:
    config_path = Path(args.config)
    scenario = parse_scenario(config_path, seed=args.seed)
    out_dir = Path(args.out_dir) if args.out_dir else None

    summaries = {}
    for enabled in (True, False):
        variant = scenario.with_compensation(enabled)
        out_path = None
        if out_dir is not None:
            out_path = out_dir / f"{scenario.name}_{'comp' if enabled else 'nocomp'}.csv"
        _, summaries[enabled] = _run_logged(variant, config_path, args.log_dir, out_path=out_path)

    print(provenance_banner(scenario))
    print(format_summary(summaries[True]))
    print(format_summary(summaries[False]))
    print(format_reduction(f"{scenario.name} with vs without compensation",
                           compare_runs(summaries[True], summaries[False])))
    return 0


def _compare_all(args: argparse.Namespace) -> int:
    out_dir = Path(args.out_dir or settings.OUTPUT_DIR)
    paths = {name: settings.scenario_path(name) for name in BUNDLED_CASES}
    scenarios = {name: parse_scenario(path, seed=args.seed) for name, path in paths.items()}

    logger.info(f"Running {len(scenarios)} bundled cases on {settings.MAX_PARALLEL_CASES} workers")
    with ThreadPoolExecutor(
        max_workers=settings.MAX_PARALLEL_CASES,
        thread_name_prefix="case_worker",
    ) as executor:
        futures = {
            name: executor.submit(
                _run_logged, scenario, paths[name], args.log_dir, out_dir / f"{name}.csv",
            )
            for name, scenario in scenarios.items()
        }
        summaries: Dict[str, RunSummary] = {
            name: futures[name].result()[1] for name in BUNDLED_CASES
        }

    for name in BUNDLED_CASES:
        print(format_summary(summaries[name]))
    for with_name, without_name in BUNDLED_PAIRS:
        print(format_reduction(f"{with_name} vs {without_name}",
                               compare_runs(summaries[with_name], summaries[without_name])))
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    if args.all:
        return _compare_all(args)
    return _compare_one(args)


def cmd_oracle_check(args: argparse.Namespace) -> int:
    config_path = Path(args.config) if args.config else settings.scenario_path(ORACLE_SCENARIO)
    scenario = parse_scenario(config_path)
    report = run_oracle_check(
        scenario,
        seeds=args.seeds,
        grid_points=args.grid_points,
        iterations=args.iterations,
        tolerance=args.tolerance,
    )
    print(format_oracle_report(report))
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m src.srl_simulator",
        description="Moment-compensation simulator for wearable robotic limbs",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    run = subparsers.add_parser("run", help="Simulate one scenario and write its time series")
    run.add_argument("--config", required=True, help="Scenario JSON file")
    run.add_argument("--seed", type=seed_type, required=True, help="Planner seed (u64)")
    run.add_argument("--out", required=True, help="Time-series CSV to write")
    run.add_argument("--no-compensation", action="store_true", help="Disable the planning layer")
    run.add_argument("--oracle", type=positive_int, metavar="GRID_POINTS",
                     help="Replace random search with a grid of GRID_POINTS per limb")
    run.add_argument("--log-dir", default=settings.LOGS_DIR, help="Structured run log directory")
    run.set_defaults(handler=cmd_run)

    compare = subparsers.add_parser("compare", help="Report the reduction achieved by compensation")
    source = compare.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", help="Scenario JSON file")
    source.add_argument("--all", action="store_true", help="Run every bundled case")
    compare.add_argument("--seed", type=seed_type, required=True, help="Planner seed (u64)")
    compare.add_argument("--out-dir", help="Directory for time-series CSVs")
    compare.add_argument("--log-dir", default=settings.LOGS_DIR, help="Structured run log directory")
    compare.set_defaults(handler=cmd_compare)

    oracle = subparsers.add_parser("oracle-check", help="Random search vs. grid search gap")
    oracle.add_argument("--config", help=f"Scenario JSON file (default: bundled {ORACLE_SCENARIO})")
    oracle.add_argument("--seeds", type=parse_seeds, default=parse_seeds(DEFAULT_ORACLE_SEEDS),
                        help=f"Seeds as 'a..b' or 'a,b,c' (default {DEFAULT_ORACLE_SEEDS})")
    oracle.add_argument("--grid-points", type=positive_int, default=DEFAULT_ORACLE_GRID_POINTS,
                        help="Grid points per limb")
    oracle.add_argument("--iterations", type=positive_int, default=ITERATIONS,
                        help="Random candidates per loop")
    oracle.add_argument("--tolerance", type=float, default=DEFAULT_ORACLE_TOLERANCE,
                        help="Accepted relative cost gap")
    oracle.set_defaults(handler=cmd_oracle_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=settings.LOG_LEVEL,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    try:
        return args.handler(args)
    except (SimulationError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
