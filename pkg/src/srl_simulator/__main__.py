"""
CLI entry point for the simulator

Usage:
    python -m src.srl_simulator run --config PATH --seed U64 --out PATH [--no-compensation] [--oracle N]
    python -m src.srl_simulator compare (--config PATH | --all) --seed U64 [--out-dir DIR]
    python -m src.srl_simulator oracle-check [--config PATH] [--seeds 0..9]

Examples:
    python -m src.srl_simulator run --config config/scenarios/case_1_1.json --seed 42 --out runs/case_1_1.csv
    python -m src.srl_simulator compare --all --seed 42
    python -m src.srl_simulator oracle-check
"""
import sys

from .cli import main


if __name__ == "__main__":
    sys.exit(main())
