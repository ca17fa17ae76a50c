"""
Runtime settings for the simulator harness

Only where output goes and how verbose it is can be configured here.
Every value that affects simulation results comes from the scenario file
or the --seed flag.
"""
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent

# Bundled study cases, in report order
BUNDLED_CASES = ["case_1_1", "case_1_2", "case_2_1", "case_2_2"]

# (compensated, uncompensated) pairs reported by `compare --all`
BUNDLED_PAIRS = [("case_1_1", "case_1_2"), ("case_2_1", "case_2_2")]

ORACLE_SCENARIO = "oracle_single_limb"

# Disturbance maneuver: limb #2 sweeps 0 -> 90 deg in 2.5 s from rest
DEFAULT_DISTURBANCE_LIMB_ID = 2
DEFAULT_DISTURBANCE_ANGLE_DEG = 90.0
DEFAULT_DISTURBANCE_DURATION_S = 2.5

# Significant digits of every float written to the time-series CSV
CSV_SIGNIFICANT_DIGITS = 15


class SimulatorSettings(BaseSettings):
    """Harness settings loaded from SRLSIM_* environment variables or .env"""

    model_config = SettingsConfigDict(
        env_prefix="SRLSIM_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Directories
    SCENARIOS_DIR: str = str(PROJECT_ROOT / "config" / "scenarios")
    OUTPUT_DIR: str = "./runs"
    LOGS_DIR: str = "./logs"

    # Logging
    LOG_LEVEL: str = "INFO"

    # Concurrency for `compare --all`
    MAX_PARALLEL_CASES: int = Field(4, gt=0)

    def scenario_path(self, name: str) -> Path:
        """Path of a bundled scenario by name"""
        return Path(self.SCENARIOS_DIR) / f"{name}.json"


# Global settings instance
settings = SimulatorSettings()
