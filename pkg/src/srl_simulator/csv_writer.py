"""
Time-series CSV output

One row per logged control step:
t_s, theta<id>_deg..., omega<id>_degs..., Mx_Nm, My_Nm, Mz_Nm, Mnorm_Nm, activated, fallback
Floats carry 15 significant digits; flags are 0/1.
"""

import logging
from pathlib import Path
from typing import List, Union

import numpy as np
import pandas as pd

from .config import CSV_SIGNIFICANT_DIGITS
from .engine import TimeSeries

logger = logging.getLogger(__name__)

MOMENT_COLUMNS = ["Mx_Nm", "My_Nm", "Mz_Nm", "Mnorm_Nm"]
FLAG_COLUMNS = ["activated", "fallback"]


def csv_columns(limb_ids: List[int]) -> List[str]:
    """Column order for the given limbs"""
    return (
        ["t_s"]
        + [f"theta{limb_id}_deg" for limb_id in limb_ids]
        + [f"omega{limb_id}_degs" for limb_id in limb_ids]
        + MOMENT_COLUMNS
        + FLAG_COLUMNS
    )


def time_series_frame(series: TimeSeries) -> pd.DataFrame:
    """Tabulate a time series in CSV units (degrees, deg/s, N·m)"""
    limb_ids = list(series.limb_ids)
    angles = np.degrees(series.angles)
    velocities = np.degrees(series.velocities)
    moments = np.array([entry.moment.moment.to_array() for entry in series.entries])

    data = {"t_s": series.times}
    for column, limb_id in enumerate(limb_ids):
        data[f"theta{limb_id}_deg"] = angles[:, column]
    for column, limb_id in enumerate(limb_ids):
        data[f"omega{limb_id}_degs"] = velocities[:, column]
    data["Mx_Nm"] = moments[:, 0]
    data["My_Nm"] = moments[:, 1]
    data["Mz_Nm"] = moments[:, 2]
    data["Mnorm_Nm"] = series.norms
    data["activated"] = [int(entry.activated) for entry in series.entries]
    data["fallback"] = [int(entry.fallback) for entry in series.entries]
    return pd.DataFrame(data, columns=csv_columns(limb_ids))


def write_time_series(series: TimeSeries, path: Union[str, Path]) -> Path:
    """
    Write a time series to CSV

    Args:
        series: Logged run
        path: Output file; parent directories are created

    Returns:
        The written path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = time_series_frame(series)
    frame.to_csv(
        path,
        index=False,
        float_format=f"%.{CSV_SIGNIFICANT_DIGITS}g",
        lineterminator="\n",
    )
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def read_time_series(path: Union[str, Path]) -> pd.DataFrame:
    """Load a CSV written by write_time_series"""
    return pd.read_csv(path)
