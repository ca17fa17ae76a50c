"""
Structured JSON Logger for simulation runs

Provides per-run logging with timestamps, stage tracking, and metadata.
Logs are written to {logs_dir}/{run_id}/run.json
"""
import hashlib
import json
import threading
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional


class LogLevel(str, Enum):
    """Log levels for structured logging"""
    INFO = "info"
    WARNING = "warning"


@dataclass
class LogEntry:
    """A single log entry with timestamp and metadata"""
    timestamp: str
    level: str
    step: str
    message: str
    metadata: Optional[Dict[str, Any]] = None
    duration_ms: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary, excluding None values"""
        result = {
            "timestamp": self.timestamp,
            "level": self.level,
            "step": self.step,
            "message": self.message,
        }
        if self.metadata:
            result["metadata"] = self.metadata
        if self.duration_ms is not None:
            result["duration_ms"] = self.duration_ms
        return result


class RunLogger:
    """
    Per-run structured JSON logger.

    Entries are buffered in memory and flushed to run.json at the end of
    every stage and on finalize, so planner events inside the stepping loop
    cost no file I/O. Thread-safe.
    """

    def __init__(self, run_id: str, logs_dir: str = "./logs"):
        """
        Initialize run logger.

        Args:
            run_id: Unique run identifier
            logs_dir: Base directory for run logs
        """
        self.run_id = run_id
        self.log_dir = Path(logs_dir) / run_id
        self.log_file = self.log_dir / "run.json"
        self._lock = threading.Lock()
        self._entries: List[LogEntry] = []
        self._stage_timers: Dict[str, float] = {}
        self._data: Dict[str, Any] = {
            "run_id": run_id,
            "started_at": self._now(),
            "logs": [],
        }
        self._started = time.monotonic()

        self.log_dir.mkdir(parents=True, exist_ok=True)
        self.flush()

    def _now(self) -> str:
        """Get current timestamp in ISO format with timezone"""
        return datetime.now(timezone.utc).isoformat()

    def flush(self) -> None:
        """Write buffered entries to the log file"""
        with self._lock:
            self._data["logs"].extend(entry.to_dict() for entry in self._entries)
            self._entries.clear()
            self._data["last_updated"] = self._now()
            with open(self.log_file, 'w') as f:
                json.dump(self._data, f, indent=2, default=str)

    def log(
        self,
        level: LogLevel,
        step: str,
        message: str,
        metadata: Optional[Dict[str, Any]] = None,
        duration_ms: Optional[int] = None
    ) -> None:
        """
        Buffer a message with timestamp and optional metadata.

        Args:
            level: Log level (info, warning)
            step: Step identifier (e.g., "scenario", "stepping", "planner")
            message: Human-readable message
            metadata: Optional dictionary of additional data
            duration_ms: Optional duration in milliseconds
        """
        entry = LogEntry(
            timestamp=self._now(),
            level=level.value,
            step=step,
            message=message,
            metadata=metadata,
            duration_ms=duration_ms
        )
        with self._lock:
            self._entries.append(entry)

    def info(self, step: str, message: str, metadata: Optional[Dict[str, Any]] = None) -> None:
        """Log an info message"""
        self.log(LogLevel.INFO, step, message, metadata)

    def warning(self, step: str, message: str, metadata: Optional[Dict[str, Any]] = None) -> None:
        """Log a warning message"""
        self.log(LogLevel.WARNING, step, message, metadata)

    def stage_start(self, stage_name: str, metadata: Optional[Dict[str, Any]] = None) -> None:
        """Mark the start of a run stage"""
        self._stage_timers[stage_name] = time.monotonic()
        self.info(step=stage_name, message=f"Starting {stage_name}", metadata=metadata)

    def stage_end(self, stage_name: str, metadata: Optional[Dict[str, Any]] = None) -> None:
        """Mark the end of a run stage and flush"""
        duration_ms = None
        if stage_name in self._stage_timers:
            duration_ms = int((time.monotonic() - self._stage_timers.pop(stage_name)) * 1000)

        self.log(
            level=LogLevel.INFO,
            step=stage_name,
            message=f"Stage {stage_name} completed",
            metadata=metadata,
            duration_ms=duration_ms
        )
        self.flush()

    def planner_fallback(self, t: float, iterations: int) -> None:
        """Record a control loop in which no candidate was feasible"""
        self.warning(
            step="planner",
            message=f"No feasible candidate at t={t:.3f}s, coasting",
            metadata={"t_s": t, "iterations": iterations}
        )

    def record_input(self, file_path: str) -> None:
        """Record the scenario file and its content hash"""
        path = Path(file_path)
        file_hash = hashlib.sha256(path.read_bytes()).hexdigest() if path.exists() else None
        self.info(
            step="input",
            message=f"Scenario file: {path.name}",
            metadata={"file_path": str(path), "sha256": file_hash}
        )

    def record_output(self, file_path: str, row_count: Optional[int] = None) -> None:
        """Record a written output file"""
        metadata = {"file_path": str(file_path)}
        if row_count is not None:
            metadata["row_count"] = row_count
        self.info(step="output", message="Time series written", metadata=metadata)

    def finalize(self, success: bool = True, error_message: Optional[str] = None) -> None:
        """
        Finalize the log file with completion status.

        Args:
            success: Whether the run completed successfully
            error_message: Optional error message if failed
        """
        with self._lock:
            self._data["completed_at"] = self._now()
            self._data["success"] = success
            self._data["total_duration_ms"] = int((time.monotonic() - self._started) * 1000)
            if error_message:
                self._data["error"] = error_message
        self.flush()
