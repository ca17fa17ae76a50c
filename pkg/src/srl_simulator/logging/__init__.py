"""
Structured logging for simulation runs
"""
from .structured_logger import RunLogger

__all__ = ["RunLogger"]
