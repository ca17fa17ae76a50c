"""
Custom exceptions for scenario loading
"""

from typing import Optional

from ..srl_model.exceptions import SimulationError


class ScenarioError(SimulationError):
    """Base exception for scenario file errors"""

    def __init__(self, message: str, key: Optional[str] = None):
        super().__init__(message)
        self.key = key


class ScenarioFileNotFoundError(ScenarioError):
    """Raised when the scenario file does not exist"""
    pass


class MalformedScenarioError(ScenarioError):
    """Raised when the scenario file is not valid UTF-8 JSON"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(message)
        self.line = line
        self.column = column


class UnknownKeyError(ScenarioError):
    """Raised when the scenario file contains a key the schema does not define"""
    pass


class ScenarioValidationError(ScenarioError):
    """Raised when a scenario value is missing, mistyped or breaks a model invariant"""
    pass
