"""
Custom exceptions for the limb and moment model
"""


class SimulationError(Exception):
    """Base exception for simulator errors"""
    pass


class InvalidInputError(SimulationError):
    """Raised when an operation's precondition or a model invariant is violated"""
    pass


class GridSizeError(InvalidInputError):
    """Raised when an exhaustive grid search would exceed the size guard"""
    pass
