"""
Exception hierarchy shared by the library and the command line front end.
"""


class LevikitError(Exception):
    """Base class for all levikit errors."""


class InvalidInputError(LevikitError):
    """Malformed input, axiom violation or a precondition that does not hold."""


class CapExceededError(InvalidInputError):
    """An enumeration would exceed a configured cap."""


class ClaimFalsifiedError(LevikitError):
    """A cited structural theorem failed on concrete data."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report or {}
