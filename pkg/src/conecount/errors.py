"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds the configured memory/time budget."""


class ConvergenceError(RuntimeError):
    """A quadrature failed to reach the requested tolerance within its panel budget."""
