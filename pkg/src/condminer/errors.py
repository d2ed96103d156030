"""Exception hierarchy shared across the pipeline."""


class DataError(Exception):
    """Bad input data or configuration. The CLI maps these to exit code 1."""


class InvariantViolation(AssertionError):
    """An internal self-check failed. The CLI maps these to exit code 2."""
