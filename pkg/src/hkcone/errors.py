class PreconditionError(ValueError):
    """An operation was called on input that violates its contract."""
