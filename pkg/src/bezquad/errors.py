"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Bad geometry, bad file content, or arguments outside a contract.

    ``path`` optionally locates the offending element inside a document,
    e.g. ``loops[0][2].weights[1]``.
    """

    def __init__(self, message, path=None):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class ConditioningError(RuntimeError):
    """A moment or collocation system was too ill-conditioned to trust."""

    def __init__(self, message, condition_estimate=None):
        self.condition_estimate = condition_estimate
        if condition_estimate is not None:
            message = f"{message} (condition estimate {condition_estimate:.3e})"
        super().__init__(message)


class QuadratureError(RuntimeError):
    """Numeric failure while building or applying a rule."""


class ParseError(ValueError):
    """Malformed integrand expression; the message carries an offset."""


class EvalError(RuntimeError):
    """Domain violation while evaluating an expression at a point."""
