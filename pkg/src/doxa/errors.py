"""Exception types shared across the package."""


class DoxaError(Exception):
    """Base class for every error raised by this package."""


class ParseError(DoxaError):
    """Concrete-syntax error, with 1-based line/column position."""

    def __init__(self, message, line=None, col=None, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        if line is not None:
            message = f"{message} at line {line}, column {col}"
        if self.expected:
            message += " (expected " + " or ".join(self.expected) + ")"
        super().__init__(message)


class StratificationError(DoxaError):
    """An explicit-belief operator was applied to a body containing Box."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{message} at line {line}, column {col}"
        super().__init__(message)


class AgentRangeError(DoxaError):
    """Agent index outside the declared range [1, n_agents]."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{message} at line {line}, column {col}"
        super().__init__(message)


class NotL0Error(DoxaError):
    """A Box-free formula was required."""


class UnknownWorldError(DoxaError):
    """Evaluation was asked at a world that is not in the model."""


class UnknownStateError(DoxaError):
    """Evaluation was asked at a state that is not in the structure."""


class SigmaNotClosedError(DoxaError):
    """Filtration set is not closed under subformulas."""


class ConditionViolationError(DoxaError):
    """A model failed its well-formedness conditions."""


class NotConsistentError(DoxaError):
    """A belief model failed the consistency requirement."""


class NotSerialError(DoxaError):
    """An accessibility relation is missing a successor for some state."""


class ModelFormatError(DoxaError):
    """A model description (typically JSON) is malformed."""


class ResourceLimitError(DoxaError):
    """A configured search budget was exceeded before a verdict was reached."""
