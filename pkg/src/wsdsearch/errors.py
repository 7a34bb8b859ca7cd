"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when an argument violates a documented precondition."""


class ConfigError(ValueError):
    """Raised for unusable experiment or tuning configurations."""


class CorpusParseError(ValueError):
    """Raised for malformed corpus or assignment files.

    ``line`` is the 1-based line number of the offending line, when known.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BudgetExhausted(Exception):
    """Signal raised by a scorer once its call budget (or target) is reached.

    Algorithms treat it as their stop condition.  The scorer that raised it
    keeps its best configuration and trace intact.
    """
