"""Exception hierarchy shared by all modules.

Exit-code mapping in the CLI: DomainError -> 1, SchemaError -> 2,
HypothesisFlag -> 3.
"""


class KazhlipError(Exception):
    pass


class DomainError(KazhlipError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class SchemaError(KazhlipError, ValueError):
    """An input file or JSON object does not match the expected schema."""

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ResourceLimitError(KazhlipError, RuntimeError):
    """An enumeration exceeded its configured cap."""


class HypothesisFlag(KazhlipError, RuntimeError):
    """A computation ran, but a hypothesis needed to interpret the result
    as a certified bound does not hold (e.g. a global fixed point exists)."""
