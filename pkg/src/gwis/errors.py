"""Exception hierarchy shared by all gwis modules."""


class GwisError(Exception):
    """Base class for every error raised by this package."""


class InvalidTermError(GwisError):
    """A term breaks a structural invariant (unpaired dummy, duplicate x/i/j, ...)."""

    def __init__(self, violations, position=None):
        self.violations = list(violations)
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"invalid term{where}: " + "; ".join(self.violations))


class ParseError(GwisError):
    """Source text does not match the grammar."""

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(expected)
        hint = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at position {position}{hint}")


class MissingUnknownError(GwisError):
    """An evaluation was asked for without a value for some unknown."""

    def __init__(self, index):
        self.index = index
        super().__init__(f"no value supplied for unknown c{index}")


class DataIntegrityError(GwisError):
    """An embedded or user-supplied data file fails its consistency checks."""


class SolveError(GwisError):
    """The linear system does not admit the requested normalized solution."""
