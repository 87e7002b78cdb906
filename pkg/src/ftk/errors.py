"""Exception hierarchy shared across the package.

CLI exit codes map onto these: ParseError -> 1, DomainError -> 2,
OracleMismatch -> 3.  PrecisionExhausted signals that a truncated series
window is too small to certify the requested computation.
"""


class FtkError(Exception):
    pass


class ParseError(FtkError):
    """Syntax or literal error in textual input, with a character offset."""

    def __init__(self, message, offset=None):
        super().__init__(message if offset is None else f"{message} (at offset {offset})")
        self.offset = offset


class DomainError(FtkError):
    """Input outside an operation's mathematical domain."""


class NotInvertible(DomainError):
    pass


class PrecisionExhausted(FtkError):
    pass


class OracleMismatch(FtkError):
    pass
