"""Error types raised by the monitoring engine."""


class MonitorError(Exception):
    """Base class for all errors raised by this package."""


class LexError(MonitorError):
    """Illegal character or unterminated literal in a specification."""

    def __init__(self, position, message):
        super().__init__(f"lexical error at offset {position}: {message}")
        self.position = position
        self.message = message


class ParseError(MonitorError):
    """Malformed specification text.

    position is a character offset into the original input; expected
    lists the token classes that would have been accepted there.
    """

    def __init__(self, position, message, expected=()):
        detail = f"parse error at offset {position}: {message}"
        if expected:
            detail += " (expected " + ", ".join(expected) + ")"
        super().__init__(detail)
        self.position = position
        self.message = message
        self.expected = tuple(expected)


class UnsupportedFeature(MonitorError):
    """Construct not supported under the configured time model/semantics."""


class CompileError(MonitorError):
    """Expression cannot be lowered to a network (e.g. unknown predicate)."""


class DecodeError(MonitorError):
    """Malformed input message."""


class MonotonicityError(MonitorError):
    """Dense timestamp did not strictly increase."""


class EvaluationError(MonitorError):
    """Runtime type error, e.g. numeric comparison against a string."""


class DictionaryOverflow(MonitorError):
    """Too many distinct categorical values for the configured bit width."""
