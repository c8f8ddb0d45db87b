"""Exception hierarchy shared by the library and the CLI."""


class PlatesError(Exception):
    """Base class for every error raised by the package."""


class DomainError(PlatesError, ValueError):
    """An input violates the preconditions of an operation."""


class ParseError(DomainError):
    """Malformed text in one of the label/tree/point grammars."""

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        self.reason = reason
        super().__init__(f"{reason} at position {position} in {text!r}")


class ResourceError(PlatesError, RuntimeError):
    """An enumeration would exceed the configured size cap."""


class PoleError(PlatesError, ArithmeticError):
    """A functional representation was evaluated on its pole locus."""


class SamplingError(PlatesError, RuntimeError):
    """The point sampler ran out of retries before finding a generic point."""
