"""Shared exception types.

Everything here is a refusal with a reason, not a crash: callers that feed
shapes outside the supported envelope get one of these instead of a wrong
answer.
"""


class UnsupportedShape(ValueError):
    """The input is well-formed but outside the supported envelope."""


class FieldMismatch(ValueError):
    """Two objects that must live over the same field do not."""


class NotUltrametric(ValueError):
    """An operation that needs an ultrametric input got an archimedean one."""


class UnsupportedFlow(ValueError):
    """The requested parameter flow leaves the closed taxonomy."""


class NotSeparated(RuntimeError):
    """The separation search exhausted its candidate budget."""


class NotGalois(ValueError):
    """The extension is not Galois, so orbit machinery does not apply."""


class ExprSyntaxError(ValueError):
    """A parse error, carrying the offset where scanning stopped."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DivisionByZero(ZeroDivisionError):
    """Division by the zero element while evaluating an expression."""
