"""Exception hierarchy. Every error raised on purpose derives from BraidBellError."""


class BraidBellError(Exception):
    pass


class DimensionError(BraidBellError, ValueError):
    """Shapes are incompatible, or a label/index is out of range."""


class TooLargeError(DimensionError):
    """The instance exceeds a configured size cap."""


class NotHermitianError(BraidBellError, ValueError):
    pass


class NotPSDError(BraidBellError, ValueError):
    pass


class InvalidStateError(BraidBellError, ValueError):
    """A vector or density matrix violates its normalization invariants."""


class ConvergenceError(BraidBellError, ArithmeticError):
    pass


class BraidSyntaxError(BraidBellError, ValueError):
    """Malformed braid word. ``offset`` is the byte offset of the offending token."""

    def __init__(self, message: str, text: str, offset: int):
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")

    def pointer(self) -> str:
        """Two-line rendering of the input with a caret under the error."""
        return f"{self.text}\n{' ' * self.offset}^"


class BraidIndexError(BraidSyntaxError, DimensionError):
    """A generator index in a braid word lies outside [1, n-1]."""
