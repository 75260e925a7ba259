class GenusLabError(Exception):
    """Base error for contract violations (bad preconditions, invalid values)."""


class FormatError(GenusLabError):
    """Malformed text or JSON input; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
