"""Exception types shared across the package."""


class KRadicalError(Exception):
    pass


class IncompatibleRadicals(KRadicalError):
    """Two different square-free radicals met in one exact computation."""

    def __init__(self, d1: int, d2: int):
        super().__init__(f"cannot combine sqrt({d1}) and sqrt({d2}) exactly")
        self.d1 = d1
        self.d2 = d2


class ParseError(KRadicalError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(self._render())

    def _render(self) -> str:
        if not self.text:
            return self.message
        return f"{self.message} at position {self.position}\n  {self.text}\n  {' ' * self.position}^"


class PrecisionInsufficient(KRadicalError):
    """A certified computation could not conclude at the current precision."""

    def __init__(self, message: str, required_bits: int):
        super().__init__(f"{message} (retry with at least {required_bits} bits)")
        self.required_bits = required_bits


class MalformedMonodromy(KRadicalError):
    pass


class UnrecognizedGroup(KRadicalError):
    """The computed group is not in the classification list; evidence attached."""

    def __init__(self, message: str, evidence: dict):
        super().__init__(message)
        self.evidence = evidence


class BoundExceeded(KRadicalError):
    pass


class NumericOnlyWarning(UserWarning):
    """An expression mixed radicals and is handled by ball arithmetic only."""
