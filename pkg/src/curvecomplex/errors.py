"""Exception types shared across the package."""


class CurveComplexError(Exception):
    pass


class TriangulationError(CurveComplexError, ValueError):
    pass


class NormalCurveError(CurveComplexError, ValueError):
    """Bad normal coordinates or a violated precondition on curves."""


class BoundExhausted(CurveComplexError):
    """A bounded search came up empty.

    This only says the enumeration bound was too small; it never asserts that
    the object does not exist.
    """

    def __init__(self, stage: str, detail: str = ""):
        self.stage = stage
        self.detail = detail
        super().__init__(f"BOUND_EXHAUSTED in {stage}" + (f": {detail}" if detail else ""))


class CertificateError(CurveComplexError):
    """A homotopy move is not licensed by the complex."""

    def __init__(self, index: int, reason: str):
        self.index = index
        self.reason = reason
        super().__init__(f"move {index}: {reason}")
