"""Exception hierarchy shared by every geninv module."""


class GenInvError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(GenInvError, ValueError):
    pass


class NotSquare(DimensionMismatch):
    pass


class Singular(GenInvError, ArithmeticError):
    pass


class ZeroMatrix(GenInvError, ValueError):
    pass


class UnsupportedTag(GenInvError, ValueError):
    pass


class MissingContext(GenInvError, ValueError):
    pass


class InverseNotExists(GenInvError):
    """A requested generalized inverse does not exist for the input."""

    def __init__(self, kind, reason="FeasibilityEmpty"):
        super().__init__(f"{kind} does not exist ({reason})")
        self.kind = kind
        self.reason = reason


class IndexTooHigh(InverseNotExists):
    def __init__(self, kind="group inverse"):
        super().__init__(kind, "IndexTooHigh")


class NotHermitian(GenInvError, ValueError):
    pass


class UnknownTheorem(GenInvError, KeyError):
    pass


class MalformedInputs(GenInvError, ValueError):
    pass


class InvalidSpec(GenInvError, ValueError):
    pass


class HypothesisSamplingExhausted(GenInvError):
    def __init__(self, theorem, attempts):
        super().__init__(f"{theorem}: no hypothesis-satisfying instance in {attempts} attempts")
        self.theorem = theorem
        self.attempts = attempts


class Undecided(GenInvError):
    """The polynomial solver could not decide a nonlinear system."""


class ParseError(GenInvError, ValueError):
    pass


class PostconditionFailed(GenInvError, AssertionError):
    """A construction produced a matrix that fails its own defining equations."""
