"""Exception hierarchy shared by the library and the command line."""


class TorqError(ValueError):
    """Base class for semantic failures (invalid input data, unmet preconditions)."""


class FanError(TorqError):
    pass


class TriangleError(TorqError):
    """A triangle axiom failed.

    Attributes:
        axiom: short name of the failed axiom ("dimensions", "composition",
            "injective" or "effective").
    """

    def __init__(self, axiom: str, message: str):
        super().__init__(message)
        self.axiom = axiom


class PreconditionError(TorqError):
    pass
