"""Exception hierarchy shared by every qale module."""

from __future__ import annotations


class QaleError(Exception):
    """Base class; ``exit_code`` is what the command line returns for it."""

    exit_code = 70


class ConfigurationError(QaleError, ValueError):
    exit_code = 64


class DivisionByZero(QaleError, ZeroDivisionError):
    exit_code = 70


class InternalInconsistency(QaleError):
    """Two independent computations of the same quantity disagreed."""

    exit_code = 70


class ParseError(QaleError, ValueError):
    exit_code = 64

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)


class DimensionMismatch(QaleError, ValueError):
    exit_code = 64


class HypothesisFailure(QaleError):
    """Input is well formed but violates a standing mathematical hypothesis."""

    exit_code = 2


class NotUnitary(HypothesisFailure):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"generator {index} is not unitary")


class NotSpecialDeterminant(HypothesisFailure):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"generator {index} does not have determinant 1")


class OrderExceeded(HypothesisFailure):
    pass


class NotASubgroup(HypothesisFailure):
    pass


class FreeActionViolated(HypothesisFailure):
    pass


class NotIsolated(HypothesisFailure):
    pass


class WrongDimension(HypothesisFailure):
    pass


class NotSymplectic(HypothesisFailure):
    pass


class RankBound(HypothesisFailure):
    pass


class InconclusiveWeight(HypothesisFailure):
    pass


class HypothesisViolated(HypothesisFailure):
    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__("hypothesis violated: " + ", ".join(self.failures))


class NotAComplex(HypothesisFailure):
    pass


class ModeMismatch(HypothesisFailure):
    pass
