"""Named errors raised across the package.

Every error carries ``error_code`` (the class name) so the command layer can
report it without knowing the concrete type.
"""
from typing import Iterable, Optional, Sequence


class GreenRouteError(Exception):
    """Base class for all domain errors."""

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail

    @property
    def error_code(self) -> str:
        return type(self).__name__


# Instance validation

class InstanceError(GreenRouteError):
    """The instance description violates a structural invariant."""


class DuplicateIdentifier(InstanceError):
    pass


class EmptyHierarchy(InstanceError):
    pass


class NegativeParameter(InstanceError):
    pass


class DanglingReference(InstanceError):
    pass


class StateCountMismatch(InstanceError):
    pass


class SelfLoopEdge(InstanceError):
    pass


class AmbiguousPortPairing(InstanceError):
    pass


class PartiallyConnectedPort(InstanceError):
    """One or more ports have exactly one of an outgoing and an incoming link."""

    def __init__(self, ports: Iterable[str]):
        self.ports: Sequence[str] = tuple(ports)
        super().__init__(
            "ports with only one link direction: " + ", ".join(self.ports)
        )


class BadDemand(InstanceError):
    pass


# Solving

class SolverError(GreenRouteError):
    pass


class Infeasible(SolverError):
    pass


class BudgetExceeded(SolverError):
    pass


class OracleTooLarge(SolverError):
    pass


class PathLimitExceeded(SolverError):
    pass


# Checking and export

class DimensionMismatch(GreenRouteError):
    pass


class NonRepresentableCoefficient(GreenRouteError):
    pass


class ParseError(GreenRouteError):
    """LP text could not be read back."""

    def __init__(self, message: str, line: int, column: int = 1, text: Optional[str] = None):
        self.line = line
        self.column = column
        self.text = text
        super().__init__(f"line {line}, column {column}: {message}")
