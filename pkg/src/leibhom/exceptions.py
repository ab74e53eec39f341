from typing import Any, Optional


class HomologyError(Exception):
    """
    Base class for leibhom errors.
    """


class DimensionMismatch(HomologyError, ValueError):
    """
    Raised when vectors or matrices of incompatible shapes are combined.
    """


class AlgebraMismatch(HomologyError, ValueError):
    """
    Raised when representations of different Lie algebras are combined.
    """


class NotACycle(HomologyError):
    """
    Raised when a chain which should be a cycle has a non-zero boundary.
    """

    def __init__(self, degree: Optional[int] = None) -> None:
        self.degree = degree

    def __str__(self) -> str:
        if self.degree is None:
            return "Vector is not a cycle"
        return "Vector is not a cycle in degree %d" % self.degree


class NotASubspace(HomologyError):
    """
    Raised when the boundaries are not contained in the cycles.
    """


class InvalidAlgebra(HomologyError):
    """
    Raised when a Lie algebra or a representation fails validation.

    The failing :class:`~leibhom.lie.algebra.ValidationReport` is available
    as the `report` attribute.
    """

    def __init__(self, report: Any) -> None:
        self.report = report

    def __str__(self) -> str:
        return "Invalid algebra: %d failure(s)" % len(self.report.failures)


class NotEquivariant(HomologyError):
    """
    Raised when a map or an action does not commute with the Lie algebra action.
    """


class SingularKillingForm(HomologyError):
    """
    Raised when the Killing form of a Lie algebra is degenerate.
    """


class DegreeOutOfRange(HomologyError, IndexError):
    """
    Raised when a degree outside the built range of a complex is requested.
    """


class ChainMapError(HomologyError):
    """
    Raised when a map which should commute with differentials does not.
    """


class InputError(HomologyError):
    """
    Raised when JSON input cannot be parsed or does not follow the schema.
    """

    def __init__(self, message: str, position: Optional[str] = None) -> None:
        self.message = message
        self.position = position

    def __str__(self) -> str:
        if self.position is None:
            return self.message
        return "%s (%s)" % (self.message, self.position)


class ResourceBudgetExceeded(HomologyError):
    """
    Raised before building a boundary matrix which would not fit in the
    configured memory budget.
    """

    def __init__(self, degree: int, estimate_mb: float, budget_mb: int) -> None:
        self.degree = degree
        self.estimate_mb = estimate_mb
        self.budget_mb = budget_mb

    def __str__(self) -> str:
        return "Degree %d needs about %d MB, budget is %d MB" % (
            self.degree,
            round(self.estimate_mb),
            self.budget_mb,
        )
