import logging
import os
from dataclasses import dataclass, field
from typing import Optional

from .exceptions import ResourceBudgetExceeded
from .logger import ComputationLogger, ComputationTrace

DEFAULT_BUDGET_MB = 2048

# bytes held per stored non-zero entry, rational value and dictionary slot
BYTES_PER_ENTRY = 200
BYTES_PER_COLUMN = 250

OUTPUT_FORMATS = ("json", "text")

logger = logging.getLogger("leibhom.configuration")


def default_budget_mb() -> int:
    value = os.environ.get("LEIBHOM_BUDGET_MB")
    if value:
        try:
            return int(value)
        except ValueError:
            raise ValueError(
                "LEIBHOM_BUDGET_MB must be an integer, got %r" % value
            ) from None
    return DEFAULT_BUDGET_MB


@dataclass
class HomologyConfiguration:
    """
    Parameters of a homology computation.
    """

    max_degree: int = 3
    """
    The highest degree whose homology is computed.

    Computing degree `n` requires the boundary matrix of degree `n + 1`.
    """

    jobs: int = 1
    """
    The number of worker processes used for independent blocks.
    """

    budget_mb: int = field(default_factory=default_budget_mb)
    """
    The memory budget in megabytes.

    Building a boundary matrix whose estimated footprint exceeds the budget
    raises :class:`~leibhom.exceptions.ResourceBudgetExceeded`. The default is
    read from the `LEIBHOM_BUDGET_MB` environment variable.
    """

    use_gradings: bool = True
    """
    Whether boundary matrices are split into blocks using gradings of the
    algebra.
    """

    trace_logger: Optional[ComputationLogger] = None
    """
    The :class:`~leibhom.logger.ComputationLogger` instance to log events to.
    """

    output_format: str = "text"
    """
    The report format, `"text"` or `"json"`.
    """

    def validate(self) -> None:
        if self.max_degree < 0:
            raise ValueError("max_degree must be non-negative")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.budget_mb < 1:
            raise ValueError("budget_mb must be at least 1")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(
                "output_format must be one of %s" % ", ".join(OUTPUT_FORMATS)
            )

    @staticmethod
    def estimate_mb(columns: int, nnz_per_column: float) -> float:
        """
        Return the estimated size in megabytes of a sparse matrix.
        """
        total = columns * (BYTES_PER_COLUMN + nnz_per_column * BYTES_PER_ENTRY)
        return total / (1024 * 1024)

    def check_budget(
        self,
        degree: int,
        columns: int,
        nnz_per_column: float,
        trace: Optional[ComputationTrace] = None,
    ) -> None:
        """
        Raise :class:`~leibhom.exceptions.ResourceBudgetExceeded` if a matrix
        with `columns` columns does not fit in the budget.
        """
        estimate = self.estimate_mb(columns, nnz_per_column)
        if trace is not None:
            trace.log_event(
                category="resource",
                event="budget_check",
                data={
                    "budget_mb": self.budget_mb,
                    "columns": columns,
                    "degree": degree,
                    "estimate_mb": round(estimate, 3),
                },
            )
        if estimate > self.budget_mb:
            logger.warning(
                "Degree %d would need %.0f MB, budget is %d MB",
                degree,
                estimate,
                self.budget_mb,
            )
            raise ResourceBudgetExceeded(degree, estimate, self.budget_mb)
