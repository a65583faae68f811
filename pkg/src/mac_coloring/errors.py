"""Exception hierarchy shared by all modules."""


class MacError(Exception):
    """Base class for every error raised by this package."""


class GraphFormatError(MacError, ValueError):
    """Raised on malformed graph, coloring or formula input."""


class InvalidColoringError(MacError, ValueError):
    """A coloring does not satisfy a required precondition."""


class NotGoodError(MacError):
    """The graph has no majority additive coloring for any number of colors."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(
            f"graph is not good: vertex {witness.u} has {len(witness.R)} "
            f"neighbors with identical neighborhoods {sorted(witness.R)}"
        )


class PncViolatedError(MacError):
    """The private neighbor condition fails."""

    def __init__(self, report):
        self.report = report
        super().__init__(
            f"private neighbor condition fails at u={report.u}, v={report.v}"
        )


class BudgetExceededError(MacError):
    """A search or resampling loop ran out of its iteration budget."""
