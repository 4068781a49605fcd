class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class LoopValidationError(DomainError):
    """A Cayley table is not a loop (not Latin, or no two-sided identity)."""

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class InfeasibleError(DomainError):
    """The requested optimum does not exist (e.g. covering with an isolated vertex)."""
