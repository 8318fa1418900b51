"""Exception hierarchy shared by every module of the package."""


class SetSeqError(Exception):
    """Base class for all errors raised by setseq."""


class InsufficientDataError(SetSeqError):
    """A computation needs more terms than were supplied."""

    def __init__(self, required, available):
        self.required = required
        self.available = available
        super().__init__(
            f"insufficient data: need {required} terms, only {available} available"
        )


class SeriesDomainError(SetSeqError):
    """A series operation was applied outside its domain (e.g. log of 0)."""


class UnknownModelError(SetSeqError):
    pass


class InvalidParameterError(SetSeqError):
    pass


class CustomSequenceError(SetSeqError):
    """Base class for validation failures of a user-supplied sequence file."""


class MalformedSequenceFile(CustomSequenceError):
    pass


class LeadingTermError(CustomSequenceError):
    pass


class PeriodicityError(CustomSequenceError):
    pass


class ClassificationError(SetSeqError):
    """The requested output is not defined for the model's ratio class."""


class EvaluationDomainError(SetSeqError):
    """Evaluation at a size where the quantity is undefined."""


class BudgetExceededError(SetSeqError):
    """An exhaustive enumeration would exceed its hard budget."""


class DiagnosticError(SetSeqError):
    pass


class LatticeMismatchError(SetSeqError):
    pass
