"""Exception hierarchy shared by every module of the package."""


class GraphError(Exception):
    """Base class; carries an optional witness object for diagnostics."""

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidEdge(GraphError):
    pass


class NotPresent(GraphError):
    pass


class NotMatchingCovered(GraphError):
    pass


class NoSuchCycle(GraphError):
    pass


class PreconditionFailed(GraphError):
    pass


class DegreeTooLow(GraphError):
    pass


class NotMinimal(GraphError):
    pass


class NotDegreeTwo(GraphError):
    pass


class ParallelNeighbors(GraphError):
    pass


class RestrictionViolated(GraphError):
    pass


class BadPartition(GraphError):
    pass


class NotFound(GraphError):
    pass


class NotBalanced2Cut(GraphError):
    pass


class NotATree(GraphError):
    pass


class TrivialTree(GraphError):
    pass


class BadParams(GraphError):
    pass


class DegreeMismatch(GraphError):
    pass


class NotKExtendable(GraphError):
    pass


class NotMinimalKExtendable(GraphError):
    pass


class TooLarge(GraphError):
    pass


class BudgetExceeded(GraphError):
    pass


class EngineDisagreement(GraphError):
    """Two independent decision routes returned different verdicts."""


class ParseError(GraphError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
