"""Exception hierarchy shared by every qgraph module."""


class QGraphError(Exception):
    """Base class for all qgraph errors."""


class GraphError(QGraphError, ValueError):
    """A structural problem with a metric graph."""


class DanglingReference(GraphError):
    pass


class Disconnected(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DirichletOnInternalVertex(GraphError):
    pass


class NoLeads(GraphError):
    pass


class BadLength(GraphError):
    pass


class DuplicateVertex(GraphError):
    pass


class UnknownVertex(GraphError, KeyError):
    pass


class ValidationError(GraphError):
    """Aggregates every invariant a graph violates."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(f"{type(v).__name__}: {v}" for v in self.violations)
        super().__init__(f"invalid graph ({len(self.violations)} problem(s)): {lines}")

    @property
    def kinds(self):
        return {type(v) for v in self.violations}


class DirichletDegreeMismatch(QGraphError, ValueError):
    pass


class ParameterOutOfRange(QGraphError, ValueError):
    pass


class UnknownChannel(QGraphError, IndexError):
    pass


class SingularAfterRetry(QGraphError, ArithmeticError):
    """Both k and the shifted k + eps gave a numerically singular system."""

    def __init__(self, k):
        self.k = k
        super().__init__(f"singular bond system at k={k!r} and at the perturbed retry point")


class SingularPoint(QGraphError, ArithmeticError):
    pass


class InvalidDistribution(QGraphError, ValueError):
    pass


class UnknownCatalogId(QGraphError, KeyError):
    pass


class StructureViolation(QGraphError, ValueError):
    pass


class ParseError(QGraphError, ValueError):
    pass
