"""Exception types raised by qgraphstats."""


class QGraphError(Exception):
    """Base class for all domain errors."""


class GraphError(QGraphError, ValueError):
    pass


class EmptyGraph(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class DisconnectedGraph(GraphError):
    pass


class EdgeListParseError(GraphError):
    pass


class IndexOutOfRange(QGraphError, IndexError):
    pass


class NotACycle(QGraphError, ValueError):
    pass


class PathNotOnGraph(QGraphError, ValueError):
    pass


class TooFewVertices(QGraphError, ValueError):
    pass


class DisconnectedConfigurationSpace(QGraphError):
    pass


class NotUnimodular(QGraphError, ValueError):
    pass


class BaseMismatch(QGraphError, ValueError):
    pass


class HostMismatch(QGraphError, ValueError):
    pass


class DimensionMismatch(QGraphError, ValueError):
    pass


class NoAnchorVertex(QGraphError):
    pass


class InconsistentDiscretePhases(QGraphError):
    pass


class NotAComplex(QGraphError, ValueError):
    pass


class EquivalenceViolation(QGraphError):
    pass


class ConvergenceFailure(QGraphError):
    pass


class WindowOutOfRange(QGraphError, ValueError):
    pass
