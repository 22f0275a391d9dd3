"""Exception hierarchy shared by all modules."""


class IaslError(Exception):
    """Base class for every error raised by this package."""


class GraphFormatError(IaslError, ValueError):
    """Malformed graph, signed graph or labeling input."""


class CycleBudgetExceeded(IaslError):
    """A graph has more simple cycles than the caller allowed."""

    def __init__(self, budget, graph=None):
        self.budget = budget
        self.graph = graph
        msg = f"more than {budget} simple cycles"
        if graph is not None:
            msg += f" in graph with edges {list(graph.edges)}"
        super().__init__(msg)


class UnknownEdge(IaslError, KeyError):
    def __init__(self, u, v):
        self.u, self.v = u, v
        super().__init__(f"{u} {v} is not an edge")

    def __str__(self):
        return self.args[0]


class UnknownCycle(IaslError, ValueError):
    pass


class LabelingError(IaslError, ValueError):
    """A labeling fails to be an integer additive set-labeling."""


class NotInjective(LabelingError):
    def __init__(self, u, v):
        self.u, self.v = u, v
        super().__init__(f"NotInjective: vertices {u} and {v} share a set-label")


class LabelOutsideGroundSet(LabelingError):
    def __init__(self, u):
        self.u = u
        super().__init__(f"LabelOutsideGroundSet: label of vertex {u} is not a subset of the ground set")


class EmptyLabel(LabelingError):
    def __init__(self, u):
        self.u = u
        super().__init__(f"EmptyLabel: vertex {u} has an empty set-label")


class MissingLabel(LabelingError):
    def __init__(self, u):
        self.u = u
        super().__init__(f"MissingLabel: vertex {u} has no set-label")


class ConsistencyError(IaslError, AssertionError):
    """An internal cross-check between two independent routes disagreed."""
