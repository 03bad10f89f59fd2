"""Exception hierarchy for isingdual.

Everything derives from ``ValueError`` so plain callers keep working; the CLI maps
the three families below onto its exit codes.
"""
from typing import Optional


class IsingDualError(ValueError):
    """Base class for all isingdual errors."""


class UsageError(IsingDualError):
    """Bad command-line usage (exit 1)."""


class ModelError(IsingDualError):
    """The model, graph or partition cannot be processed (exit 2)."""


class NumericFailure(IsingDualError):
    """A NaN reached a reported number (exit 3)."""


# Graph construction

class DisconnectedGraph(ModelError):
    def __init__(self, components: int):
        super().__init__(f"graph is disconnected ({components} components)")
        self.components = components


class SelfLoop(ModelError):
    def __init__(self, edge_id: int, vertex: int):
        super().__init__(f"edge {edge_id} is a self-loop on vertex {vertex}")
        self.edge_id = edge_id
        self.vertex = vertex


class EmptyEdgeList(ModelError):
    def __init__(self, vertex_count: int):
        super().__init__(f"{vertex_count} vertices but no edges")


class InvalidVertex(ModelError):
    pass


class NotAChord(ModelError):
    def __init__(self, edge_id: int):
        super().__init__(f"edge {edge_id} is not a chord of this partition")
        self.edge_id = edge_id


class NotABranch(ModelError):
    def __init__(self, edge_id: int):
        super().__init__(f"edge {edge_id} is not a branch of this partition")
        self.edge_id = edge_id


class TooSmall(ModelError):
    pass


class NotACycleGraph(ModelError):
    pass


# Model / sampling

class InvalidCouplings(ModelError):
    pass


class NonFiniteCoupling(ModelError):
    def __init__(self, message: str, line_number: Optional[int] = None):
        super().__init__(message)
        self.line_number = line_number


class NonFerromagneticDual(ModelError):
    def __init__(self, edge_id: Optional[int] = None, coupling: Optional[float] = None):
        where = f" (edge {edge_id}, J={coupling!r})" if edge_id is not None else ""
        super().__init__(f"dual factors need non-negative couplings{where}")
        self.edge_id = edge_id
        self.coupling = coupling


class TooLarge(ModelError):
    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what} = {size} exceeds the enumeration limit {limit}")
        self.size = size
        self.limit = limit


class InconsistentAssignment(ModelError):
    pass


class MalformedLine(ModelError):
    def __init__(self, line_number: int, line: str, reason: str):
        super().__init__(f"line {line_number}: {reason}: {line!r}")
        self.line_number = line_number
        self.line = line


class JobInterrupted(IsingDualError):
    """Stop was requested before all work units ran."""
