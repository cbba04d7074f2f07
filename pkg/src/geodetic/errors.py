"""Exception hierarchy shared by every module.

``DomainError`` subclasses signal that an input violates an operation's
precondition; the CLI maps them to exit status 1.
"""


class DomainError(Exception):
    pass


class GraphFormatError(DomainError):
    pass


class UnknownVertexError(DomainError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class DisconnectedGraphError(DomainError):
    def __init__(self, component_a, component_b):
        self.components = (tuple(component_a), tuple(component_b))
        super().__init__(
            f"graph is disconnected: component {list(component_a)} "
            f"does not reach component {list(component_b)}"
        )


class NotGeodeticError(DomainError):
    def __init__(self, report):
        self.report = report
        u, v = report.witness.pair
        super().__init__(f"graph is not geodetic: two geodesics from {u} to {v}")


class AmbiguousGeodesicError(DomainError):
    def __init__(self, u, v, paths):
        self.paths = paths
        super().__init__(f"more than one geodesic from {u} to {v}: {[list(p) for p in paths]}")


class UnreachableError(DomainError):
    pass


class PreconditionError(DomainError):
    pass


class NotGeodesicError(PreconditionError):
    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)


class HorizonTooShortError(DomainError):
    """Inconclusive: the prefix is too short for a stabilisation certificate."""


class UnverifiedSystemError(DomainError):
    pass


class InternalInconsistencyError(RuntimeError):
    """A check that cannot fail on valid input failed."""
