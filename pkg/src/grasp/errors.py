"""Exception types shared across the package."""


class GraspError(Exception):
    pass


class GraphError(GraspError, ValueError):
    pass


class CycleDetected(GraphError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("cycle detected: " + " -> ".join(str(v) for v in self.cycle))


class VertexOutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class InvalidQuery(GraspError, ValueError):
    pass


class TooLarge(GraspError, ValueError):
    pass


class NonUniqueBoundary(GraspError):
    pass


class OrderViolation(GraspError, ValueError):
    pass


class DegenerateData(GraspError, ValueError):
    pass


class SingularParentMatrix(GraspError, ArithmeticError):
    pass


class DimensionMismatch(GraspError, ValueError):
    pass


class ParseError(GraspError, ValueError):
    pass
