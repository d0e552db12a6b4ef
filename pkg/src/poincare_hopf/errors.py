"""Exception hierarchy.

Every error raised by the library derives from :class:`TopologyError`, which
is itself a :class:`ValueError` so callers validating input can catch either.
"""


class TopologyError(ValueError):
    pass


# -- complex construction -------------------------------------------------

class NonManifoldEdge(TopologyError):
    def __init__(self, edge, count):
        self.edge = tuple(edge)
        self.count = count
        super().__init__(f"edge {self.edge} is incident to {count} triangles (expected 2)")


class PinchedVertex(TopologyError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"link of vertex {vertex} is not a single simple cycle")


class DegenerateTriangle(TopologyError):
    def __init__(self, triangle):
        self.triangle = triangle
        super().__init__(f"triangle {triangle} repeats a vertex id")


class DisconnectedComplex(TopologyError):
    pass


class GridTooSmall(TopologyError):
    pass


class NonTriangleFace(TopologyError):
    pass


class MalformedInput(TopologyError):
    pass


# -- charts and winding ---------------------------------------------------

class ZeroAreaTriangle(TopologyError):
    pass


class UndersampledLoop(TopologyError):
    pass


class ZeroVector(TopologyError):
    pass


class NonIntegerWinding(TopologyError):
    pass


# -- fields ---------------------------------------------------------------

class NonGenericFunction(TopologyError):
    pass


class ZeroGradientTriangle(TopologyError):
    pass


class NonGenericGeometry(TopologyError):
    pass


class IndexMismatch(TopologyError):
    pass


# -- degree ---------------------------------------------------------------

class AmbiguousStep(TopologyError):
    pass


class NonRegularValue(TopologyError):
    pass


class DegenerateImageTriangle(TopologyError):
    pass


class NonIntegerTotal(TopologyError):
    pass


class ZeroFieldOnSphere(TopologyError):
    pass


class NoIsolatedZero(TopologyError):
    pass
