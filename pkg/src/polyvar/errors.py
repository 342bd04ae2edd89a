"""Exception hierarchy shared by every layer of the library."""


class PolyvarError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(PolyvarError, ValueError):
    pass


class InconsistentRepresentations(PolyvarError):
    """H- and V-representations of a polyhedron describe different sets."""


class NotACone(PolyvarError, ValueError):
    pass


class PointNotInSet(PolyvarError, ValueError):
    pass


# graph-level name used by the variational layer
PointNotOnGraph = PointNotInSet


class NonPolyhedralNorm(PolyvarError, ValueError):
    """Requested an exact computation with the approximate 2-norm."""


class NonPolyhedralResult(PolyvarError):
    """The requested object is not a finite union of polyhedra."""


class InvalidPrefan(PolyvarError, ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class ResidualNotInD(PolyvarError, ValueError):
    pass


class WrongDShape(PolyvarError, ValueError):
    pass


class CQFails(PolyvarError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"constraint qualification fails, witness y={list(map(str, witness))}")


class InvalidPoint(PolyvarError, ValueError):
    pass


class RouteDisagreement(PolyvarError, AssertionError):
    """Two certification routes returned different verdicts."""
