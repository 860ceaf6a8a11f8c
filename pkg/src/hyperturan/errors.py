"""Exception hierarchy shared by every module of the package."""


class HyperturanError(Exception):
    """Base class for all errors raised by hyperturan."""


class VertexRangeError(HyperturanError, IndexError):
    pass


class InvalidPairError(HyperturanError, ValueError):
    pass


class ParseError(HyperturanError, ValueError):
    pass


class DomainError(HyperturanError, ValueError):
    """A numeric argument lies outside the domain where the quantity is defined."""


class DimensionError(HyperturanError, ValueError):
    """A partition and a host hypergraph disagree on the vertex count."""


class CapacityError(HyperturanError):
    """The instance is larger than an exact method is allowed to handle."""


class PreconditionError(HyperturanError, ValueError):
    pass


class ContainmentError(HyperturanError, ValueError):
    """An edge subset refers to edges that are not in the host."""
