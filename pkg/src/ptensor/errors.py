"""Exception types shared by all ptensor modules."""


class PTensorError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(PTensorError):
    """Shapes of tensor/vector operands do not match."""


class DegenerateInput(PTensorError):
    """An input is degenerate for the requested operation (zero vector, NaN, ...)."""


class NotNonnegative(PTensorError):
    """An operation requiring entrywise nonnegative input received a negative entry."""


class ParseError(PTensorError):
    """A tensor/vector/hypergraph/instance file is malformed or inconsistent."""


class SingularCauchy(PTensorError):
    """A Cauchy construction hit a zero index-sum denominator."""


class ArityError(PTensorError):
    """Hypergraph edges do not all have the requested uniform cardinality."""


class DiagonalNegationError(PTensorError):
    """Negating a rank-one basis tensor on a constant index tuple (that tensor
    has a negative diagonal entry and cannot satisfy the weak sign property)."""


class NotPBehaviorAt(PTensorError):
    """The scaling-matrix construction was called at a point where no index
    has a positive sign-functional value."""

    def __init__(self, x, value):
        super().__init__(
            f"no index with positive sign functional at this point (max value {value})"
        )
        self.x = x
        self.value = value
