"""Exception types shared across the package."""


class CoverboundError(Exception):
    """Base class for all package-specific errors."""


class GraphFormatError(CoverboundError, ValueError):
    """Malformed or invalid edge-list input. Carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class VertexError(CoverboundError, ValueError):
    """Vertex id or label out of range / unknown."""


class DegreeError(CoverboundError, ValueError):
    """An operation requires minimum combinatorial degree 2 (no absorbing states)."""


class RegularityError(CoverboundError, ValueError):
    """The graph is not weighted-regular within tolerance."""


class ConnectivityError(CoverboundError, ValueError):
    """The graph is not connected."""


class BudgetExceededError(CoverboundError, RuntimeError):
    """Tree construction would exceed the node budget."""

    def __init__(self, level, projected, budget):
        self.level = level
        self.projected = projected
        self.budget = budget
        super().__init__(
            f"node budget exceeded at level {level}: "
            f"projected {projected} nodes > budget {budget}"
        )


class ConvergenceError(CoverboundError, RuntimeError):
    """An iterative routine did not reach its tolerance. Carries the residual."""

    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class DimensionError(CoverboundError, ValueError):
    """Input dimension outside the supported range."""


class DomainError(CoverboundError, ValueError):
    """Function argument outside its mathematical domain."""


class ZeroDenominatorError(CoverboundError, ValueError):
    """Bound denominator vanished (g is zero on the support of the chain)."""


class ApplicabilityError(CoverboundError, ValueError):
    """A bound's degree/weight preconditions are not met."""


class CertificateError(CoverboundError, RuntimeError):
    """A certified inequality failed its verification tolerance."""


class NoQualifyingVertexError(CertificateError):
    """No vertex attains the spectral threshold required by the certificate."""


class EmptyCoreError(CertificateError):
    """The residual subgraph has no core above the required weighted degree."""


class GenerationError(CoverboundError, RuntimeError):
    """A random generator exhausted its retry budget."""
