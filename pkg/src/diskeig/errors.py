"""Exception hierarchy shared across the package.

Every failure the library can surface maps to one of these classes so the
CLI can translate them into stable exit codes.
"""


class DiskeigError(Exception):
    """Base class for all library errors."""


class MatrixMarketError(DiskeigError):
    """Malformed or unsupported Matrix Market input."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class SingularMatrix(DiskeigError):
    """An exactly singular matrix reached a factorization kernel."""


class NumericalFailure(DiskeigError):
    """An iterative kernel failed to converge; partial results may be attached."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NodeCollision(DiskeigError):
    """An evaluation point coincides with a quadrature node."""


class NodeSingular(DiskeigError):
    """A shifted matrix z_j*B - A is singular: z_j is an eigenvalue.

    Perturbing the disk radius slightly moves the node off the spectrum.
    """

    def __init__(self, node_index, node_value):
        super().__init__(
            f"shifted matrix singular at quadrature node j={node_index} "
            f"(z_j = {node_value}); perturb the disk radius to move the "
            f"node off the spectrum"
        )
        self.node_index = node_index
        self.node_value = node_value


class AllNodesSingular(DiskeigError):
    """Every shifted matrix is singular; the pencil is likely not regular."""


class MaxRoundsExceeded(DiskeigError):
    """The rank search did not terminate within its round budget."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class IllConditionedProjection(DiskeigError):
    """The projected pencil is too ill-conditioned to reduce reliably."""


class DegenerateVector(DiskeigError):
    """A residual denominator vanished: A*x and B*x are both zero."""
