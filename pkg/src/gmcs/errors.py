"""Typed errors shared across the package.

The CLI maps :class:`ValidationError` to exit code 3 and
:class:`NumericError` to exit code 4; usage errors exit with 2.
"""


class GmcsError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(GmcsError):
    """Input violates a documented contract (bad file, bad pair, bad level)."""


class NumericError(GmcsError):
    """A numerical routine failed (singular matrix, non-convergence)."""


class InvalidEdgeError(ValidationError):
    """Vertex pair or linear edge index out of range."""


class DegenerateDataError(ValidationError):
    """Dataset unusable for correlation estimates (e.g. a constant column)."""


class InconsistentDecisionsError(ValidationError):
    """Edge and non-edge rejections overlap; no confidence set exists."""


class InconsistentBoundsError(ValidationError):
    """Lower/upper bound sets do not form a valid confidence-set description."""


class InvalidThresholdError(ValidationError):
    """Per-test threshold so large that opposite rejections could overlap."""


class EnumerationLimitError(ValidationError):
    """Problem size exceeds the brute-force enumeration limit."""


class SingularCovarianceError(NumericError):
    """Covariance matrix is not positive definite.

    ``pivot`` is the 1-based index of the first failing Cholesky pivot.
    """

    def __init__(self, message, pivot=None):
        super().__init__(message)
        self.pivot = pivot
