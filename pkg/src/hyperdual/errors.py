"""Exception types shared across the package."""


class HyperdualError(Exception):
    """Base class for all package-specific errors."""


class HyperdualWarning(UserWarning):
    """Base class for package warnings (lossy-but-legal constructions)."""


class FormatError(HyperdualError):
    """Malformed hypergraph file, lattice spec string, or CSV input."""


class DimensionMismatchError(HyperdualError):
    """Operands describe registers of different sizes."""


class DependentEdgesError(HyperdualError):
    """An operation that requires GF(2)-independent hyperedges got dependent ones."""


class TooLargeError(HyperdualError):
    """Problem size exceeds the hard limit of the requested solver."""


class UnsupportedDimsError(HyperdualError):
    """Lattice kind/dimension combination that cannot be built."""


class SearchBudgetExceededError(HyperdualError):
    """Isomorphism search gave up before deciding; the answer is unknown."""


class NotConvergedError(HyperdualError):
    """Iterative eigensolve stopped above tolerance.

    Carries the partial ``SpectrumResult`` as ``result`` so callers can
    inspect or flag the best estimate.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
