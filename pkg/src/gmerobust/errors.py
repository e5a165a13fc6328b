"""Exception types raised across the package."""


class GmeError(Exception):
    """Base class for all package errors."""


class InputError(GmeError, ValueError):
    """Malformed external input (JSON, CLI arguments)."""


# state-core
class ZeroVectorError(GmeError, ValueError):
    pass


class ShapeMismatchError(GmeError, ValueError):
    pass


class ZeroFactorError(GmeError, ValueError):
    pass


class TrivialLeadError(GmeError, ValueError):
    pass


class CancellationToZeroError(GmeError, ValueError):
    pass


# partitions
class InvalidPartitionError(GmeError, ValueError):
    pass


class TooFewPartiesError(GmeError, ValueError):
    pass


# disentangle
class NotBipartiteError(GmeError, ValueError):
    pass


class RankTooLowError(GmeError, ValueError):
    pass


class MaximallyEntangledPairError(GmeError, ValueError):
    """The two coefficients being merged are equal; no orthogonal product state works."""


class MaximallyEntangledError(GmeError, ValueError):
    """All Schmidt coefficients equal 1/sqrt(r)."""


class DegenerateMergeUnavoidableError(GmeError, ValueError):
    pass


class NoRootFoundError(GmeError, RuntimeError):
    pass


class NotGHZFormError(GmeError, ValueError):
    pass


# search
class BaseNotEntangledError(GmeError, ValueError):
    pass
