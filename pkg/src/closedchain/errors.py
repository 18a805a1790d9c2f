"""Exception hierarchy shared by all modules."""


class ChainError(ValueError):
    """Base class for all errors raised by this package."""


class DimensionError(ChainError):
    pass


class DegeneratePhaseError(ChainError):
    """The phase of a zero vector was requested."""


class NumericDomainError(ChainError):
    """A quantity that must be nonnegative came out clearly negative."""


class InvalidParameterError(ChainError):
    pass


class InvalidSemiDiagonalError(ChainError):
    """A semi-diagonal vector cannot be turned into a configuration."""


class DomainError(ChainError):
    """Input lies outside the semi-diagonal domain or the realizability box."""


class InfeasibleChainError(ChainError):
    """The chain cannot close: twice its longest link exceeds the total length."""


class SamplingExhaustedError(ChainError):
    pass


class CostGuardError(ChainError):
    """An exhaustive oracle was asked for more work than its guard allows."""


class InputError(ChainError):
    """A chain file, cube point or angle table could not be read."""
