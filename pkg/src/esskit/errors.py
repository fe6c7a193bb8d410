"""Exception hierarchy.

Two families matter for the CLI contract: `InputError` (bad data or
parameters, exit code 2) and `EstimationError` (an estimator could not
produce a usable value, exit code 3).
"""


class EsskitError(Exception):
    """Base class for all package errors."""


class InputError(EsskitError, ValueError):
    """Invalid input data or parameters."""


class DegenerateInputError(InputError):
    """Series is constant, too short, or otherwise carries no signal."""


class LengthMismatchError(InputError):
    """Paired series must have equal length."""


class ParameterError(InputError):
    """Parameter outside its documented domain."""


class ParseError(InputError):
    """Malformed input file."""


class ResourceLimitError(InputError):
    """Requested computation exceeds a configured resource cap."""


class EstimationError(EsskitError, RuntimeError):
    """An estimator failed on otherwise admissible input."""


class InvalidAcfError(EstimationError):
    """Autocorrelation sequence violates its normalization contract."""


class NonPositiveDenominatorError(EstimationError):
    """Lagged ACF-product sum is not positive; the ACF estimate is unusable."""
