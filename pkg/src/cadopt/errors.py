"""Exception hierarchy shared across the package."""


class CadError(Exception):
    """Base class for all cadopt errors."""


class BadDimension(CadError):
    """Matrix or problem dimension outside the supported range."""


class BadDelta(CadError):
    """Error radius outside [0, n-1]."""


class BadShape(CadError):
    """Array shape inconsistent with the declared block structure."""


class BadState(CadError):
    """State vector violates the unit-norm requirement."""


class BadInput(CadError):
    """Scalar argument outside its admissible domain."""


class BadPovm(CadError):
    """Measurement element set fails the completeness check."""


class LinearDependence(CadError):
    """Gram matrix is singular (or numerically so): states not linearly independent."""


class NotPsd(CadError):
    """Matrix has an eigenvalue below the negative tolerance."""


class NumericalFailure(CadError):
    """Iterative numerical procedure broke down or failed to converge."""
