"""Exception hierarchy shared by all modules."""


class CausalMetricsError(Exception):
    """Base class for all package errors."""


class ShapeError(CausalMetricsError, ValueError):
    """Matrix not square, dimension mismatch, or malformed numeric input."""


class SchemaError(CausalMetricsError, ValueError):
    """A JSON document does not match the expected schema."""


class KindError(CausalMetricsError, ValueError):
    """Operation not supported for this space kind."""


class InvalidSpaceError(CausalMetricsError, ValueError):
    """A matrix failed axiom verification where a valid space was required."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DegenerateProductError(CausalMetricsError, ValueError):
    """Scalar product has a (numerically) zero eigenvalue."""


class NotLorentzError(CausalMetricsError, ValueError):
    """Scalar product does not have index 1, or orientation is not timelike."""


class FieldDomainError(CausalMetricsError, ValueError):
    """Metric field queried outside its chart domain."""


class UnsupportedFieldError(CausalMetricsError, ValueError):
    """Closed-form operation requested on a field without one."""


class QuadratureError(CausalMetricsError, ValueError):
    """Quadrature rule incompatible with the field or malformed."""


class InvariantError(CausalMetricsError, RuntimeError):
    """An internally asserted mathematical invariant failed."""
