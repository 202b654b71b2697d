class ChenTypeError(Exception):
    """Base class for all errors raised by the package."""


class MalformedExpressionError(ChenTypeError, ZeroDivisionError):
    pass


class UnboundSymbolError(ChenTypeError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class EvaluationPoleError(ChenTypeError, ZeroDivisionError):
    pass


class ExtensionMismatchError(ChenTypeError, ValueError):
    pass


class UsageError(ChenTypeError, ValueError):
    pass


class DegenerateChartError(ChenTypeError, ValueError):
    """The first fundamental form (or another form) has zero determinant."""


class FlatChartError(DegenerateChartError):
    """Gauss curvature vanishes identically, so the third form is degenerate."""


class InvalidRuledParametrization(ChenTypeError, ValueError):
    pass


class ParameterConstraintError(UsageError):
    pass


class WResidueError(ChenTypeError, AssertionError):
    """A square root survived where the algebra says it must cancel."""
