"""
Exception types raised across the toolkit

Every error derives from a builtin (ValueError or RuntimeError) so callers
that only know the builtins keep working.
"""


class NCHOError(Exception):
    """Base class for all toolkit errors"""


class DomainError(NCHOError, ValueError):
    """Argument outside the mathematical domain of an operation"""


class ConstraintError(NCHOError, ValueError):
    """Family parameters violate their defining constraint relation"""

    def __init__(self, relation: str, lhs: float, rhs: float):
        self.relation = relation
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(
            f"Constraint violated: {relation} (lhs={lhs!r}, rhs={rhs!r}, "
            f"diff={lhs - rhs!r})"
        )


class PoleError(DomainError):
    """Evaluation at or beyond a pole of a closed-form solution"""


class MissingCoefficientError(NCHOError, ValueError):
    """An operation needs c(t) but no supplier was configured"""


class DimensionError(NCHOError, ValueError):
    """Operator matrices of incompatible or too small dimension"""


class QuadratureError(NCHOError, RuntimeError):
    """Node finding failed for a Gauss-Laguerre rule"""

    def __init__(self, order: int, alpha: float, reason: str):
        self.order = order
        self.alpha = alpha
        super().__init__(
            f"Gauss-Laguerre rule of order {order} (alpha={alpha}) failed: {reason}"
        )


class ConvergenceError(NCHOError, RuntimeError):
    """Iterative solver did not reach its tolerance"""


class StepSizeError(ConvergenceError):
    """ODE step size fell below the allowed minimum"""


class IntegrabilityError(NCHOError, RuntimeError):
    """Chiellini integrability condition not satisfied on the grid"""


class ConfigError(NCHOError, ValueError):
    """Invalid run configuration"""

    def __init__(self, message: str, errors=None):
        self.errors = list(errors or [])
        super().__init__(message)
