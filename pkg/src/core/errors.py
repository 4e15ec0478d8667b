from typing import Any, Dict, List, Optional

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class HCSError(Exception):
    exit_code = EXIT_USAGE

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            'error': type(self).__name__,
            'message': self.message,
            'details': self.details
        }


class UsageError(HCSError):
    pass


class UndefinedInputError(HCSError):
    pass


class NotFiniteCodimensionError(HCSError):
    pass


class NonGenericConfigurationError(HCSError):
    pass


class WrongChartError(HCSError):
    pass


class ChartBoundaryError(HCSError):
    pass


class DegenerateStructureError(HCSError):
    pass


class ConstraintError(HCSError):
    pass


class NotPrincipalError(HCSError):
    pass


class SupportError(HCSError):
    pass


class NumericFailure(HCSError):
    exit_code = EXIT_NUMERIC

    def __init__(self, message: str, best_residual: Optional[float] = None, details: Optional[Dict[str, Any]] = None):
        details = dict(details or {})
        if best_residual is not None:
            details['best_residual'] = float(best_residual)
        super().__init__(message, details)
        self.best_residual = best_residual


class SolverFailure(NumericFailure):
    def __init__(self, message: str, history: List[float], details: Optional[Dict[str, Any]] = None):
        details = dict(details or {})
        details['history'] = [float(h) for h in history]
        super().__init__(message, min(history) if history else None, details)
        self.history = list(history)


class DegenerateGaugeError(NumericFailure):
    def __init__(self, message: str, locus: List[List[int]], min_abs: float):
        super().__init__(message, min_abs, {'locus': locus, 'count': len(locus)})
        self.locus = locus


class LeadingTermMismatch(NumericFailure):
    pass


class InternalError(HCSError):
    exit_code = EXIT_NUMERIC


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, HCSError):
        return error.exit_code
    return EXIT_NUMERIC
