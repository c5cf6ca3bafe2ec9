"""Chart loading and field evaluation exceptions."""

from typing import Optional, Sequence


class SpecError(ValueError):
    """Raised when a spec file or chart description is invalid"""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DegenerateMetricError(ArithmeticError):
    """Raised when g is (numerically) degenerate at a point"""

    def __init__(self, point: Sequence[float], det: float, detail: str = "") -> None:
        coords = ", ".join(f"{c:.6g}" for c in point)
        text = f"Degenerate metric at ({coords}): det g={det:.3e}"
        if detail:
            text = f"{text}; {detail}"
        super().__init__(text)
        self.point = tuple(point)
        self.det = det


class FieldEvaluationError(ValueError):
    """Expression failure while evaluating one field entry, e.g. g[0][2]"""

    def __init__(self, entry: str, cause: Exception) -> None:
        super().__init__(f"Evaluation of {entry} failed: {cause}")
        self.entry = entry
        self.cause = cause


class MissingVectorFieldError(ValueError):
    """Raised by operations that need V on a bundle that has none"""

    def __init__(self, operation: str) -> None:
        super().__init__(f"{operation} requires a vector field; the bundle defines none")
        self.operation = operation
